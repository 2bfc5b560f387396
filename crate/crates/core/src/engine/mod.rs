//! Construction of the shallow-tree sequence `T_mmin, T_mmin+1, ...`.
//!
//! `T_m` has the first `m` nodes of the infinite tree (in node order) as
//! non-terminals and the `n` smallest of their remaining children as
//! terminals. Each tree is obtained from its predecessor by a sprout (the
//! minimum terminal becomes non-terminal `m + 1` and gains its cheapest child)
//! followed by a level (cheaper children of `m + 1` replace the largest
//! terminals). The scan stops at the first improper tree; the cheapest proper
//! tree seen is optimal.
//!
//! Terminals that are i-th children always hang off a contiguous rank
//! interval `low[i]..=high[i]`, so the minimum and maximum terminal are found
//! among at most `r` candidates kept in two addressable heaps.

mod naive;
mod queue;
mod tree;

use std::cmp::Reverse;

use thiserror::Error;

use crate::model::{Cost, Instance, ModelError, NodeRef};

pub use naive::{naive_scan, NaiveRun};
pub use queue::SlotHeap;
pub use tree::{check_shallow, CodeTree, NonTerminal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("corrupt tree state: {0}")]
    CorruptState(&'static str),
    #[error("a single word needs no tree construction")]
    SingleWord,
    #[error("m = {target} is outside the proper range {m_min}..={m_max}")]
    OutOfRange {
        target: usize,
        m_min: usize,
        m_max: usize,
    },
}

/// Rolling state for the current tree `T_m`.
///
/// Ranks are 1-based; `depths()[u - 1]` is the depth of non-terminal `u`.
/// Letter-indexed tables (`low`, `high`) are stored 0-based, so
/// `low()[i - 1]` is `low[i]`. An empty interval has `low[i] > high[i]`.
#[derive(Debug, Clone)]
pub struct TreeState {
    costs: Vec<Cost>,
    n: usize,
    m: usize,
    cost: Cost,
    m_deg: usize,
    depth: Vec<Cost>,
    // (parent rank, child index) of each non-terminal; the root is (0, 0)
    origin: Vec<(usize, usize)>,
    low: Vec<usize>,
    high: Vec<usize>,
    low_queue: SlotHeap<NodeRef>,
    high_queue: SlotHeap<Reverse<NodeRef>>,
    replacements: u64,
}

impl TreeState {
    fn empty(inst: &Instance) -> TreeState {
        let r = inst.r();
        TreeState {
            costs: inst.costs().iter().map(|&c| Cost::from(c)).collect(),
            n: inst.n(),
            m: 1,
            cost: Cost::ZERO,
            m_deg: 0,
            depth: vec![Cost::ZERO],
            origin: vec![(0, 0)],
            low: vec![1; r],
            high: vec![0; r],
            low_queue: SlotHeap::with_slots(r),
            high_queue: SlotHeap::with_slots(r),
            replacements: 0,
        }
    }

    pub fn r(&self) -> usize {
        self.costs.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-terminals, also the rank of the newest one.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Sum of terminal depths.
    pub fn cost(&self) -> Cost {
        self.cost
    }

    /// Number of children of non-terminal `m`.
    pub fn m_deg(&self) -> usize {
        self.m_deg
    }

    pub fn depths(&self) -> &[Cost] {
        &self.depth
    }

    pub fn low(&self) -> &[usize] {
        &self.low
    }

    pub fn high(&self) -> &[usize] {
        &self.high
    }

    /// Terminals replaced by `level` so far.
    pub fn replacements(&self) -> u64 {
        self.replacements
    }

    /// `T_m` is proper iff node `m` has at least two children, since the
    /// newest non-terminal has the fewest children.
    pub fn is_proper(&self) -> bool {
        self.m_deg >= 2
    }

    /// Whether letter `i` (1-based) currently has an entry in both queues.
    pub fn queued(&self, i: usize) -> bool {
        self.low_queue.contains(i - 1) && self.high_queue.contains(i - 1)
    }

    fn child(&self, u: usize, i: usize) -> NodeRef {
        NodeRef::new(u, i, self.depth[u - 1] + self.costs[i - 1])
    }

    /// Smallest terminal, `child_i(low[i])` for the best `i`.
    pub fn min_terminal(&self) -> Option<NodeRef> {
        self.low_queue.peek().map(|(_, k)| k)
    }

    /// Largest terminal, `child_i(high[i])` for the best `i`.
    pub fn max_terminal(&self) -> Option<NodeRef> {
        self.high_queue.peek().map(|(_, Reverse(k))| k)
    }

    /// Re-keys letter `i` in both queues after `low[i]` or `high[i]` moved,
    /// or drops it when no i-th child is a terminal any more.
    pub fn update_qs(&mut self, i: usize) {
        let slot = i - 1;
        if self.low[slot] <= self.high[slot] {
            let lo = self.child(self.low[slot], i);
            let hi = self.child(self.high[slot], i);
            self.low_queue.set(slot, lo);
            self.high_queue.set(slot, Reverse(hi));
        } else {
            self.low_queue.remove(slot);
            self.high_queue.remove(slot);
        }
    }

    /// Adds the next child of non-terminal `m` as a terminal.
    pub fn add_terminal(&mut self) -> Result<(), EngineError> {
        if self.m_deg >= self.r() {
            return Err(EngineError::CorruptState("node m already has r children"));
        }
        self.m_deg += 1;
        let i = self.m_deg;
        self.cost += self.depth[self.m - 1] + self.costs[i - 1];
        // an empty interval can only be reopened at m: every earlier i-th
        // child is then a non-terminal
        debug_assert!(self.low[i - 1] <= self.high[i - 1] + 1);
        debug_assert!(self.low[i - 1] <= self.high[i - 1] || self.low[i - 1] == self.m);
        self.high[i - 1] = self.m;
        self.update_qs(i);
        Ok(())
    }

    /// Pops the minimum terminal and makes it non-terminal `m + 1`.
    fn convert_min_terminal(&mut self) -> Result<NodeRef, EngineError> {
        let (slot, node) = self
            .low_queue
            .peek()
            .ok_or(EngineError::CorruptState("low-queue is empty"))?;
        self.m += 1;
        self.depth.push(node.depth);
        self.origin.push((node.parent, node.child));
        self.low[slot] += 1;
        self.update_qs(slot + 1);
        self.cost -= node.depth;
        Ok(node)
    }

    /// Makes the minimum terminal a non-terminal and adds its cheapest child
    /// as a terminal. Returns the converted node.
    pub fn sprout(&mut self) -> Result<NodeRef, EngineError> {
        let node = self.convert_min_terminal()?;
        self.m_deg = 0;
        self.add_terminal()?;
        Ok(node)
    }

    /// Trades the largest terminals for smaller unused children of node `m`
    /// while that lowers the cost. Returns the number of swaps.
    pub fn level(&mut self) -> Result<usize, EngineError> {
        let mut swaps = 0;
        while self.m_deg < self.r() {
            let candidate = self.child(self.m, self.m_deg + 1);
            match self.max_terminal() {
                Some(max) if candidate < max => {}
                _ => break,
            }
            self.add_terminal()?;
            let (slot, Reverse(max)) = self
                .high_queue
                .peek()
                .ok_or(EngineError::CorruptState("high-queue is empty"))?;
            self.cost -= max.depth;
            self.high[slot] -= 1;
            self.update_qs(slot + 1);
            swaps += 1;
        }
        self.replacements += swaps as u64;
        Ok(swaps)
    }

    /// Materializes the current tree.
    pub fn to_code_tree(&self) -> CodeTree {
        let non_terminals = self
            .origin
            .iter()
            .zip(&self.depth)
            .map(|(&(parent, child), &depth)| NonTerminal {
                parent,
                child,
                depth,
            })
            .collect();
        let mut terminals = Vec::with_capacity(self.n);
        for i in 1..=self.r() {
            for u in self.low[i - 1]..=self.high[i - 1] {
                terminals.push(self.child(u, i));
            }
        }
        terminals.sort();
        CodeTree {
            non_terminals,
            terminals,
            cost: self.cost,
        }
    }
}

/// Builds `T_mmin`.
///
/// `T_1` is the root with all `r` children; each further tree below `m_min`
/// converts the minimum terminal and adds all of its children. `T_mmin`
/// itself receives only as many children of its newest node as needed to
/// reach `n` terminals and is then leveled. With `n <= r` the result is the
/// root and its `n` cheapest children.
pub fn create_t_mmin(inst: &Instance) -> Result<TreeState, EngineError> {
    let n = inst.n();
    let r = inst.r();
    if n < 2 {
        return Err(EngineError::SingleWord);
    }
    let mut state = TreeState::empty(inst);
    let first = r.min(n);
    for i in 1..=first {
        state.low[i - 1] = 1;
        state.high[i - 1] = 1;
        state.cost += state.costs[i - 1];
        state.update_qs(i);
    }
    if n <= r {
        state.m_deg = n;
        return Ok(state);
    }

    let m_min = inst.m_min();
    for _ in 2..m_min {
        state.convert_min_terminal()?;
        let m = state.m;
        for j in 1..=r {
            state.high[j - 1] = m;
            state.update_qs(j);
            state.cost += state.depth[m - 1] + state.costs[j - 1];
        }
    }

    state.convert_min_terminal()?;
    let m = state.m;
    debug_assert_eq!(m, m_min);
    let delta = n - (r - 1) * (m_min - 1);
    for j in 1..=delta {
        state.high[j - 1] = m;
        state.update_qs(j);
        state.cost += state.depth[m - 1] + state.costs[j - 1];
    }
    state.m_deg = delta;
    state.level()?;
    Ok(state)
}

/// One proper tree of the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub m: usize,
    pub cost: Cost,
    /// Children of non-terminal `m` in `T_m`.
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    /// Stop at the first tree that is no cheaper than its predecessor.
    pub early_stop: bool,
}

/// Costs of the proper trees `T_mmin ..` and bookkeeping from the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scan {
    pub trace: Vec<TraceEntry>,
    pub m_min: usize,
    /// Last proper `m`; `None` if the scan stopped early.
    pub m_max: Option<usize>,
    /// Total terminals replaced while leveling, including the final
    /// (improper) step.
    pub replacements: u64,
}

impl Scan {
    /// First `m` with minimum cost.
    pub fn best(&self) -> TraceEntry {
        *self
            .trace
            .iter()
            .min_by_key(|e| (e.cost, e.m))
            .expect("trace is never empty")
    }
}

/// Runs the sprout/level sequence over every proper shallow tree.
pub fn scan(inst: &Instance, opts: Options) -> Result<Scan, EngineError> {
    if inst.n() == 1 {
        return Ok(Scan {
            trace: vec![TraceEntry {
                m: 0,
                cost: Cost::ZERO,
                degree: 0,
            }],
            m_min: 0,
            m_max: Some(0),
            replacements: 0,
        });
    }
    let mut state = create_t_mmin(inst)?;
    let m_min = state.m;
    let mut trace = vec![TraceEntry {
        m: state.m,
        cost: state.cost,
        degree: state.m_deg,
    }];
    let mut m_max = None;
    while state.is_proper() {
        state.sprout()?;
        state.level()?;
        if !state.is_proper() {
            m_max = Some(state.m - 1);
            break;
        }
        let prev = trace.last().unwrap().cost;
        trace.push(TraceEntry {
            m: state.m,
            cost: state.cost,
            degree: state.m_deg,
        });
        if opts.early_stop && state.cost >= prev {
            break;
        }
    }
    Ok(Scan {
        trace,
        m_min,
        m_max,
        replacements: state.replacements,
    })
}

/// Runs the construction up to exactly `T_target`.
pub fn run_to(inst: &Instance, target: usize) -> Result<TreeState, EngineError> {
    let mut state = create_t_mmin(inst)?;
    let m_min = state.m;
    let out_of_range = |m_max| EngineError::OutOfRange {
        target,
        m_min,
        m_max,
    };
    if target < m_min {
        // m_max is unknown here without a full scan; report what we know
        return Err(out_of_range(m_min));
    }
    while state.m < target {
        if !state.is_proper() {
            return Err(out_of_range(state.m - 1));
        }
        state.sprout()?;
        state.level()?;
    }
    if !state.is_proper() {
        return Err(out_of_range(state.m - 1));
    }
    Ok(state)
}

/// Rebuilds `T_target` by re-running the construction, keeping memory at
/// `O(n + r)`.
pub fn materialize_tree(inst: &Instance, target: usize) -> Result<CodeTree, EngineError> {
    if inst.n() == 1 {
        return match target {
            0 => Ok(CodeTree::single_word()),
            _ => Err(EngineError::OutOfRange {
                target,
                m_min: 0,
                m_max: 0,
            }),
        };
    }
    Ok(run_to(inst, target)?.to_code_tree())
}

/// An optimal tree together with the scan that found it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub optimal_m: usize,
    pub optimal_cost: Cost,
    pub trace: Vec<TraceEntry>,
    pub tree: CodeTree,
    pub m_min: usize,
    pub m_max: Option<usize>,
    pub replacements: u64,
}

/// Finds a minimum-cost prefix code tree for `inst`.
pub fn compute_optimal(inst: &Instance, opts: Options) -> Result<Solution, EngineError> {
    let scan = scan(inst, opts)?;
    let best = scan.best();
    let tree = materialize_tree(inst, best.m)?;
    if tree.cost != best.cost {
        return Err(EngineError::CorruptState(
            "second pass disagrees with the scan",
        ));
    }
    Ok(Solution {
        optimal_m: best.m,
        optimal_cost: best.cost,
        trace: scan.trace,
        tree,
        m_min: scan.m_min,
        m_max: scan.m_max,
        replacements: scan.replacements,
    })
}
