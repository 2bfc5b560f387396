//! Baseline: the same sprout/level sequence, but with every terminal kept in
//! one ordered set. Finding the minimum or maximum terminal costs `O(log n)`
//! instead of `O(log r)`, and no interval structure is used.

use std::collections::BTreeSet;

use super::{EngineError, TraceEntry};
use crate::model::{Cost, Instance, NodeRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveRun {
    pub trace: Vec<TraceEntry>,
    pub replacements: u64,
}

impl NaiveRun {
    pub fn optimal_cost(&self) -> Cost {
        self.trace
            .iter()
            .map(|e| e.cost)
            .min()
            .unwrap_or(Cost::ZERO)
    }
}

struct Naive {
    costs: Vec<Cost>,
    depth: Vec<Cost>,
    terminals: BTreeSet<NodeRef>,
    cost: Cost,
    deg: usize,
    replacements: u64,
}

impl Naive {
    fn m(&self) -> usize {
        self.depth.len()
    }

    fn child(&self, u: usize, i: usize) -> NodeRef {
        NodeRef::new(u, i, self.depth[u - 1] + self.costs[i - 1])
    }

    fn insert_child(&mut self, i: usize) {
        let node = self.child(self.m(), i);
        self.cost += node.depth;
        self.terminals.insert(node);
    }

    fn convert_min(&mut self) -> Result<(), EngineError> {
        let node = self
            .terminals
            .pop_first()
            .ok_or(EngineError::CorruptState("no terminals"))?;
        self.cost -= node.depth;
        self.depth.push(node.depth);
        Ok(())
    }

    fn level(&mut self) {
        let r = self.costs.len();
        while self.deg < r {
            let candidate = self.child(self.m(), self.deg + 1);
            let max = *self.terminals.last().expect("terminal set is never empty");
            if candidate >= max {
                break;
            }
            self.terminals.pop_last();
            self.cost -= max.depth;
            self.deg += 1;
            self.insert_child(self.deg);
            self.replacements += 1;
        }
    }
}

/// Scans the proper shallow trees with the full-terminal-set baseline.
pub fn naive_scan(inst: &Instance) -> Result<NaiveRun, EngineError> {
    let n = inst.n();
    let r = inst.r();
    if n < 2 {
        return Err(EngineError::SingleWord);
    }
    let mut t = Naive {
        costs: inst.costs().iter().map(|&c| Cost::from(c)).collect(),
        depth: vec![Cost::ZERO],
        terminals: BTreeSet::new(),
        cost: Cost::ZERO,
        deg: 0,
        replacements: 0,
    };
    if n <= r {
        for i in 1..=n {
            t.insert_child(i);
        }
        t.deg = n;
    } else {
        for i in 1..=r {
            t.insert_child(i);
        }
        let m_min = inst.m_min();
        for _ in 2..m_min {
            t.convert_min()?;
            for i in 1..=r {
                t.insert_child(i);
            }
        }
        t.convert_min()?;
        let delta = n - (r - 1) * (m_min - 1);
        for i in 1..=delta {
            t.insert_child(i);
        }
        t.deg = delta;
        t.level();
    }

    let mut trace = vec![TraceEntry {
        m: t.m(),
        cost: t.cost,
        degree: t.deg,
    }];
    while t.deg >= 2 {
        t.convert_min()?;
        t.deg = 1;
        t.insert_child(1);
        t.level();
        if t.deg < 2 {
            break;
        }
        trace.push(TraceEntry {
            m: t.m(),
            cost: t.cost,
            degree: t.deg,
        });
    }
    Ok(NaiveRun {
        trace,
        replacements: t.replacements,
    })
}
