//! Independent ground truth for small instances.
//!
//! `brute_force_optimal` searches every proper tree with `n` terminals by
//! branch and bound. It shares nothing with the engine beyond the model
//! types and [`CodeTree`].

use thiserror::Error;

use crate::engine::{CodeTree, NonTerminal};
use crate::model::{Cost, Instance, NodeRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub cost: Cost,
    /// One optimal tree; ties are broken by search order.
    pub tree: CodeTree,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub budget: u64,
    pub prune: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: 50_000_000,
            prune: true,
        }
    }
}

/// Exact optimum over all proper trees, with bound-based pruning.
pub fn brute_force_optimal(inst: &Instance, budget: u64) -> Result<OracleResult, OracleError> {
    brute_force_with(
        inst,
        OracleOptions {
            budget,
            prune: true,
        },
    )
}

/// Exhaustive search over proper trees with `n` terminals.
///
/// Open leaves are decided shallowest first: either the leaf becomes a
/// terminal or it gets `k >= 2` children. A node with `k` children uses the
/// `k` cheapest letters, since moving a subtree onto a cheaper unused letter
/// never increases the cost. Leaves of equal depth are interchangeable, so
/// their decisions are only enumerated in nondecreasing order.
///
/// The bound charges each open leaf its own depth and every terminal still
/// missing at least `shallowest open depth + c_1`.
pub fn brute_force_with(inst: &Instance, opts: OracleOptions) -> Result<OracleResult, OracleError> {
    let mut search = Search {
        costs: inst.costs().iter().map(|&c| Cost::from(c)).collect(),
        n: inst.n(),
        opts,
        arena: vec![Node {
            parent: usize::MAX,
            child: 0,
            depth: Cost::ZERO,
        }],
        decisions: Vec::new(),
        explored: 0,
        best: None,
    };
    let root = Leaf {
        depth: Cost::ZERO,
        id: 0,
    };
    search.visit(vec![root], 0, Cost::ZERO, None)?;
    let (cost, tree) = search.best.expect("some proper tree always exists");
    Ok(OracleResult {
        cost,
        tree,
        nodes_explored: search.explored,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Leaf {
    depth: Cost,
    id: usize,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    parent: usize,
    child: usize,
    depth: Cost,
}

struct Search {
    costs: Vec<Cost>,
    n: usize,
    opts: OracleOptions,
    arena: Vec<Node>,
    // (arena id, children); 0 children means terminal
    decisions: Vec<(usize, usize)>,
    explored: u64,
    best: Option<(Cost, CodeTree)>,
}

impl Search {
    fn visit(
        &mut self,
        open: Vec<Leaf>,
        terminals: usize,
        fixed: Cost,
        last: Option<(Cost, usize)>,
    ) -> Result<(), OracleError> {
        let Some(&leaf) = open.first() else {
            if terminals == self.n && self.best.as_ref().is_none_or(|(b, _)| fixed < *b) {
                let tree = self.snapshot(fixed);
                self.best = Some((fixed, tree));
            }
            return Ok(());
        };
        self.explored += 1;
        if self.explored > self.opts.budget {
            return Err(OracleError::BudgetExceeded(self.opts.budget));
        }
        if self.opts.prune {
            if let Some((best, _)) = &self.best {
                let missing = (self.n - terminals - open.len()) as u128;
                let bound = fixed
                    + open.iter().map(|l| l.depth).sum()
                    + Cost(missing * (leaf.depth + self.costs[0]).get());
                if bound >= *best {
                    return Ok(());
                }
            }
        }

        let rest = &open[1..];
        let min_choice = match last {
            Some((d, k)) if d == leaf.depth => k,
            _ => 0,
        };

        if min_choice == 0 {
            self.decisions.push((leaf.id, 0));
            self.visit(
                rest.to_vec(),
                terminals + 1,
                fixed + leaf.depth,
                Some((leaf.depth, 0)),
            )?;
            self.decisions.pop();
        }

        let room = self.n - terminals - rest.len();
        for k in min_choice.max(2)..=self.costs.len().min(room) {
            let mark = self.arena.len();
            let mut next = rest.to_vec();
            for i in 1..=k {
                let depth = leaf.depth + self.costs[i - 1];
                self.arena.push(Node {
                    parent: leaf.id,
                    child: i,
                    depth,
                });
                next.push(Leaf {
                    depth,
                    id: self.arena.len() - 1,
                });
            }
            next.sort_unstable();
            self.decisions.push((leaf.id, k));
            self.visit(next, terminals, fixed, Some((leaf.depth, k)))?;
            self.decisions.pop();
            self.arena.truncate(mark);
        }
        Ok(())
    }

    fn snapshot(&self, cost: Cost) -> CodeTree {
        let mut rank = vec![0usize; self.arena.len()];
        let mut non_terminals = Vec::new();
        for &(id, k) in &self.decisions {
            if k > 0 {
                let node = self.arena[id];
                non_terminals.push(NonTerminal {
                    parent: if id == 0 { 0 } else { rank[node.parent] },
                    child: node.child,
                    depth: node.depth,
                });
                rank[id] = non_terminals.len();
            }
        }
        let mut terminals: Vec<NodeRef> = self
            .decisions
            .iter()
            .filter(|&&(_, k)| k == 0)
            .map(|&(id, _)| {
                let node = self.arena[id];
                if id == 0 {
                    NodeRef::ROOT
                } else {
                    NodeRef::new(rank[node.parent], node.child, node.depth)
                }
            })
            .collect();
        terminals.sort();
        CodeTree {
            non_terminals,
            terminals,
            cost,
        }
    }
}

/// Minimum external path length of a binary tree with `n` leaves and unit
/// edge lengths: with `k = ceil(log2 n)`, `2(n - 2^(k-1))` leaves sit at
/// depth `k` and the rest at depth `k - 1`.
pub fn binary_reference(n: u64) -> Cost {
    assert!(n >= 1, "need at least one leaf");
    if n == 1 {
        return Cost::ZERO;
    }
    let n = n as u128;
    let k = 128 - (n - 1).leading_zeros() as u128;
    let deep = 2 * (n - (1u128 << (k - 1)));
    Cost(k * deep + (k - 1) * (n - deep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(costs: &[u64], n: usize) -> OracleResult {
        let inst = Instance::from_integers(costs, n).unwrap();
        brute_force_optimal(&inst, 10_000_000).unwrap()
    }

    #[test]
    fn running_example() {
        assert_eq!(oracle(&[2, 2, 5], 10).cost, Cost(59));
    }

    #[test]
    fn two_words_use_the_two_cheapest_letters() {
        assert_eq!(oracle(&[4, 3, 9], 2).cost, Cost(7));
        assert_eq!(oracle(&[1, 1, 1, 1], 2).cost, Cost(2));
    }

    #[test]
    fn small_binary_and_morse() {
        assert_eq!(oracle(&[1, 1], 6).cost, Cost(16));
        assert_eq!(oracle(&[1, 2], 6).cost, Cost(23));
        assert_eq!(oracle(&[1, 2], 1).cost, Cost(0));
    }

    #[test]
    fn returned_tree_is_proper_and_consistent() {
        for n in 1..=9 {
            let inst = Instance::from_integers(&[1, 2, 2], n).unwrap();
            let res = brute_force_optimal(&inst, 10_000_000).unwrap();
            assert!(res.tree.is_consistent(&inst), "n = {n}");
            assert!(res.tree.is_proper(), "n = {n}");
            assert_eq!(res.tree.recomputed_cost(), res.cost);
        }
    }

    #[test]
    fn pruning_does_not_change_the_optimum() {
        for costs in [[1u64, 2, 3], [1, 1, 5], [2, 3, 3]] {
            for n in 2..=9 {
                let inst = Instance::from_integers(&costs, n).unwrap();
                let pruned = brute_force_optimal(&inst, u64::MAX).unwrap();
                let full = brute_force_with(
                    &inst,
                    OracleOptions {
                        budget: u64::MAX,
                        prune: false,
                    },
                )
                .unwrap();
                assert_eq!(pruned.cost, full.cost, "{costs:?} n = {n}");
                assert!(pruned.nodes_explored <= full.nodes_explored);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let inst = Instance::from_integers(&[1, 1, 1, 1], 12).unwrap();
        assert_eq!(
            brute_force_optimal(&inst, 10),
            Err(OracleError::BudgetExceeded(10))
        );
    }

    #[test]
    fn binary_reference_values() {
        assert_eq!(binary_reference(1), Cost(0));
        assert_eq!(binary_reference(2), Cost(2));
        assert_eq!(binary_reference(6), Cost(16));
        assert_eq!(binary_reference(8), Cost(24));
    }

    #[test]
    fn binary_reference_matches_brute_force() {
        for n in 1..=32 {
            let inst = Instance::from_integers(&[1, 1], n).unwrap();
            let res = brute_force_optimal(&inst, u64::MAX).unwrap();
            assert_eq!(binary_reference(n as u64), res.cost, "n = {n}");
        }
    }
}
