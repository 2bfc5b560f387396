use std::collections::HashSet;

use crate::model::{Cost, Instance, NodeRef};

/// A non-terminal of a materialized tree. The root has `parent == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonTerminal {
    pub parent: usize,
    pub child: usize,
    pub depth: Cost,
}

/// A finite tree whose `n` terminals form a prefix code.
///
/// `non_terminals[u - 1]` describes the non-terminal of rank `u`; rank 1 is
/// the root. Terminals are children of non-terminals, identified by parent
/// rank and child index. A one-word code has no non-terminals and the root
/// as its only terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTree {
    pub non_terminals: Vec<NonTerminal>,
    pub terminals: Vec<NodeRef>,
    pub cost: Cost,
}

impl CodeTree {
    pub fn single_word() -> CodeTree {
        CodeTree {
            non_terminals: Vec::new(),
            terminals: vec![NodeRef::ROOT],
            cost: Cost::ZERO,
        }
    }

    pub fn m(&self) -> usize {
        self.non_terminals.len()
    }

    pub fn n(&self) -> usize {
        self.terminals.len()
    }

    pub fn recomputed_cost(&self) -> Cost {
        self.terminals.iter().map(|t| t.depth).sum()
    }

    /// Children in the tree of each non-terminal, indexed by rank - 1.
    pub fn child_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m()];
        let parents = self
            .non_terminals
            .iter()
            .skip(1)
            .map(|nt| nt.parent)
            .chain(self.terminals.iter().map(|t| t.parent));
        for p in parents {
            if p >= 1 && p <= counts.len() {
                counts[p - 1] += 1;
            }
        }
        counts
    }

    /// Every non-terminal has at least two children.
    pub fn is_proper(&self) -> bool {
        self.child_counts().iter().all(|&c| c >= 2)
    }

    /// Structural consistency against `inst`: parents precede children,
    /// depths add up, no slot is used twice, terminal count is `n`, and the
    /// stored cost matches.
    pub fn is_consistent(&self, inst: &Instance) -> bool {
        if self.terminals.len() != inst.n() || self.cost != self.recomputed_cost() {
            return false;
        }
        if self.non_terminals.is_empty() {
            return self.terminals == [NodeRef::ROOT];
        }
        let root = self.non_terminals[0];
        if root.parent != 0 || root.child != 0 || root.depth != Cost::ZERO {
            return false;
        }
        let mut slots = HashSet::new();
        let slot_ok = |parent: usize, child: usize, depth: Cost| {
            parent >= 1
                && parent <= self.m()
                && (1..=inst.r()).contains(&child)
                && self.non_terminals[parent - 1].depth + inst.letter_cost(child) == depth
        };
        for (k, nt) in self.non_terminals.iter().enumerate().skip(1) {
            // parents must already exist so the non-terminals form a subtree
            if nt.parent > k || !slot_ok(nt.parent, nt.child, nt.depth) {
                return false;
            }
            if !slots.insert((nt.parent, nt.child)) {
                return false;
            }
        }
        self.terminals
            .iter()
            .all(|t| slot_ok(t.parent, t.child, t.depth) && slots.insert((t.parent, t.child)))
    }
}

/// Checks that `tree` is shallow: no non-terminal is deeper than any node
/// outside the non-terminal set, and no terminal is deeper than any child of
/// a non-terminal left out of the tree.
///
/// Only the frontier (children of non-terminals that are not themselves
/// non-terminals) needs inspecting, since every other node lies below it.
pub fn check_shallow(tree: &CodeTree, inst: &Instance) -> bool {
    if !tree.is_consistent(inst) {
        return false;
    }
    if tree.non_terminals.is_empty() {
        return true;
    }
    let inner: HashSet<(usize, usize)> = tree
        .non_terminals
        .iter()
        .skip(1)
        .map(|nt| (nt.parent, nt.child))
        .collect();
    let leaves: HashSet<(usize, usize)> =
        tree.terminals.iter().map(|t| (t.parent, t.child)).collect();

    let mut frontier_min: Option<Cost> = None;
    let mut excluded_min: Option<Cost> = None;
    for (k, nt) in tree.non_terminals.iter().enumerate() {
        let u = k + 1;
        for i in 1..=inst.r() {
            if inner.contains(&(u, i)) {
                continue;
            }
            let d = nt.depth + inst.letter_cost(i);
            frontier_min = Some(frontier_min.map_or(d, |m| m.min(d)));
            if !leaves.contains(&(u, i)) {
                excluded_min = Some(excluded_min.map_or(d, |m| m.min(d)));
            }
        }
    }
    let deepest_inner = tree.non_terminals.iter().map(|nt| nt.depth).max();
    let deepest_leaf = tree.terminals.iter().map(|t| t.depth).max();
    let inner_ok = match (deepest_inner, frontier_min) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    let leaf_ok = match (deepest_leaf, excluded_min) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    inner_ok && leaf_ok
}
