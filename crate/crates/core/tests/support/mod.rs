#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use prefixcode::{Cost, Instance, Letter, NodeRef};

/// `T_m` straight from its definition: enumerate the infinite tree in node
/// order, take the first `m` nodes as non-terminals, and the `n` smallest of
/// their remaining children as terminals.
pub struct ReferenceTree {
    /// (parent rank, child index, depth) per rank; rank 1 is the root.
    pub non_terminals: Vec<(usize, usize, Cost)>,
    pub terminals: Vec<NodeRef>,
    pub cost: Cost,
}

pub fn reference_tree(inst: &Instance, m: usize) -> ReferenceTree {
    let mut frontier = BinaryHeap::new();
    frontier.push(Reverse(NodeRef::ROOT));
    let mut non_terminals = Vec::new();
    for rank in 1..=m {
        let Reverse(node) = frontier.pop().unwrap();
        non_terminals.push((node.parent, node.child, node.depth));
        for i in 1..=inst.r() {
            frontier.push(Reverse(NodeRef::new(
                rank,
                i,
                node.depth + inst.letter_cost(i),
            )));
        }
    }
    let mut terminals = Vec::new();
    for _ in 0..inst.n() {
        match frontier.pop() {
            Some(Reverse(t)) => terminals.push(t),
            None => break,
        }
    }
    let cost = terminals.iter().map(|t| t.depth).sum();
    ReferenceTree {
        non_terminals,
        terminals,
        cost,
    }
}

impl ReferenceTree {
    pub fn m(&self) -> usize {
        self.non_terminals.len()
    }

    pub fn children(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m()];
        for &(p, _, _) in self.non_terminals.iter().skip(1) {
            counts[p - 1] += 1;
        }
        for t in &self.terminals {
            counts[t.parent - 1] += 1;
        }
        counts
    }

    pub fn is_proper(&self) -> bool {
        self.children().iter().all(|&c| c >= 2)
    }

    pub fn min_terminal(&self) -> NodeRef {
        *self.terminals.iter().min().unwrap()
    }

    /// Ranks whose i-th child is a terminal, sorted.
    pub fn terminal_parents(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .terminals
            .iter()
            .filter(|t| t.child == i)
            .map(|t| t.parent)
            .collect();
        v.sort();
        v
    }

    /// Whether rank `u` has its i-th child in the tree at all.
    pub fn has_child(&self, u: usize, i: usize) -> bool {
        self.terminals.iter().any(|t| t.parent == u && t.child == i)
            || self
                .non_terminals
                .iter()
                .skip(1)
                .any(|&(p, c, _)| p == u && c == i)
    }
}

/// All multisets of `pool` of size `r`, as sorted vectors.
pub fn multisets(pool: &[u64], r: usize) -> Vec<Vec<u64>> {
    fn go(pool: &[u64], r: usize, from: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in from..pool.len() {
            cur.push(pool[k]);
            go(pool, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, r, 0, &mut Vec::new(), &mut out);
    out
}

/// The oracle grid: r in {2,3,4}, letter lengths from {1,2,3,5}, n in 2..=12.
pub fn grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for costs in multisets(&[1, 2, 3, 5], r) {
            for n in 2..=12 {
                out.push(Instance::from_integers(&costs, n).unwrap());
            }
        }
    }
    out
}

/// Pairwise check that no word is a prefix of another.
pub fn pairwise_prefix_free(words: &[Vec<Letter>]) -> bool {
    for (a, wa) in words.iter().enumerate() {
        for (b, wb) in words.iter().enumerate() {
            if a != b && wb.len() >= wa.len() && wb[..wa.len()] == wa[..] {
                return false;
            }
        }
    }
    true
}
