//! Addressable binary heap over a fixed set of slots.
//!
//! Each of the `r` letter indices owns at most one entry. Insert, update,
//! delete and peek all run in `O(log r)` comparisons.

/// Min-heap of `(slot, key)` pairs addressable by slot. Use
/// `std::cmp::Reverse` keys for a max-heap.
#[derive(Debug, Clone)]
pub struct SlotHeap<K> {
    heap: Vec<(usize, K)>,
    // slot -> index in `heap`
    pos: Vec<Option<usize>>,
}

impl<K: Ord + Copy> SlotHeap<K> {
    pub fn with_slots(slots: usize) -> Self {
        SlotHeap {
            heap: Vec::with_capacity(slots),
            pos: vec![None; slots],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.pos[slot].is_some()
    }

    pub fn get(&self, slot: usize) -> Option<K> {
        self.pos[slot].map(|p| self.heap[p].1)
    }

    pub fn peek(&self) -> Option<(usize, K)> {
        self.heap.first().copied()
    }

    /// Inserts `slot` with `key`, or moves it to `key` if already present.
    pub fn set(&mut self, slot: usize, key: K) {
        match self.pos[slot] {
            Some(p) => {
                let old = self.heap[p].1;
                self.heap[p].1 = key;
                if key < old {
                    self.sift_up(p);
                } else {
                    self.sift_down(p);
                }
            }
            None => {
                self.heap.push((slot, key));
                let p = self.heap.len() - 1;
                self.pos[slot] = Some(p);
                self.sift_up(p);
            }
        }
    }

    pub fn remove(&mut self, slot: usize) -> Option<K> {
        let p = self.pos[slot].take()?;
        let last = self.heap.len() - 1;
        self.heap.swap(p, last);
        let (_, key) = self.heap.pop().unwrap();
        if p < self.heap.len() {
            self.pos[self.heap[p].0] = Some(p);
            self.sift_down(p);
            self.sift_up(p);
        }
        Some(key)
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a].0] = Some(a);
        self.pos[self.heap[b].0] = Some(b);
    }

    fn sift_up(&mut self, mut p: usize) {
        while p > 0 {
            let parent = (p - 1) / 2;
            if self.heap[p].1 >= self.heap[parent].1 {
                break;
            }
            self.swap(p, parent);
            p = parent;
        }
    }

    fn sift_down(&mut self, mut p: usize) {
        let n = self.heap.len();
        loop {
            let l = 2 * p + 1;
            if l >= n {
                break;
            }
            let mut c = l;
            if l + 1 < n && self.heap[l + 1].1 < self.heap[l].1 {
                c = l + 1;
            }
            if self.heap[c].1 >= self.heap[p].1 {
                break;
            }
            self.swap(p, c);
            p = c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    #[derive(Debug, Clone)]
    enum Op {
        Set(usize, u32),
        Remove(usize),
    }

    fn arb_op() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0usize..8, 0u32..20).prop_map(|(s, k)| Op::Set(s, k)),
            (0usize..8).prop_map(Op::Remove),
        ]
    }

    proptest! {
        #[test]
        fn matches_ordered_map(ops in prop::collection::vec(arb_op(), 0..200)) {
            let mut heap = SlotHeap::with_slots(8);
            let mut model: BTreeMap<usize, u32> = BTreeMap::new();
            for op in ops {
                match op {
                    Op::Set(s, k) => {
                        heap.set(s, k);
                        model.insert(s, k);
                    }
                    Op::Remove(s) => {
                        prop_assert_eq!(heap.remove(s), model.remove(&s));
                    }
                }
                prop_assert_eq!(heap.len(), model.len());
                let min = model.values().min().copied();
                prop_assert_eq!(heap.peek().map(|(_, k)| k), min);
                if let Some((s, k)) = heap.peek() {
                    prop_assert_eq!(model[&s], k);
                }
            }
        }
    }

    #[test]
    fn reverse_keys_give_a_max_heap() {
        use std::cmp::Reverse;
        let mut heap = SlotHeap::with_slots(3);
        heap.set(0, Reverse(4));
        heap.set(1, Reverse(9));
        heap.set(2, Reverse(1));
        assert_eq!(heap.peek(), Some((1, Reverse(9))));
        heap.set(1, Reverse(0));
        assert_eq!(heap.peek(), Some((0, Reverse(4))));
        assert_eq!(heap.remove(0), Some(Reverse(4)));
        assert_eq!(heap.peek(), Some((2, Reverse(1))));
        assert!(!heap.contains(0));
    }
}
