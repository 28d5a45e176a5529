//! Max-priority queue over vertices whose keys only grow.
//!
//! Integer keys up to a modest bound go into buckets (one small min-heap of
//! vertex ids per key so ties pop the smallest id); larger key ranges fall
//! back to a single binary heap. Both use lazy deletion.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::hgraph::Weight;

enum Store {
    Buckets {
        buckets: Vec<BinaryHeap<Reverse<u32>>>,
        top: usize,
    },
    Heap(BinaryHeap<(Weight, Reverse<u32>)>),
}

pub(crate) struct IncreasingMaxQueue {
    keys: Vec<Weight>,
    done: Vec<bool>,
    store: Store,
}

impl IncreasingMaxQueue {
    /// All `n` vertices start with key zero. `max_key` bounds every key the
    /// queue will ever hold.
    pub fn new(n: usize, max_key: Weight, bucket_limit: Weight) -> Self {
        let store = if max_key <= bucket_limit {
            let mut buckets = Vec::with_capacity(max_key as usize + 1);
            buckets.resize_with(max_key as usize + 1, BinaryHeap::new);
            buckets[0] = (0..n as u32).map(Reverse).collect();
            Store::Buckets { buckets, top: 0 }
        } else {
            Store::Heap((0..n as u32).map(|v| (0, Reverse(v))).collect())
        };
        Self {
            keys: vec![0; n],
            done: vec![false; n],
            store,
        }
    }

    #[cfg(test)]
    pub fn is_bucketed(&self) -> bool {
        matches!(self.store, Store::Buckets { .. })
    }

    /// Removes `v` without it having to reach the top.
    pub fn take(&mut self, v: u32) {
        self.done[v as usize] = true;
    }

    pub fn add(&mut self, v: u32, delta: Weight) {
        if self.done[v as usize] || delta == 0 {
            return;
        }
        let key = self.keys[v as usize] + delta;
        self.keys[v as usize] = key;
        match &mut self.store {
            Store::Buckets { buckets, top } => {
                buckets[key as usize].push(Reverse(v));
                *top = (*top).max(key as usize);
            }
            Store::Heap(heap) => heap.push((key, Reverse(v))),
        }
    }

    pub fn pop(&mut self) -> Option<(u32, Weight)> {
        match &mut self.store {
            Store::Buckets { buckets, top } => loop {
                let Reverse(v) = match buckets[*top].pop() {
                    Some(entry) => entry,
                    None if *top == 0 => return None,
                    None => {
                        *top -= 1;
                        continue;
                    }
                };
                if self.done[v as usize] || self.keys[v as usize] != *top as Weight {
                    continue;
                }
                self.done[v as usize] = true;
                return Some((v, *top as Weight));
            },
            Store::Heap(heap) => loop {
                let (key, Reverse(v)) = heap.pop()?;
                if self.done[v as usize] || self.keys[v as usize] != key {
                    continue;
                }
                self.done[v as usize] = true;
                return Some((v, key));
            },
        }
    }
}
