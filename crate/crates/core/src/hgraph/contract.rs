//! Vertex contraction, compaction and the merge history needed to map cuts
//! of a reduced hypergraph back to the input vertices.

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::hgraph::Hypergraph;

/// Union-find over the original vertex ids plus the ordered list of merges.
///
/// `roots[c]` is the original representative of current vertex `c`.
#[derive(Clone, Debug)]
pub struct ContractionLog {
    parent: Vec<u32>,
    size: Vec<u32>,
    merges: Vec<(u32, u32)>,
    roots: Vec<u32>,
}

impl ContractionLog {
    pub fn new(num_vertices: usize) -> Self {
        Self {
            parent: (0..num_vertices as u32).collect(),
            size: vec![1; num_vertices],
            merges: Vec::new(),
            roots: (0..num_vertices as u32).collect(),
        }
    }

    pub fn original_count(&self) -> usize {
        self.parent.len()
    }

    pub fn current_count(&self) -> usize {
        self.roots.len()
    }

    /// `(survivor, absorbed)` pairs of original ids, in merge order.
    pub fn merges(&self) -> &[(u32, u32)] {
        &self.merges
    }

    pub fn find(&self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    pub fn root_count(&self) -> usize {
        (0..self.parent.len() as u32)
            .filter(|&v| self.parent[v as usize] == v)
            .count()
    }

    /// Original representative of current vertex `c`.
    pub fn root_of(&self, c: usize) -> u32 {
        self.roots[c]
    }

    /// Records a contraction that relabeled current vertex `v` to
    /// `mapping[v]` in `0..new_count`.
    pub fn record(&mut self, mapping: &[u32], new_count: usize) {
        assert_eq!(mapping.len(), self.roots.len());
        let mut new_roots = vec![u32::MAX; new_count];
        for (v, &g) in mapping.iter().enumerate() {
            let r = self.roots[v];
            let slot = &mut new_roots[g as usize];
            if *slot == u32::MAX {
                *slot = r;
                continue;
            }
            let (mut keep, mut gone) = (*slot, r);
            if self.size[keep as usize] < self.size[gone as usize] {
                std::mem::swap(&mut keep, &mut gone);
            }
            self.parent[gone as usize] = keep;
            self.size[keep as usize] += self.size[gone as usize];
            self.merges.push((keep, gone));
            *slot = keep;
        }
        debug_assert!(new_roots.iter().all(|&r| r != u32::MAX));
        self.roots = new_roots;
    }

    /// Current vertex id of every original vertex.
    pub fn current_ids(&self) -> Vec<u32> {
        let mut of_root = vec![u32::MAX; self.parent.len()];
        for (c, &r) in self.roots.iter().enumerate() {
            of_root[r as usize] = c as u32;
        }
        (0..self.parent.len() as u32)
            .map(|v| of_root[self.find(v) as usize])
            .collect()
    }

    /// Maps a side assignment over current vertices to the original ones.
    pub fn expand(&self, side: &[bool]) -> Vec<bool> {
        assert_eq!(side.len(), self.roots.len());
        self.current_ids().into_iter().map(|c| side[c as usize]).collect()
    }

    /// Original vertices merged into current vertex `c`.
    pub fn members(&self, c: usize) -> Vec<u32> {
        let root = self.roots[c];
        (0..self.parent.len() as u32)
            .filter(|&v| self.find(v) == root)
            .collect()
    }

    /// Number of merges so far; pass to [`ContractionLog::members_at`].
    pub fn snapshot(&self) -> usize {
        self.merges.len()
    }

    /// Membership mask of the group containing original vertex `v` as it
    /// stood after the first `snapshot` merges.
    pub fn members_at(&self, snapshot: usize, v: u32) -> Vec<bool> {
        let mut ds = DisjointSets::new(self.parent.len());
        for &(a, b) in &self.merges[..snapshot] {
            ds.union(a, b);
        }
        let target = ds.find(v);
        (0..self.parent.len() as u32).map(|u| ds.find(u) == target).collect()
    }
}

/// Removes edges of size at most one or zero weight and merges edges with
/// identical pin sets.
pub fn compact(h: &Hypergraph) -> Hypergraph {
    let identity: Vec<u32> = (0..h.num_vertices() as u32).collect();
    h.contract(&identity, h.num_vertices())
}

/// Merges the vertices of `set` into one vertex (which takes the smallest
/// position among the survivors), compacts, and records the merge.
///
/// Returns the new hypergraph and whether anything was contracted; a set of
/// fewer than two distinct vertices leaves the graph unchanged.
pub fn contract_set(h: &Hypergraph, set: &[u32], log: &mut ContractionLog) -> Result<(Hypergraph, bool)> {
    if let Some(&bad) = set.iter().find(|&&v| v as usize >= h.num_vertices()) {
        return Err(Error::VertexOutOfRange(bad as usize));
    }
    let mut ds = DisjointSets::new(h.num_vertices());
    for w in set.windows(2) {
        ds.union(w[0], w[1]);
    }
    let (mapping, count) = ds.mapping();
    if count == h.num_vertices() {
        return Ok((h.clone(), false));
    }
    log.record(&mapping, count);
    Ok((h.contract(&mapping, count), true))
}
