//! Exact minimum cuts by repeated maximum-adjacency orderings.
//!
//! The key of an unordered vertex `v` is the total weight of hyperedges that
//! contain `v` and already touch the ordered prefix; each hyperedge adds its
//! weight once, when it is first touched. The last two vertices `s, t` of an
//! ordering form a pendant pair: the cut isolating `t` is a minimum `s`-`t`
//! cut. Recording that candidate and merging `s` with `t`, `n - 1` times,
//! yields the global minimum cut.

mod pq;

use std::time::Instant;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::hgraph::{compact, connected_components, ContractionLog, CutResult, Hypergraph, Provenance, Weight};

pub(crate) use pq::IncreasingMaxQueue;

/// Keys above this bound use the comparison heap instead of buckets.
const BUCKET_LIMIT: Weight = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaOrdering {
    pub order: Vec<u32>,
    /// Connection weight of `order[i]` to `order[..i]` when it was selected.
    pub keys: Vec<Weight>,
}

impl MaOrdering {
    pub fn last_two(&self) -> Option<(u32, u32)> {
        match self.order.as_slice() {
            [.., s, t] => Some((*s, *t)),
            _ => None,
        }
    }

    /// Position of each vertex in the order.
    pub fn positions(&self) -> Vec<u32> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        pos
    }
}

/// Maximum-adjacency ordering from `start`. Ties go to the smallest id.
///
/// Fails with [`Error::Disconnected`] if some vertex is unreachable from
/// `start`.
pub fn ma_ordering(h: &Hypergraph, start: usize) -> Result<MaOrdering> {
    let n = h.num_vertices();
    if start >= n {
        return Err(Error::VertexOutOfRange(start));
    }
    let max_key = h.weighted_degrees().iter().copied().max().unwrap_or(0);
    let bucket_limit = BUCKET_LIMIT.min(4 * (n + h.num_pins()) as Weight + 64);
    let mut queue = IncreasingMaxQueue::new(n, max_key, bucket_limit);
    let mut touched = vec![false; h.num_edges()];
    let mut reached = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut keys = Vec::with_capacity(n);

    queue.take(start as u32);
    let mut next = Some((start as u32, 0));
    while let Some((v, key)) = next {
        if !order.is_empty() && !reached[v as usize] {
            return Err(Error::Disconnected);
        }
        order.push(v);
        keys.push(key);
        for &e in h.incident_edges(v as usize) {
            let e = e as usize;
            if std::mem::replace(&mut touched[e], true) {
                continue;
            }
            let w = h.edge_weight(e);
            for &u in h.pins(e) {
                reached[u as usize] = true;
                queue.add(u, w);
            }
        }
        next = queue.pop();
    }
    Ok(MaOrdering { order, keys })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OrderingOptions {
    /// Original vertex every phase starts from.
    pub start: usize,
    /// Checked between phases; on expiry the best candidate so far is
    /// returned with `complete = false`.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug)]
pub struct OrderingTrace {
    pub cut: CutResult,
    /// Candidate (cut-of-the-phase) value of each phase run.
    pub candidates: Vec<Weight>,
}

pub fn mincut_ordering(h: &Hypergraph) -> Result<CutResult> {
    Ok(mincut_ordering_traced(h, OrderingOptions::default())?.cut)
}

pub fn mincut_ordering_traced(h: &Hypergraph, opts: OrderingOptions) -> Result<OrderingTrace> {
    let n = h.num_vertices();
    if n < 2 {
        return Err(Error::NoCut);
    }
    if opts.start >= n {
        return Err(Error::VertexOutOfRange(opts.start));
    }
    let (labels, count) = connected_components(h);
    if count > 1 {
        let side = labels.iter().map(|&l| l == labels[0]).collect();
        return Ok(OrderingTrace {
            cut: CutResult::new(0, Some(side), Provenance::OrderingSolver),
            candidates: Vec::new(),
        });
    }

    let mut g = compact(h);
    let mut log = ContractionLog::new(n);
    let mut start = opts.start as u32;
    let mut candidates = Vec::with_capacity(n - 1);
    let mut best: Option<(Weight, usize, u32)> = None;
    let mut complete = true;

    while g.num_vertices() > 1 {
        if best.is_some() && opts.deadline.is_some_and(|d| Instant::now() >= d) {
            complete = false;
            break;
        }
        let ordering = ma_ordering(&g, start as usize)?;
        let (s, t) = ordering.last_two().expect("at least two vertices");
        let candidate = g.weighted_degree(t as usize);
        candidates.push(candidate);
        if best.is_none_or(|(b, _, _)| candidate < b) {
            best = Some((candidate, log.snapshot(), log.root_of(t as usize)));
        }

        let mut ds = DisjointSets::new(g.num_vertices());
        ds.union(s, t);
        let (mapping, count) = ds.mapping();
        log.record(&mapping, count);
        g = g.contract(&mapping, count);
        start = mapping[start as usize];
    }

    let (value, snapshot, root) = best.expect("n >= 2 runs at least one phase");
    let side = log.members_at(snapshot, root);
    let mut cut = CutResult::new(value, Some(side), Provenance::OrderingSolver);
    cut.complete = complete;
    Ok(OrderingTrace { cut, candidates })
}
