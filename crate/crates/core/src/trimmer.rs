//! Unweighted minimum cut via k-trimmed certificates with a doubling `k`.
//!
//! The head of a hyperedge is its first pin in an MA ordering; the other
//! pins see it as a backward edge. Keeping the first `k` backward edges of
//! every vertex yields a certificate `H_k` with at most `k·n` hyperedges
//! that preserves every local connectivity up to `k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hgraph::{is_connected, CutResult, Hypergraph};
use crate::osolve::{ma_ordering, mincut_ordering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadOrdering {
    pub ma_order: Vec<u32>,
    pub head: Vec<u32>,
    /// Hyperedges sorted by (position of head, index).
    pub edge_order: Vec<u32>,
}

fn check_unweighted(h: &Hypergraph) -> Result<()> {
    if !h.is_unit_weighted() {
        return Err(Error::WeightedInput("hyperedge weights must all be 1".into()));
    }
    Ok(())
}

pub fn compute_head_ordering(h: &Hypergraph, seed: u64) -> Result<HeadOrdering> {
    check_unweighted(h)?;
    if h.num_vertices() == 0 {
        return Err(Error::NoCut);
    }
    let start = ChaCha8Rng::seed_from_u64(seed).random_range(0..h.num_vertices());
    head_ordering_from(h, start)
}

pub fn head_ordering_from(h: &Hypergraph, start: usize) -> Result<HeadOrdering> {
    let ma = ma_ordering(h, start)?;
    let pos = ma.positions();
    let head: Vec<u32> = (0..h.num_edges())
        .map(|e| {
            *h.pins(e)
                .iter()
                .min_by_key(|&&p| pos[p as usize])
                .expect("non-empty edge")
        })
        .collect();
    let mut edge_order: Vec<u32> = (0..h.num_edges() as u32).collect();
    edge_order.sort_by_key(|&e| (pos[head[e as usize] as usize], e));
    Ok(HeadOrdering {
        ma_order: ma.order,
        head,
        edge_order,
    })
}

/// For each vertex, the hyperedges containing it whose head is another
/// vertex, in `edge_order`.
pub fn backward_lists(h: &Hypergraph, ordering: &HeadOrdering) -> Vec<Vec<u32>> {
    let mut lists = vec![Vec::new(); h.num_vertices()];
    for &e in &ordering.edge_order {
        let head = ordering.head[e as usize];
        for &v in h.pins(e as usize).iter().filter(|&&v| v != head) {
            lists[v as usize].push(e);
        }
    }
    lists
}

/// Union of the first `min(k, len)` backward edges of every vertex; each
/// kept hyperedge appears once, in original order.
pub fn construct_certificate(h: &Hypergraph, backward: &[Vec<u32>], k: usize) -> Hypergraph {
    let mut keep = vec![false; h.num_edges()];
    for list in backward {
        for &e in list.iter().take(k) {
            keep[e as usize] = true;
        }
    }
    let lists: Vec<&[u32]> = (0..h.num_edges()).filter(|&e| keep[e]).map(|e| h.pins(e)).collect();
    let weights = vec![1; lists.len()];
    Hypergraph::build(&lists, &weights, h.vertex_weights()).expect("subset of a valid hypergraph")
}

#[derive(Clone, Debug)]
pub struct TrimmerTrace {
    pub cut: CutResult,
    /// `(k, |E(H_k)|, λ_k)` per iteration.
    pub iterations: Vec<(usize, usize, u64)>,
}

pub fn trimmer_mincut(h: &Hypergraph, seed: u64) -> Result<CutResult> {
    Ok(trimmer_traced(h, seed)?.cut)
}

pub fn trimmer_traced(h: &Hypergraph, seed: u64) -> Result<TrimmerTrace> {
    check_unweighted(h)?;
    if h.num_vertices() < 2 {
        return Err(Error::NoCut);
    }
    if !is_connected(h) {
        return Ok(TrimmerTrace {
            cut: mincut_ordering(h)?,
            iterations: Vec::new(),
        });
    }
    let ordering = compute_head_ordering(h, seed)?;
    let backward = backward_lists(h, &ordering);
    let mut iterations = Vec::new();
    let mut k = 2;
    loop {
        let hk = construct_certificate(h, &backward, k);
        let cut = mincut_ordering(&hk)?;
        iterations.push((k, hk.num_edges(), cut.value));
        if (cut.value as usize) < k {
            return Ok(TrimmerTrace { cut, iterations });
        }
        k *= 2;
    }
}
