//! Brute-force minimum cuts by bitmask enumeration of all bipartitions.
//!
//! Shares no code with the reduction or ordering solvers; it only reads pins
//! and weights out of the hypergraph.

use crate::error::{Error, Result};
use crate::hgraph::{CutResult, Hypergraph, Provenance, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_n: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        Self { max_n: 20 }
    }
}

fn edge_masks(h: &Hypergraph) -> Vec<(u64, Weight)> {
    h.edges()
        .map(|(pins, w)| (pins.iter().fold(0u64, |m, &p| m | 1 << p), w))
        .collect()
}

fn mask_cut(masks: &[(u64, Weight)], a: u64, full: u64) -> Weight {
    let b = full & !a;
    masks
        .iter()
        .filter(|&&(m, _)| m & a != 0 && m & b != 0)
        .map(|&(_, w)| w)
        .sum()
}

fn check_size(h: &Hypergraph, limit: OracleLimit) -> Result<usize> {
    let n = h.num_vertices();
    if n > limit.max_n || n > 63 {
        return Err(Error::OracleLimit {
            n,
            max_n: limit.max_n.min(63),
        });
    }
    if n < 2 {
        return Err(Error::NoCut);
    }
    Ok(n)
}

/// Global minimum cut with vertex 0 fixed on the `true` side; enumerates
/// the `2^(n-1) - 1` bipartitions.
pub fn brute_mincut_with(h: &Hypergraph, limit: OracleLimit) -> Result<CutResult> {
    let n = check_size(h, limit)?;
    let masks = edge_masks(h);
    let full = (1u64 << n) - 1;
    let mut best = (Weight::MAX, 0u64);
    for rest in 0..(1u64 << (n - 1)) - 1 {
        let a = 1 | rest << 1;
        let value = mask_cut(&masks, a, full);
        if value < best.0 {
            best = (value, a);
        }
    }
    let side = (0..n).map(|v| best.1 >> v & 1 == 1).collect();
    Ok(CutResult::new(best.0, Some(side), Provenance::Oracle))
}

pub fn brute_mincut(h: &Hypergraph) -> Result<CutResult> {
    brute_mincut_with(h, OracleLimit::default())
}

/// Minimum cut over bipartitions separating `s` from `t`.
pub fn brute_st_mincut_with(h: &Hypergraph, s: usize, t: usize, limit: OracleLimit) -> Result<Weight> {
    let n = check_size(h, limit)?;
    if s >= n {
        return Err(Error::VertexOutOfRange(s));
    }
    if t >= n {
        return Err(Error::VertexOutOfRange(t));
    }
    if s == t {
        return Err(Error::SameTerminals);
    }
    let masks = edge_masks(h);
    let full = (1u64 << n) - 1;
    let mut best = Weight::MAX;
    for a in 0..=full {
        if a >> s & 1 == 1 && a >> t & 1 == 0 {
            best = best.min(mask_cut(&masks, a, full));
        }
    }
    Ok(best)
}

pub fn brute_st_mincut(h: &Hypergraph, s: usize, t: usize) -> Result<Weight> {
    brute_st_mincut_with(h, s, t, OracleLimit::default())
}
