//! Minimum cuts of weighted and unweighted hypergraphs.
//!
//! The main entry point is [`reduce::run_pipeline`]: it shrinks the input
//! with cut-preserving contractions, tracks an upper bound from trivial
//! cuts, and hands whatever remains to a residual solver (the exact
//! [ordering solver](osolve) or the [BIP branch-and-bound](bip)).
//!
//! Also included: the k-trimmed-certificate [baseline](trimmer), a
//! brute-force [oracle], label-propagation [clustering](lpcluster), and
//! benchmark instance [generation](synth).

pub mod bip;
mod dsu;
pub mod error;
pub mod hgraph;
pub mod lpcluster;
pub mod oracle;
pub mod osolve;
pub mod reduce;
pub mod synth;
pub mod trimmer;

pub use error::{Error, Result};
pub use hgraph::{CutResult, Hypergraph, Provenance, Weight};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::hgraph::{Hypergraph, Weight};

    /// Weighted hypergraph from mixed-size pin slices.
    pub fn wh(n: usize, edges: &[(&[u32], Weight)]) -> Hypergraph {
        Hypergraph::from_weighted_edges(n, edges.iter().copied()).unwrap()
    }
}
