use serde::{Deserialize, Serialize};

use crate::hgraph::Weight;

/// Which stage of a solver determined the reported value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    TrivialDegree,
    ReductionTerminal,
    OrderingSolver,
    BipSolver,
    Oracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::TrivialDegree => "trivial-degree",
            Provenance::ReductionTerminal => "reduction-terminal",
            Provenance::OrderingSolver => "ordering-solver",
            Provenance::BipSolver => "bip-solver",
            Provenance::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// A cut value with, optionally, the bipartition realizing it.
///
/// `side[v]` marks the block of input vertex `v`. When present, the cut
/// weight of `side` on the input hypergraph equals `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub value: Weight,
    pub side: Option<Vec<bool>>,
    pub provenance: Provenance,
    /// `false` when a time limit stopped the search early; `value` is then
    /// the best cut found so far.
    pub complete: bool,
}

impl CutResult {
    pub fn new(value: Weight, side: Option<Vec<bool>>, provenance: Provenance) -> Self {
        Self {
            value,
            side,
            provenance,
            complete: true,
        }
    }

    /// Vertices on the `true` side.
    pub fn block(&self) -> Option<Vec<usize>> {
        self.side
            .as_ref()
            .map(|s| s.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
    }
}
