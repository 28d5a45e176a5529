//! Exact reductions and the reduce-then-solve driver.
//!
//! A [`PipelineState`] holds the current (contracted) hypergraph, the upper
//! bound `λ̂` (the smallest trivial cut seen so far) and the contraction log.
//! Every rule only contracts vertex sets that no cut of value below `λ̂`
//! separates, so `min(λ̂, mincut(current)) = mincut(input)` holds throughout.

mod nested;
mod rules;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bip::{self, BipLimits};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::hgraph::{connected_components, ContractionLog, CutResult, Hypergraph, Provenance, Weight};
use crate::lpcluster;
use crate::osolve::{mincut_ordering_traced, OrderingOptions};

pub use nested::{rule_nested_substructure, scan_substructures, SubstructureScan};
pub use rules::{
    rule_heavy_edge, rule_heavy_neighborhood, rule_heavy_overlap, rule_imbalanced_triangle,
    rule_imbalanced_triangle_with, rule_imbalanced_vertex, rule_imbalanced_vertex_with, rule_singleton, TriangleTest,
    VertexTest,
};

/// Reduction rules in the order a round applies them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Singleton,
    HeavyEdge,
    HeavyOverlap,
    NestedSubstructure,
    ImbalancedVertex,
    ImbalancedTriangle,
    HeavyNeighborhood,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Singleton,
        Rule::HeavyEdge,
        Rule::HeavyOverlap,
        Rule::NestedSubstructure,
        Rule::ImbalancedVertex,
        Rule::ImbalancedTriangle,
        Rule::HeavyNeighborhood,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Singleton => "singleton",
            Rule::HeavyEdge => "heavy-edge",
            Rule::HeavyOverlap => "heavy-overlap",
            Rule::NestedSubstructure => "nested-substructure",
            Rule::ImbalancedVertex => "imbalanced-vertex",
            Rule::ImbalancedTriangle => "imbalanced-triangle",
            Rule::HeavyNeighborhood => "heavy-neighborhood",
        }
    }

    /// Applies the rule once; returns whether anything changed.
    pub fn apply(self, state: &mut PipelineState) -> bool {
        match self {
            Rule::Singleton => rule_singleton(state),
            Rule::HeavyEdge => rule_heavy_edge(state),
            Rule::HeavyOverlap => rule_heavy_overlap(state),
            Rule::NestedSubstructure => rule_nested_substructure(state),
            Rule::ImbalancedVertex => rule_imbalanced_vertex(state),
            Rule::ImbalancedTriangle => rule_imbalanced_triangle(state),
            Rule::HeavyNeighborhood => rule_heavy_neighborhood(state),
        }
    }
}

/// One line of the per-round statistics stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleStat {
    pub round: usize,
    /// A rule name, or `label-propagation`.
    pub rule: String,
    pub edges_before: usize,
    pub edges_after: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub lambda_hat: Weight,
}

impl RuleStat {
    pub fn contractions(&self) -> usize {
        self.vertices_before - self.vertices_after
    }
}

#[derive(Clone, Debug)]
pub struct PipelineState {
    pub current: Hypergraph,
    /// `Weight::MAX` until a hypergraph with two or more vertices is seen.
    pub lambda_hat: Weight,
    pub log: ContractionLog,
    pub round_stats: Vec<RuleStat>,
    pub threshold: usize,
    /// Log snapshot and original root of the vertex realising `lambda_hat`.
    best: Option<(usize, u32)>,
}

impl PipelineState {
    pub fn new(h: &Hypergraph, threshold: usize) -> Self {
        let mut state = Self {
            current: h.clone(),
            lambda_hat: Weight::MAX,
            log: ContractionLog::new(h.num_vertices()),
            round_stats: Vec::new(),
            threshold,
            best: None,
        };
        update_lambda_hat(&mut state);
        state
    }

    /// Contracts the groups of `ds` (over current vertex ids).
    pub fn contract_groups(&mut self, mut ds: DisjointSets) -> bool {
        let (mapping, count) = ds.mapping();
        self.contract(&mapping, count)
    }

    pub fn contract(&mut self, mapping: &[u32], count: usize) -> bool {
        if count == self.current.num_vertices() {
            return false;
        }
        self.log.record(mapping, count);
        self.current = self.current.contract(mapping, count);
        true
    }

    /// Nothing left to reduce: one vertex, or no hyperedges.
    pub fn is_fully_reduced(&self) -> bool {
        self.current.num_vertices() <= 1 || self.current.num_edges() == 0
    }

    /// Input vertices on the small side of the best trivial cut so far.
    pub fn trivial_side(&self) -> Option<Vec<bool>> {
        self.best.map(|(snap, root)| self.log.members_at(snap, root))
    }
}

/// Smallest cut isolating one vertex; hyperedges with fewer than two pins
/// do not count.
fn min_trivial_cut(h: &Hypergraph) -> Option<(usize, Weight)> {
    if h.num_vertices() < 2 {
        return None;
    }
    if h.is_compact() {
        return h.min_weighted_degree();
    }
    let mut deg = vec![0 as Weight; h.num_vertices()];
    for (pins, w) in h.edges().filter(|(pins, _)| pins.len() >= 2) {
        for &p in pins {
            deg[p as usize] += w;
        }
    }
    deg.iter()
        .enumerate()
        .min_by_key(|&(v, &d)| (d, v))
        .map(|(v, &d)| (v, d))
}

/// `λ̂ ← min(λ̂, δ_ω(current))`. Hypergraphs with fewer than two vertices
/// have no trivial cut and leave `λ̂` alone.
pub fn update_lambda_hat(state: &mut PipelineState) -> Weight {
    if let Some((v, d)) = min_trivial_cut(&state.current) {
        if d < state.lambda_hat {
            state.lambda_hat = d;
            state.best = Some((state.log.snapshot(), state.log.root_of(v)));
        }
    }
    state.lambda_hat
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualSolver {
    #[default]
    Exact,
    Bip,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Contract label-propagation clusters at the start of every round.
    pub use_lp: bool,
    pub lp_iterations: usize,
    /// Stop reducing once at most this many vertices remain.
    pub threshold: usize,
    pub seed: u64,
    pub solver: ResidualSolver,
    pub bip: BipLimits,
    pub deadline: Option<Instant>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            use_lp: false,
            lp_iterations: 1,
            threshold: 1000,
            seed: 0,
            solver: ResidualSolver::Exact,
            bip: BipLimits::default(),
            deadline: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub cut: CutResult,
    pub stats: Vec<RuleStat>,
    /// `λ̂` after every update, starting with the input's.
    pub lambda_trace: Vec<Weight>,
    pub rounds: usize,
    pub solver_called: bool,
    pub residual: Hypergraph,
}

impl PipelineOutcome {
    /// Solved by reductions alone.
    pub fn fully_reduced(&self) -> bool {
        !self.solver_called
    }
}

fn step(
    state: &mut PipelineState,
    trace: &mut Vec<Weight>,
    round: usize,
    name: &str,
    f: impl FnOnce(&mut PipelineState) -> bool,
) -> bool {
    let (edges_before, vertices_before) = (state.current.num_edges(), state.current.num_vertices());
    let changed = f(state);
    let lambda_hat = update_lambda_hat(state);
    trace.push(lambda_hat);
    state.round_stats.push(RuleStat {
        round,
        rule: name.to_string(),
        edges_before,
        edges_after: state.current.num_edges(),
        vertices_before,
        vertices_after: state.current.num_vertices(),
        lambda_hat,
    });
    changed
}

pub fn run_pipeline(h: &Hypergraph, config: &PipelineConfig) -> Result<PipelineOutcome> {
    if h.num_vertices() < 2 {
        return Err(Error::NoCut);
    }
    let expired = || config.deadline.is_some_and(|d| Instant::now() >= d);
    let mut state = PipelineState::new(h, config.threshold);
    let mut trace = vec![state.lambda_hat];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rounds = 0;

    while state.lambda_hat > 0 && !state.is_fully_reduced() && !(rounds > 0 && expired()) {
        rounds += 1;
        let mut changed = false;
        if config.use_lp {
            changed |= step(&mut state, &mut trace, rounds, "label-propagation", |s| {
                let clustering = lpcluster::propagate(&s.current, config.lp_iterations, &mut rng);
                let before = s.current.num_vertices();
                s.current = lpcluster::contract_clusters(&s.current, &clustering, &mut s.log);
                s.current.num_vertices() < before
            });
        }
        for rule in Rule::ALL {
            if state.lambda_hat == 0 || state.is_fully_reduced() {
                break;
            }
            changed |= step(&mut state, &mut trace, rounds, rule.name(), |s| rule.apply(s));
        }
        if !changed || state.current.num_vertices() <= config.threshold {
            break;
        }
    }

    let g = &state.current;
    let trivial = |provenance| CutResult::new(state.lambda_hat, state.trivial_side(), provenance);
    let mut solver_called = false;
    let cut = if g.num_vertices() == 1 {
        trivial(Provenance::ReductionTerminal)
    } else if state.lambda_hat == 0 {
        trivial(Provenance::TrivialDegree)
    } else {
        let (labels, count) = connected_components(g);
        if g.num_edges() == 0 || count > 1 {
            let side: Vec<bool> = labels.iter().map(|&l| l == labels[0]).collect();
            CutResult::new(0, Some(state.log.expand(&side)), Provenance::ReductionTerminal)
        } else {
            solver_called = true;
            let residual = match config.solver {
                ResidualSolver::Exact => {
                    let opts = OrderingOptions {
                        start: 0,
                        deadline: config.deadline,
                    };
                    mincut_ordering_traced(g, opts)?.cut
                }
                ResidualSolver::Bip => {
                    let mut limits = config.bip.clone();
                    limits.deadline = match (limits.deadline, config.deadline) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                    bip::bip_mincut(g, &limits)?
                }
            };
            if state.lambda_hat < residual.value {
                trivial(Provenance::TrivialDegree)
            } else {
                let side = residual.side.as_deref().map(|s| state.log.expand(s));
                CutResult {
                    value: residual.value,
                    side,
                    provenance: residual.provenance,
                    complete: residual.complete,
                }
            }
        }
    };

    Ok(PipelineOutcome {
        cut,
        stats: state.round_stats,
        lambda_trace: trace,
        rounds,
        solver_called,
        residual: state.current,
    })
}
