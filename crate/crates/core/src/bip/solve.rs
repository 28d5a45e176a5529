//! Best-bound branch and bound over the LP relaxation.
//!
//! The plain relaxation is degenerate (`x_v = 1/n`, `y = 0` is feasible with
//! objective 0), so the relaxation alone says little; branching on `x`
//! closes the gap. Fixing `x_0 = 1` at the root halves the tree: every
//! solution and its complement have the same objective.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use microlp::{ComparisonOp, OptimizationDirection, Problem, Solution, Variable};

use crate::error::{Error, Result};
use crate::hgraph::{cut_value, CutResult, Hypergraph, Provenance, Weight};

use super::{build_model, BipModel, ModelMode, Sense};

#[derive(Clone, Debug)]
pub struct BipLimits {
    pub mode: ModelMode,
    /// Distance from 0 or 1 within which a value counts as integral.
    pub tolerance: f64,
    pub deadline: Option<Instant>,
    pub max_nodes: Option<usize>,
}

impl Default for BipLimits {
    fn default() -> Self {
        Self {
            mode: ModelMode::Representative,
            tolerance: 1e-7,
            deadline: None,
            max_nodes: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    /// Stopped on a limit; the incumbent is returned.
    FeasibleTimeout,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct RelaxedSolution {
    /// Variable values of the LP that produced the incumbent.
    pub values: Vec<f64>,
    pub objective: f64,
    /// Rounded partition; both blocks non-empty.
    pub side: Vec<bool>,
    /// `cut_value` of `side`, recomputed on the hypergraph.
    pub value: Weight,
    pub status: SolveStatus,
    pub nodes: usize,
}

struct Node {
    bound: f64,
    depth: usize,
    solution: Solution,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // max-heap: smallest bound first, then deepest
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound).then(self.depth.cmp(&other.depth))
    }
}

fn lp_error(e: microlp::Error) -> Error {
    Error::Solver(e.to_string())
}

fn build_problem(model: &BipModel) -> (Problem, Vec<Variable>) {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let mut vars = Vec::with_capacity(model.num_vars());
    for _ in 0..model.num_vertices {
        vars.push(p.add_var(0.0, (0.0, 1.0)));
    }
    for &w in &model.objective {
        vars.push(p.add_var(w as f64, (0.0, 1.0)));
    }
    for row in &model.rows {
        let terms: Vec<(Variable, f64)> = row.terms.iter().map(|&(v, c)| (vars[v], c as f64)).collect();
        let op = match row.sense {
            Sense::Ge => ComparisonOp::Ge,
            Sense::Le => ComparisonOp::Le,
        };
        p.add_constraint(terms.as_slice(), op, row.rhs as f64);
    }
    (p, vars)
}

struct Incumbent {
    value: Weight,
    side: Vec<bool>,
    values: Vec<f64>,
    objective: f64,
}

/// Rounds `x` at 0.5; an empty block receives the vertex of least weighted
/// degree.
fn round(h: &Hypergraph, x: &[f64]) -> Vec<bool> {
    let mut side: Vec<bool> = x.iter().map(|&v| v >= 0.5).collect();
    let ones = side.iter().filter(|&&s| s).count();
    if ones == 0 || ones == side.len() {
        let (v, _) = h.min_weighted_degree().expect("at least two vertices");
        side[v] = ones == 0;
    }
    side
}

pub fn solve_relaxed(model: &BipModel, limits: &BipLimits) -> Result<RelaxedSolution> {
    let h = model.hypergraph();
    let n = model.num_vertices;
    let tol = limits.tolerance;
    let (problem, vars) = build_problem(model);
    let root = match problem.solve().and_then(|s| s.fix_var(vars[0], 1.0)) {
        Ok(s) => s,
        Err(microlp::Error::Infeasible) => {
            return Ok(RelaxedSolution {
                values: Vec::new(),
                objective: f64::INFINITY,
                side: Vec::new(),
                value: Weight::MAX,
                status: SolveStatus::Infeasible,
                nodes: 0,
            })
        }
        Err(e) => return Err(lp_error(e)),
    };

    let values_of = |s: &Solution| -> Vec<f64> { vars.iter().map(|&v| *s.var_value(v)).collect() };
    let mut best: Option<Incumbent> = None;
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        bound: root.objective(),
        depth: 0,
        solution: root,
    });
    let mut nodes = 0;
    let mut status = SolveStatus::Optimal;

    while let Some(node) = heap.pop() {
        if let Some(b) = &best {
            if (node.bound - tol).ceil() >= b.value as f64 {
                continue;
            }
        }
        let out_of_budget =
            limits.deadline.is_some_and(|d| Instant::now() >= d) || limits.max_nodes.is_some_and(|m| nodes >= m);
        if best.is_some() && out_of_budget {
            status = SolveStatus::FeasibleTimeout;
            break;
        }
        nodes += 1;

        let values = values_of(&node.solution);
        let side = round(h, &values[..n]);
        let value = cut_value(h, &side)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(Incumbent {
                value,
                side,
                values: values.clone(),
                objective: node.solution.objective(),
            });
        }

        // most fractional x, ties by index
        let branch = (0..n)
            .map(|v| (v, values[v]))
            .filter(|&(_, x)| x > tol && x < 1.0 - tol)
            .min_by(|a, b| (a.1 - 0.5).abs().total_cmp(&(b.1 - 0.5).abs()).then(a.0.cmp(&b.0)));
        let Some((v, _)) = branch else {
            continue;
        };
        for fixed in [0.0, 1.0] {
            match node.solution.clone().fix_var(vars[v], fixed) {
                Ok(s) => heap.push(Node {
                    bound: s.objective(),
                    depth: node.depth + 1,
                    solution: s,
                }),
                Err(microlp::Error::Infeasible) => {}
                Err(e) => return Err(lp_error(e)),
            }
        }
    }

    let b = best.expect("the root always yields an incumbent");
    Ok(RelaxedSolution {
        values: b.values,
        objective: b.objective,
        side: b.side,
        value: b.value,
        status,
        nodes,
    })
}

/// Builds the model for `h` and solves it.
pub fn bip_mincut(h: &Hypergraph, limits: &BipLimits) -> Result<CutResult> {
    let model = build_model(h, limits.mode)?;
    let sol = solve_relaxed(&model, limits)?;
    if sol.status == SolveStatus::Infeasible {
        return Err(Error::Solver("model infeasible".into()));
    }
    let mut cut = CutResult::new(sol.value, Some(sol.side), Provenance::BipSolver);
    cut.complete = sol.status == SolveStatus::Optimal;
    Ok(cut)
}
