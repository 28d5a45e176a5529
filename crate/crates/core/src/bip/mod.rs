//! Minimum cut as a binary integer program.
//!
//! Variables: `x_v` (block of vertex `v`) and `y_e` (hyperedge `e` is cut).
//! Minimise `Σ ω(e) y_e` subject to `Σ x_v ≥ 1`, `Σ x_v ≤ n − 1` and
//! `y_e ≥ x_u − x_v` for pins `u ≠ v` of `e`.

mod solve;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, Weight};

pub use solve::{bip_mincut, solve_relaxed, BipLimits, RelaxedSolution, SolveStatus};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelMode {
    /// `y_e ≥ x_u − x_v` for every ordered pin pair.
    Pairwise,
    /// `y_e ≥ ±(x_u − x_r)` against the first pin `r` only: `2(|e| − 1)` rows.
    #[default]
    Representative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
}

/// Variables are numbered `x_v = v`, then `y_e = n + e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub terms: Vec<(usize, i8)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug)]
pub struct BipModel {
    pub mode: ModelMode,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// Weight of each `y_e`; every `x_v` has objective coefficient zero.
    pub objective: Vec<Weight>,
    pub rows: Vec<Row>,
    hypergraph: Hypergraph,
}

impl BipModel {
    pub fn num_vars(&self) -> usize {
        self.num_vertices + self.num_edges
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.num_vertices {
            format!("x_v{var}")
        } else {
            format!("y_e{}", var - self.num_vertices)
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }
}

pub fn build_model(h: &Hypergraph, mode: ModelMode) -> Result<BipModel> {
    let n = h.num_vertices();
    if n < 2 {
        return Err(Error::NoCut);
    }
    let all_x: Vec<(usize, i8)> = (0..n).map(|v| (v, 1)).collect();
    let mut rows = vec![
        Row {
            terms: all_x.clone(),
            sense: Sense::Ge,
            rhs: 1,
        },
        Row {
            terms: all_x,
            sense: Sense::Le,
            rhs: n as i64 - 1,
        },
    ];
    // y_e - x_u + x_v >= 0
    let mut indicator = |e: usize, u: u32, v: u32| {
        rows.push(Row {
            terms: vec![(n + e, 1), (u as usize, -1), (v as usize, 1)],
            sense: Sense::Ge,
            rhs: 0,
        })
    };
    for e in 0..h.num_edges() {
        let pins = h.pins(e);
        match mode {
            ModelMode::Pairwise => {
                for &u in pins {
                    for &v in pins.iter().filter(|&&v| v != u) {
                        indicator(e, u, v);
                    }
                }
            }
            ModelMode::Representative => {
                if let Some((&r, rest)) = pins.split_first() {
                    for &u in rest {
                        indicator(e, u, r);
                        indicator(e, r, u);
                    }
                }
            }
        }
    }
    Ok(BipModel {
        mode,
        num_vertices: n,
        num_edges: h.num_edges(),
        objective: h.edge_weights().to_vec(),
        rows,
        hypergraph: h.clone(),
    })
}

fn write_terms(out: &mut String, model: &BipModel, terms: impl Iterator<Item = (usize, i64)>) {
    for (i, (var, coef)) in terms.enumerate() {
        let name = model.var_name(var);
        match (i, coef < 0) {
            (0, false) => write!(out, "{coef} {name}"),
            (0, true) => write!(out, "- {} {name}", -coef),
            (_, false) => write!(out, " + {coef} {name}"),
            (_, true) => write!(out, " - {} {name}", -coef),
        }
        .unwrap();
    }
}

/// The model in CPLEX LP text format.
pub fn to_lp_string(model: &BipModel) -> String {
    let n = model.num_vertices;
    let mut out = String::from("Minimize\n ");
    if model.num_edges == 0 {
        out.push_str("0 x_v0");
    } else {
        let terms = model.objective.iter().enumerate().map(|(e, &w)| (n + e, w as i64));
        write_terms(&mut out, model, terms);
    }
    out.push_str("\nSubject To\n");
    for (i, row) in model.rows.iter().enumerate() {
        write!(out, " c{i}: ").unwrap();
        write_terms(&mut out, model, row.terms.iter().map(|&(v, c)| (v, c as i64)));
        let op = match row.sense {
            Sense::Ge => ">=",
            Sense::Le => "<=",
        };
        writeln!(out, " {op} {}", row.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for var in 0..model.num_vars() {
        writeln!(out, " {}", model.var_name(var)).unwrap();
    }
    out.push_str("End\n");
    out
}

pub fn export_lp(model: &BipModel, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(to_lp_string(model).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::wh;

    fn tri() -> Hypergraph {
        wh(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)])
    }

    #[test]
    fn model_sizes() {
        let m = build_model(&tri(), ModelMode::Pairwise).unwrap();
        assert_eq!(m.num_vars(), 6);
        assert_eq!(m.rows.len(), 2 + 3 * 2);
        let m = build_model(&wh(4, &[(&[0, 1, 2, 3], 7)]), ModelMode::Representative).unwrap();
        assert_eq!(m.rows.len() - 2, 6);
        let m = build_model(&wh(4, &[(&[0, 1, 2, 3], 7)]), ModelMode::Pairwise).unwrap();
        assert_eq!(m.rows.len() - 2, 12);
        let m = build_model(&wh(2, &[(&[0, 1], 7)]), ModelMode::Pairwise).unwrap();
        assert_eq!(m.objective, vec![7]);
        for row in &m.rows {
            assert!(row.terms.iter().all(|&(_, c)| c == 1 || c == -1));
        }
        assert!(build_model(&wh(1, &[]), ModelMode::Pairwise).is_err());
    }

    #[test]
    fn lp_text() {
        let m = build_model(&tri(), ModelMode::Pairwise).unwrap();
        let text = to_lp_string(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "Minimize");
        assert_eq!(lines[1].trim(), "1 y_e0 + 1 y_e1 + 1 y_e2");
        assert_eq!(lines[2], "Subject To");
        assert_eq!(lines[3], " c0: 1 x_v0 + 1 x_v1 + 1 x_v2 >= 1");
        assert_eq!(lines[4], " c1: 1 x_v0 + 1 x_v1 + 1 x_v2 <= 2");
        assert_eq!(lines[5], " c2: 1 y_e0 - 1 x_v0 + 1 x_v1 >= 0");
        assert!(text.ends_with("Binary\n x_v0\n x_v1\n x_v2\n y_e0\n y_e1\n y_e2\nEnd\n"));
    }

    #[test]
    fn export_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let m = build_model(&tri(), ModelMode::Representative).unwrap();
        let (a, b) = (dir.path().join("a.lp"), dir.path().join("b.lp"));
        export_lp(&m, &a).unwrap();
        export_lp(&m, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(export_lp(&m, dir.path().join("missing/x.lp")).is_err());
    }
}
