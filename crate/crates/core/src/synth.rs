//! Instance generation: seeded random hypergraphs, uniform re-weighting and
//! `(k, 2)`-core extraction for benchmarks whose minimum cut is not a
//! trivial cut.

use std::collections::VecDeque;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, Weight};
use crate::osolve::mincut_ordering;

/// Inclusive ranges for a random instance. The same spec always yields the
/// same hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub vertices: (usize, usize),
    pub edges: (usize, usize),
    pub edge_size: (usize, usize),
    pub edge_weight: (Weight, Weight),
    pub vertex_weight: (Weight, Weight),
    /// Chain edges so the result is a single component.
    pub connected: bool,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        Self {
            vertices: (n, n),
            edges: (m, m),
            edge_size: (2, 4.min(n.max(2))),
            edge_weight: (1, 1),
            vertex_weight: (1, 1),
            connected: false,
            seed,
        }
    }
}

fn check_range<T: PartialOrd + std::fmt::Debug>(what: &str, r: (T, T)) -> Result<()> {
    if r.0 > r.1 {
        return Err(Error::InfeasibleSpec(format!("empty {what} range {r:?}")));
    }
    Ok(())
}

pub fn random_hypergraph(spec: &GenSpec) -> Result<Hypergraph> {
    check_range("vertex", spec.vertices)?;
    check_range("edge", spec.edges)?;
    check_range("edge size", spec.edge_size)?;
    check_range("edge weight", spec.edge_weight)?;
    check_range("vertex weight", spec.vertex_weight)?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = rng.random_range(spec.vertices.0..=spec.vertices.1);
    let m = rng.random_range(spec.edges.0..=spec.edges.1);
    let (lo, hi) = spec.edge_size;
    if hi > n || lo == 0 {
        return Err(Error::InfeasibleSpec(format!(
            "edge sizes {lo}..={hi} impossible with {n} vertices"
        )));
    }
    if spec.connected && n > 1 && (hi < 2 || 1 + m * (hi - 1) < n) {
        return Err(Error::InfeasibleSpec(format!(
            "{m} edges of size at most {hi} cannot connect {n} vertices"
        )));
    }

    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    let mut covered = 1usize;
    let mut lists: Vec<Vec<u32>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut size = rng.random_range(lo..=hi);
        let uncovered = n - covered.min(n);
        if spec.connected && uncovered > 0 {
            let fresh = uncovered.div_ceil(m - i);
            size = size.max(fresh + 1);
            let anchor = rng.random_range(0..covered);
            let mut pins = vec![perm[anchor]];
            pins.extend_from_slice(&perm[covered..covered + fresh]);
            // fill from the other covered vertices, spilling into new ones if needed
            let need = size - pins.len();
            let pool = covered - 1;
            covered += fresh;
            let take = need.min(pool);
            pins.extend(
                index::sample(&mut rng, pool, take)
                    .iter()
                    .map(|j| perm[if j >= anchor { j + 1 } else { j }]),
            );
            let extra = (need - take).min(n - covered);
            pins.extend_from_slice(&perm[covered..covered + extra]);
            covered += extra;
            lists.push(pins);
        } else {
            lists.push(index::sample(&mut rng, n, size).iter().map(|j| j as u32).collect());
        }
    }
    if spec.connected && n > 1 && covered < n {
        return Err(Error::InfeasibleSpec("could not connect all vertices".into()));
    }
    lists.shuffle(&mut rng);
    let edge_weights: Vec<Weight> = (0..m)
        .map(|_| rng.random_range(spec.edge_weight.0..=spec.edge_weight.1))
        .collect();
    let vertex_weights: Vec<Weight> = (0..n)
        .map(|_| rng.random_range(spec.vertex_weight.0..=spec.vertex_weight.1))
        .collect();
    Hypergraph::build(&lists, &edge_weights, &vertex_weights)
}

/// Redraws every hyperedge weight, then every vertex weight, uniformly from
/// `lo..=hi`.
pub fn randomize_weights(h: &Hypergraph, lo: Weight, hi: Weight, seed: u64) -> Result<Hypergraph> {
    check_range("weight", (lo, hi))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge_weights = (0..h.num_edges()).map(|_| rng.random_range(lo..=hi)).collect();
    let vertex_weights = (0..h.num_vertices()).map(|_| rng.random_range(lo..=hi)).collect();
    h.with_weights(edge_weights, vertex_weights)
}

/// A sub-hypergraph with the ids it came from.
#[derive(Clone, Debug)]
pub struct Core {
    pub hypergraph: Hypergraph,
    /// Input id of each core vertex.
    pub vertices: Vec<u32>,
    /// Input id of each core hyperedge.
    pub edges: Vec<u32>,
}

/// The `(k, 2)`-core: repeatedly delete vertices of (unweighted) degree
/// below `k` and hyperedges with fewer than two remaining pins.
pub fn k2_core(h: &Hypergraph, k: usize) -> Core {
    let n = h.num_vertices();
    let m = h.num_edges();
    let mut size: Vec<usize> = (0..m).map(|e| h.edge_size(e)).collect();
    let mut edge_alive: Vec<bool> = size.iter().map(|&s| s >= 2).collect();
    let mut vertex_alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n)
        .map(|v| h.incident_edges(v).iter().filter(|&&e| edge_alive[e as usize]).count())
        .collect();
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in 0..n {
        if degree[v] < k {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        vertex_alive[v] = false;
        for &e in h.incident_edges(v) {
            let e = e as usize;
            if !edge_alive[e] {
                continue;
            }
            size[e] -= 1;
            if size[e] >= 2 {
                continue;
            }
            edge_alive[e] = false;
            for &u in h.pins(e) {
                let u = u as usize;
                if vertex_alive[u] && u != v {
                    degree[u] -= 1;
                    if degree[u] < k && !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }

    let mut new_id = vec![u32::MAX; n];
    let mut vertices = Vec::new();
    for v in (0..n).filter(|&v| vertex_alive[v]) {
        new_id[v] = vertices.len() as u32;
        vertices.push(v as u32);
    }
    let mut lists = Vec::new();
    let mut weights = Vec::new();
    let mut edges = Vec::new();
    for e in (0..m).filter(|&e| edge_alive[e]) {
        lists.push(
            h.pins(e)
                .iter()
                .filter(|&&p| vertex_alive[p as usize])
                .map(|&p| new_id[p as usize])
                .collect::<Vec<_>>(),
        );
        weights.push(h.edge_weight(e));
        edges.push(e as u32);
    }
    let vertex_weights: Vec<Weight> = vertices.iter().map(|&v| h.vertex_weight(v as usize)).collect();
    let hypergraph =
        Hypergraph::build(&lists, &weights, &vertex_weights).expect("sub-hypergraph of a valid hypergraph");
    Core {
        hypergraph,
        vertices,
        edges,
    }
}

#[derive(Clone, Debug)]
pub struct BenchmarkCore {
    pub k: usize,
    pub core: Core,
    pub lambda: Weight,
    pub min_weighted_degree: Weight,
}

/// First `(k, 2)`-core, `k = 2, 3, ...`, with at least two vertices whose
/// minimum cut is strictly below its minimum weighted degree.
pub fn find_benchmark_core(h: &Hypergraph) -> Result<Option<BenchmarkCore>> {
    for k in 2.. {
        let core = k2_core(h, k);
        let g = &core.hypergraph;
        if g.num_vertices() < 2 {
            return Ok(None);
        }
        let lambda = mincut_ordering(g)?.value;
        let (_, min_weighted_degree) = g.min_weighted_degree().expect("non-empty core");
        if lambda < min_weighted_degree {
            return Ok(Some(BenchmarkCore {
                k,
                core,
                lambda,
                min_weighted_degree,
            }));
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::is_connected;

    #[test]
    fn deterministic_per_seed() {
        let mut spec = GenSpec::new(6, 8, 7);
        spec.edge_size = (2, 4);
        let a = random_hypergraph(&spec).unwrap();
        let b = random_hypergraph(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_edges(), 8);
        spec.seed = 8;
        assert_ne!(a, random_hypergraph(&spec).unwrap());
    }

    #[test]
    fn infeasible_sizes() {
        let mut spec = GenSpec::new(5, 3, 1);
        spec.edge_size = (6, 7);
        assert!(matches!(random_hypergraph(&spec), Err(Error::InfeasibleSpec(_))));
        let mut spec = GenSpec::new(10, 2, 1);
        spec.edge_size = (2, 3);
        spec.connected = true;
        assert!(random_hypergraph(&spec).is_err());
    }

    #[test]
    fn connected_flag() {
        for seed in 0..200 {
            let mut spec = GenSpec::new(12, 6, seed);
            spec.edge_size = (2, 5);
            spec.connected = true;
            let h = random_hypergraph(&spec).unwrap();
            assert!(is_connected(&h), "seed {seed}");
            assert!((0..h.num_edges()).all(|e| (2..=5).contains(&h.edge_size(e))));
        }
    }

    #[test]
    fn weights() {
        let h = random_hypergraph(&GenSpec::new(8, 10, 3)).unwrap();
        let u = randomize_weights(&h, 1, 1, 9).unwrap();
        assert!(u.is_unit_weighted());
        let a = randomize_weights(&h, 1, 100, 9).unwrap();
        assert_eq!(a, randomize_weights(&h, 1, 100, 9).unwrap());
        assert!(a.edge_weights().iter().all(|w| (1..=100).contains(w)));
        assert!(a.vertex_weights().iter().all(|w| (1..=100).contains(w)));
        assert_eq!(a.num_pins(), h.num_pins());
        assert!(randomize_weights(&h, 5, 4, 0).is_err());
    }

    #[test]
    fn core_examples() {
        let tri = Hypergraph::from_unit_edges(3, [[0u32, 1], [1, 2], [0, 2]]).unwrap();
        let c = k2_core(&tri, 2);
        assert_eq!(c.hypergraph, tri);

        let star = Hypergraph::from_unit_edges(4, [[0u32, 1], [0, 2], [0, 3]]).unwrap();
        let c = k2_core(&star, 2);
        assert_eq!(c.hypergraph.num_vertices(), 0);
        assert_eq!(c.hypergraph.num_edges(), 0);
        assert!(find_benchmark_core(&star).unwrap().is_none());
    }

    #[test]
    fn core_shrinks_edges() {
        // vertex 3 has degree 1; removing it shrinks {1,2,3} to {1,2}
        let h = Hypergraph::from_unit_edges(4, [vec![0u32, 1], vec![1, 2, 3], vec![0, 2]]).unwrap();
        let c = k2_core(&h, 2);
        assert_eq!(c.vertices, vec![0, 1, 2]);
        assert_eq!(c.edges, vec![0, 1, 2]);
        assert_eq!(c.hypergraph.pins(1), &[1, 2]);
    }

    #[test]
    fn benchmark_core_first_hit() {
        // two triangles joined by a bridge: lambda 1 < delta 2 already at k = 2
        let h = Hypergraph::from_unit_edges(6, [[0u32, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5], [2, 3]]).unwrap();
        let b = find_benchmark_core(&h).unwrap().unwrap();
        assert_eq!(b.k, 2);
        assert_eq!(b.lambda, 1);
        assert_eq!(b.min_weighted_degree, 2);
        assert!(b.lambda < b.min_weighted_degree);
    }
}
