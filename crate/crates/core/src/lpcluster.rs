//! Label propagation with absorption scores: vertex `v` moves to the label
//! `l` maximising `Σ_{e ∈ I(v)} |e ∩ C_l| · ω(e) / (|e| − 1)`, with `v`
//! itself not counted. Contracting the resulting clusters is a heuristic
//! reduction: it can only lose cuts, never create smaller ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hgraph::{ContractionLog, Hypergraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    pub labels: Vec<u32>,
    pub iterations: usize,
    pub seed: Option<u64>,
}

impl Clustering {
    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n as u32).collect(),
            iterations: 0,
            seed: None,
        }
    }

    pub fn num_clusters(&self) -> usize {
        let mut seen = vec![false; self.labels.len()];
        self.labels
            .iter()
            .filter(|&&l| !std::mem::replace(&mut seen[l as usize], true))
            .count()
    }
}

pub fn score(v: usize, label: u32, h: &Hypergraph, labels: &[u32]) -> f64 {
    h.incident_edges(v)
        .iter()
        .map(|&e| e as usize)
        .filter(|&e| h.edge_size(e) >= 2)
        .map(|e| {
            let members = h
                .pins(e)
                .iter()
                .filter(|&&u| u as usize != v && labels[u as usize] == label)
                .count();
            members as f64 * h.edge_weight(e) as f64 / (h.edge_size(e) - 1) as f64
        })
        .sum()
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// `iterations` passes over the vertices, each in a fresh random order.
pub fn propagate<R: Rng>(h: &Hypergraph, iterations: usize, rng: &mut R) -> Clustering {
    let n = h.num_vertices();
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut scores = vec![0f64; n];
    let mut candidates: Vec<u32> = Vec::new();
    let mut listed = vec![false; n];
    let mut order: Vec<u32> = (0..n as u32).collect();
    for _ in 0..iterations {
        order.shuffle(rng);
        for &v in &order {
            let v = v as usize;
            let own = labels[v];
            candidates.clear();
            candidates.push(own);
            listed[own as usize] = true;
            for &e in h.incident_edges(v) {
                let e = e as usize;
                if h.edge_size(e) < 2 {
                    continue;
                }
                let c = h.edge_weight(e) as f64 / (h.edge_size(e) - 1) as f64;
                for &u in h.pins(e) {
                    if u as usize == v {
                        continue;
                    }
                    let l = labels[u as usize];
                    if !std::mem::replace(&mut listed[l as usize], true) {
                        candidates.push(l);
                    }
                    scores[l as usize] += c;
                }
            }
            let best = candidates.iter().map(|&l| scores[l as usize]).fold(f64::MIN, f64::max);
            candidates.retain(|&l| {
                let keep = nearly_equal(scores[l as usize], best);
                scores[l as usize] = 0.0;
                listed[l as usize] = false;
                keep
            });
            labels[v] = candidates[rng.random_range(0..candidates.len())];
        }
    }
    Clustering {
        labels,
        iterations,
        seed: None,
    }
}

pub fn propagate_once(h: &Hypergraph, seed: u64) -> Clustering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Clustering {
        seed: Some(seed),
        ..propagate(h, 1, &mut rng)
    }
}

/// Contracts every cluster. A clustering that would leave fewer than two
/// vertices is rejected and `h` returned unchanged.
pub fn contract_clusters(h: &Hypergraph, clustering: &Clustering, log: &mut ContractionLog) -> Hypergraph {
    let n = h.num_vertices();
    let mut dense = vec![u32::MAX; n];
    let mut count = 0u32;
    let mapping: Vec<u32> = clustering
        .labels
        .iter()
        .map(|&l| {
            if dense[l as usize] == u32::MAX {
                dense[l as usize] = count;
                count += 1;
            }
            dense[l as usize]
        })
        .collect();
    let count = count as usize;
    if count == n || count < 2 {
        return h.clone();
    }
    log.record(&mapping, count);
    h.contract(&mapping, count)
}
