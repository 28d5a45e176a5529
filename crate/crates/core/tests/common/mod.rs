#![allow(dead_code)]

use hypercut::synth::{random_hypergraph, GenSpec};
use hypercut::{Hypergraph, Weight};

/// Small seeded instances: n in 4..=10, m in 3..=16, sizes 2..=4.
pub fn instance(seed: u64, weights: (Weight, Weight), connected: bool) -> Hypergraph {
    let spec = GenSpec {
        vertices: (4, 10),
        edges: (3, 16),
        edge_size: (2, 4),
        edge_weight: weights,
        vertex_weight: (1, 1),
        connected,
        seed,
    };
    random_hypergraph(&spec).expect("feasible spec")
}

pub fn suite(count: u64, base: u64, weights: (Weight, Weight), connected: bool) -> Vec<Hypergraph> {
    (0..count).map(|i| instance(base + i, weights, connected)).collect()
}
