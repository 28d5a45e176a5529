//! Hypergraph data model.
//!
//! A [`Hypergraph`] is immutable once built. Pins are stored in a flat CSR
//! layout together with a derived vertex-to-edge incidence index and the
//! weighted degrees. Every structural change (contraction, compaction)
//! produces a fresh hypergraph; see [`contract`].

pub mod contract;
pub mod cut;
pub mod io;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use contract::{compact, contract_set, ContractionLog};
pub use cut::{CutResult, Provenance};

/// Hyperedge and vertex weights. Integer valued so that cut sums are exact.
pub type Weight = u64;

/// Upper bound on the total hyperedge weight (and on the total vertex
/// weight) of a hypergraph. Keeps every cut value exactly representable as
/// an `f64`, which the BIP solver and JSON output rely on.
pub const MAX_TOTAL_WEIGHT: Weight = 1 << 53;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    edge_offsets: Vec<usize>,
    pins: Vec<u32>,
    edge_weights: Vec<Weight>,
    vertex_weights: Vec<Weight>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<u32>,
    weighted_degrees: Vec<Weight>,
    compact: bool,
}

impl Hypergraph {
    /// Builds a hypergraph with `vertex_weights.len()` vertices. Pins of each
    /// hyperedge are sorted and deduplicated; no edge is dropped.
    pub fn build<P: AsRef<[u32]>>(
        pins_lists: &[P],
        edge_weights: &[Weight],
        vertex_weights: &[Weight],
    ) -> Result<Self> {
        if pins_lists.len() != edge_weights.len() {
            return Err(Error::LengthMismatch {
                what: "edge weights",
                expected: pins_lists.len(),
                got: edge_weights.len(),
            });
        }
        let n = vertex_weights.len();
        check_total(edge_weights.iter().copied())?;
        check_total(vertex_weights.iter().copied())?;

        let mut edge_offsets = Vec::with_capacity(pins_lists.len() + 1);
        let mut pins = Vec::new();
        edge_offsets.push(0);
        for (e, list) in pins_lists.iter().enumerate() {
            let start = pins.len();
            for &pin in list.as_ref() {
                if pin as usize >= n {
                    return Err(Error::PinOutOfRange {
                        edge: e,
                        pin: pin as usize,
                        num_vertices: n,
                    });
                }
                pins.push(pin);
            }
            let slice = &mut pins[start..];
            slice.sort_unstable();
            let mut kept = 0;
            for i in 0..slice.len() {
                if i == 0 || slice[i] != slice[kept - 1] {
                    slice[kept] = slice[i];
                    kept += 1;
                }
            }
            pins.truncate(start + kept);
            edge_offsets.push(pins.len());
        }
        Ok(Self::from_sorted_parts(
            n,
            edge_offsets,
            pins,
            edge_weights.to_vec(),
            vertex_weights.to_vec(),
            false,
        ))
    }

    /// Convenience constructor with unit vertex weights.
    pub fn from_weighted_edges<I, P>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, Weight)>,
        P: AsRef<[u32]>,
    {
        let (lists, weights): (Vec<Vec<u32>>, Vec<Weight>) =
            edges.into_iter().map(|(p, w)| (p.as_ref().to_vec(), w)).unzip();
        Self::build(&lists, &weights, &vec![1; num_vertices])
    }

    /// Unit edge and vertex weights.
    pub fn from_unit_edges<I, P>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u32]>,
    {
        Self::from_weighted_edges(num_vertices, edges.into_iter().map(|p| (p, 1)))
    }

    /// Assembles a hypergraph from already-sorted, duplicate-free pin lists.
    /// `known_compact` skips the compactness scan when the caller has just
    /// compacted.
    pub(crate) fn from_sorted_parts(
        num_vertices: usize,
        edge_offsets: Vec<usize>,
        pins: Vec<u32>,
        edge_weights: Vec<Weight>,
        vertex_weights: Vec<Weight>,
        known_compact: bool,
    ) -> Self {
        debug_assert_eq!(edge_offsets.len(), edge_weights.len() + 1);
        debug_assert_eq!(vertex_weights.len(), num_vertices);

        let mut counts = vec![0usize; num_vertices + 1];
        for &p in &pins {
            counts[p as usize + 1] += 1;
        }
        for v in 0..num_vertices {
            counts[v + 1] += counts[v];
        }
        let incidence_offsets = counts.clone();
        let mut cursor = counts;
        let mut incidence = vec![0u32; pins.len()];
        let mut weighted_degrees = vec![0; num_vertices];
        for e in 0..edge_weights.len() {
            for &p in &pins[edge_offsets[e]..edge_offsets[e + 1]] {
                incidence[cursor[p as usize]] = e as u32;
                cursor[p as usize] += 1;
                weighted_degrees[p as usize] += edge_weights[e];
            }
        }
        let mut h = Self {
            num_vertices,
            edge_offsets,
            pins,
            edge_weights,
            vertex_weights,
            incidence_offsets,
            incidence,
            weighted_degrees,
            compact: known_compact,
        };
        if !known_compact {
            h.compact = h.scan_compact();
        }
        h
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_weights.len()
    }

    /// Total pin count `p`.
    pub fn num_pins(&self) -> usize {
        self.pins.len()
    }

    pub fn pins(&self, e: usize) -> &[u32] {
        &self.pins[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    pub fn edge_size(&self, e: usize) -> usize {
        self.edge_offsets[e + 1] - self.edge_offsets[e]
    }

    pub fn edge_weight(&self, e: usize) -> Weight {
        self.edge_weights[e]
    }

    pub fn edge_weights(&self) -> &[Weight] {
        &self.edge_weights
    }

    pub fn vertex_weight(&self, v: usize) -> Weight {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[Weight] {
        &self.vertex_weights
    }

    /// `I(v)`, in increasing edge id order.
    pub fn incident_edges(&self, v: usize) -> &[u32] {
        &self.incidence[self.incidence_offsets[v]..self.incidence_offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence_offsets[v + 1] - self.incidence_offsets[v]
    }

    pub fn weighted_degree(&self, v: usize) -> Weight {
        self.weighted_degrees[v]
    }

    pub fn weighted_degrees(&self) -> &[Weight] {
        &self.weighted_degrees
    }

    /// Vertex of minimum weighted degree (smallest id on ties) and its
    /// degree `δ_ω`.
    pub fn min_weighted_degree(&self) -> Option<(usize, Weight)> {
        self.weighted_degrees
            .iter()
            .copied()
            .enumerate()
            .min_by_key(|&(v, d)| (d, v))
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.num_vertices).map(|v| self.degree(v)).min()
    }

    /// `Δ`; only used in reporting.
    pub fn max_degree(&self) -> Option<usize> {
        (0..self.num_vertices).map(|v| self.degree(v)).max()
    }

    pub fn total_edge_weight(&self) -> Weight {
        self.edge_weights.iter().sum()
    }

    /// All hyperedge weights equal one.
    pub fn is_unit_weighted(&self) -> bool {
        self.edge_weights.iter().all(|&w| w == 1)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[u32], Weight)> + '_ {
        (0..self.num_edges()).map(move |e| (self.pins(e), self.edge_weights[e]))
    }

    /// Copy of this hypergraph with new weights and identical topology.
    pub fn with_weights(&self, edge_weights: Vec<Weight>, vertex_weights: Vec<Weight>) -> Result<Self> {
        if edge_weights.len() != self.num_edges() {
            return Err(Error::LengthMismatch {
                what: "edge weights",
                expected: self.num_edges(),
                got: edge_weights.len(),
            });
        }
        if vertex_weights.len() != self.num_vertices {
            return Err(Error::LengthMismatch {
                what: "vertex weights",
                expected: self.num_vertices,
                got: vertex_weights.len(),
            });
        }
        check_total(edge_weights.iter().copied())?;
        check_total(vertex_weights.iter().copied())?;
        Ok(Self::from_sorted_parts(
            self.num_vertices,
            self.edge_offsets.clone(),
            self.pins.clone(),
            edge_weights,
            vertex_weights,
            false,
        ))
    }

    /// Relabels vertices through `mapping` (old id -> new id in
    /// `0..new_count`) and compacts the result. Vertex weights are summed.
    pub fn contract(&self, mapping: &[u32], new_count: usize) -> Self {
        assert_eq!(mapping.len(), self.num_vertices);
        let mut vertex_weights = vec![0; new_count];
        for (v, &g) in mapping.iter().enumerate() {
            vertex_weights[g as usize] += self.vertex_weights[v];
        }

        let mut offsets = Vec::with_capacity(self.num_edges() + 1);
        let mut pins = Vec::with_capacity(self.pins.len());
        let mut weights = Vec::with_capacity(self.num_edges());
        offsets.push(0);
        for e in 0..self.num_edges() {
            let w = self.edge_weights[e];
            if w == 0 || self.edge_size(e) < 2 {
                continue;
            }
            let start = pins.len();
            pins.extend(self.pins(e).iter().map(|&p| mapping[p as usize]));
            let slice = &mut pins[start..];
            slice.sort_unstable();
            let mut kept = 0;
            for i in 0..slice.len() {
                if i == 0 || slice[i] != slice[kept - 1] {
                    slice[kept] = slice[i];
                    kept += 1;
                }
            }
            if kept < 2 {
                pins.truncate(start);
                continue;
            }
            pins.truncate(start + kept);
            offsets.push(pins.len());
            weights.push(w);
        }
        let (offsets, pins, weights) = merge_parallel(offsets, pins, weights);
        Self::from_sorted_parts(new_count, offsets, pins, weights, vertex_weights, true)
    }

    /// No edge of size below two, no zero weight, no two edges with
    /// identical pins.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    fn scan_compact(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.num_edges()).all(|e| self.edge_size(e) >= 2 && self.edge_weights[e] > 0 && seen.insert(self.pins(e)))
    }
}

fn check_total(weights: impl Iterator<Item = Weight>) -> Result<()> {
    let mut total: Weight = 0;
    for w in weights {
        total = total.saturating_add(w);
        if total > MAX_TOTAL_WEIGHT {
            return Err(Error::WeightOverflow { max: MAX_TOTAL_WEIGHT });
        }
    }
    Ok(())
}

/// Merges edges with identical pin sets, keeping the position of the first
/// occurrence and summing weights.
fn merge_parallel(offsets: Vec<usize>, pins: Vec<u32>, weights: Vec<Weight>) -> (Vec<usize>, Vec<u32>, Vec<Weight>) {
    use std::hash::{DefaultHasher, Hash, Hasher};

    let m = weights.len();
    let slice = |e: u32| &pins[offsets[e as usize]..offsets[e as usize + 1]];
    // sort by fingerprint, then compare pins only within equal fingerprints
    let mut keyed: Vec<(u64, u32)> = (0..m as u32)
        .map(|e| {
            let mut hasher = DefaultHasher::new();
            slice(e).hash(&mut hasher);
            (hasher.finish(), e)
        })
        .collect();
    keyed.sort_unstable();
    let mut rep: Vec<u32> = (0..m as u32).collect();
    let mut merged = false;
    for run in keyed.chunk_by(|a, b| a.0 == b.0).filter(|run| run.len() > 1) {
        for (i, &(_, e)) in run.iter().enumerate() {
            if rep[e as usize] != e {
                continue;
            }
            for &(_, f) in &run[i + 1..] {
                if rep[f as usize] == f && slice(e) == slice(f) {
                    rep[f as usize] = e;
                    merged = true;
                }
            }
        }
    }
    if !merged {
        return (offsets, pins, weights);
    }

    let mut merged_weights = weights.clone();
    for e in 0..m {
        let r = rep[e] as usize;
        if r != e {
            merged_weights[r] += weights[e];
        }
    }
    let mut new_offsets = Vec::with_capacity(m + 1);
    let mut new_pins = Vec::with_capacity(pins.len());
    let mut new_weights = Vec::with_capacity(m);
    new_offsets.push(0);
    for e in (0..m as u32).filter(|&e| rep[e as usize] == e) {
        new_pins.extend_from_slice(slice(e));
        new_offsets.push(new_pins.len());
        new_weights.push(merged_weights[e as usize]);
    }
    (new_offsets, new_pins, new_weights)
}

/// Connected-component labels (dense, numbered by smallest vertex) and the
/// component count.
pub fn connected_components(h: &Hypergraph) -> (Vec<u32>, usize) {
    let n = h.num_vertices();
    let mut label = vec![u32::MAX; n];
    let mut edge_seen = vec![false; h.num_edges()];
    let mut queue = VecDeque::new();
    let mut count = 0u32;
    for s in 0..n {
        if label[s] != u32::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &e in h.incident_edges(v) {
                if std::mem::replace(&mut edge_seen[e as usize], true) {
                    continue;
                }
                for &u in h.pins(e as usize) {
                    if label[u as usize] == u32::MAX {
                        label[u as usize] = count;
                        queue.push_back(u as usize);
                    }
                }
            }
        }
        count += 1;
    }
    (label, count as usize)
}

pub fn is_connected(h: &Hypergraph) -> bool {
    connected_components(h).1 <= 1
}

/// Total weight of hyperedges with pins on both sides of `side`.
pub fn cut_value(h: &Hypergraph, side: &[bool]) -> Result<Weight> {
    if side.len() != h.num_vertices() {
        return Err(Error::LengthMismatch {
            what: "partition entries",
            expected: h.num_vertices(),
            got: side.len(),
        });
    }
    let in_a = side.iter().filter(|&&s| s).count();
    if in_a == 0 || in_a == side.len() {
        return Err(Error::OneSidedPartition);
    }
    Ok(h.edges()
        .filter(|(pins, _)| {
            let first = side[pins[0] as usize];
            pins.iter().any(|&p| side[p as usize] != first)
        })
        .map(|(_, w)| w)
        .sum())
}
