use crate::dsu::DisjointSets;
use crate::hgraph::{compact, Hypergraph, Weight};

use super::PipelineState;

/// Removes hyperedges with fewer than two pins or zero weight (and merges
/// parallel hyperedges).
pub fn rule_singleton(state: &mut PipelineState) -> bool {
    if state.current.is_compact() {
        return false;
    }
    state.current = compact(&state.current);
    true
}

/// Contracts every hyperedge of weight at least `λ̂`, repeating while
/// merged parallel hyperedges produce new ones.
pub fn rule_heavy_edge(state: &mut PipelineState) -> bool {
    let mut changed = false;
    loop {
        let g = &state.current;
        let mut ds = DisjointSets::new(g.num_vertices());
        let mut any = false;
        for (pins, w) in g.edges() {
            if pins.len() >= 2 && w >= state.lambda_hat {
                for &p in &pins[1..] {
                    any |= ds.union(pins[0], p);
                }
            }
        }
        if !any {
            return changed;
        }
        changed |= state.contract_groups(ds);
    }
}

/// Contracts vertex pairs whose shared hyperedges weigh at least `λ̂`.
pub fn rule_heavy_overlap(state: &mut PipelineState) -> bool {
    let g = &state.current;
    let n = g.num_vertices();
    let mut ds = DisjointSets::new(n);
    let mut any = false;
    let mut shared = vec![0 as Weight; n];
    let mut seen = Vec::new();
    for u in 0..n {
        if g.weighted_degree(u) < state.lambda_hat {
            continue;
        }
        for &e in g.incident_edges(u) {
            let e = e as usize;
            if g.edge_size(e) < 2 {
                continue;
            }
            let w = g.edge_weight(e);
            for &v in g.pins(e).iter().filter(|&&v| v as usize > u) {
                if shared[v as usize] == 0 {
                    seen.push(v);
                }
                shared[v as usize] += w;
            }
        }
        for v in seen.drain(..) {
            if shared[v as usize] >= state.lambda_hat && shared[v as usize] > 0 {
                any |= ds.union(u as u32, v);
            }
            shared[v as usize] = 0;
        }
    }
    any && state.contract_groups(ds)
}

/// Size-2 neighbourhoods with parallel weights summed; sorted by neighbour.
fn pair_adjacency(g: &Hypergraph) -> Vec<Vec<(u32, Weight)>> {
    let mut adj: Vec<Vec<(u32, Weight)>> = vec![Vec::new(); g.num_vertices()];
    for (pins, w) in g.edges() {
        if let [u, v] = *pins {
            adj[u as usize].push((v, w));
            adj[v as usize].push((u, w));
        }
    }
    for list in &mut adj {
        list.sort_unstable_by_key(|&(v, _)| v);
        list.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
    }
    adj
}

/// Trivial-cut weights: hyperedges with fewer than two pins excluded.
fn cut_degrees(g: &Hypergraph) -> Vec<Weight> {
    if g.is_compact() {
        return g.weighted_degrees().to_vec();
    }
    let mut deg = vec![0 as Weight; g.num_vertices()];
    for (pins, w) in g.edges().filter(|(pins, _)| pins.len() >= 2) {
        for &p in pins {
            deg[p as usize] += w;
        }
    }
    deg
}

/// Scans each size-2 pair `u < v` once, in order, skipping marked vertices
/// when `marking` is set; `test` decides whether to contract.
fn scan_pairs(
    state: &mut PipelineState,
    marking: bool,
    mut test: impl FnMut(u32, u32, Weight, &[Vec<(u32, Weight)>], &[Weight]) -> bool,
) -> bool {
    let g = &state.current;
    let adj = pair_adjacency(g);
    let deg = cut_degrees(g);
    let mut marked = vec![false; g.num_vertices()];
    let mut ds = DisjointSets::new(g.num_vertices());
    let mut any = false;
    for u in 0..g.num_vertices() as u32 {
        for &(v, w) in &adj[u as usize] {
            if v < u || (marking && (marked[u as usize] || marked[v as usize])) {
                continue;
            }
            if test(u, v, w, &adj, &deg) {
                any |= ds.union(u, v);
                if marking {
                    marked[u as usize] = true;
                    marked[v as usize] = true;
                }
            }
        }
    }
    any && state.contract_groups(ds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexTest {
    /// `d_ω(u) < 2ω(uv)`, one contraction per vertex per round.
    Strict,
    /// `d_ω(u) ≤ 2ω(uv)` with every qualifying pair contracted at once.
    /// Not exact; kept to demonstrate why the strict form is needed.
    NonStrictUnmarked,
}

/// Contracts `{u, v}` when `d_ω(u) < 2ω(uv)` or `d_ω(v) < 2ω(uv)`.
pub fn rule_imbalanced_vertex(state: &mut PipelineState) -> bool {
    rule_imbalanced_vertex_with(state, VertexTest::Strict)
}

pub fn rule_imbalanced_vertex_with(state: &mut PipelineState, test: VertexTest) -> bool {
    let strict = test == VertexTest::Strict;
    scan_pairs(state, strict, |u, v, w, _, deg| {
        let (du, dv) = (deg[u as usize], deg[v as usize]);
        if strict {
            du < 2 * w || dv < 2 * w
        } else {
            du <= 2 * w || dv <= 2 * w
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleTest {
    /// Both endpoint inequalities must hold for the same third vertex.
    Both,
    /// Either inequality suffices. Not exact.
    Either,
}

/// Contracts `{u, v}` when some `w` forms a size-2 triangle with
/// `d_ω(u) ≤ 2(ω(uv) + ω(uw))` and `d_ω(v) ≤ 2(ω(uv) + ω(vw))`.
pub fn rule_imbalanced_triangle(state: &mut PipelineState) -> bool {
    rule_imbalanced_triangle_with(state, TriangleTest::Both)
}

pub fn rule_imbalanced_triangle_with(state: &mut PipelineState, test: TriangleTest) -> bool {
    scan_pairs(state, true, |u, v, w_uv, adj, deg| {
        let (du, dv) = (deg[u as usize], deg[v as usize]);
        common_neighbors(&adj[u as usize], &adj[v as usize]).any(|(_, w_uw, w_vw)| {
            let a = du <= 2 * (w_uv + w_uw);
            let b = dv <= 2 * (w_uv + w_vw);
            match test {
                TriangleTest::Both => a && b,
                TriangleTest::Either => a || b,
            }
        })
    })
}

/// Contracts `{u, v}` when `ω(uv) + Σ_w min(ω(uw), ω(vw)) ≥ λ̂` over common
/// size-2 neighbours `w`.
pub fn rule_heavy_neighborhood(state: &mut PipelineState) -> bool {
    let lambda_hat = state.lambda_hat;
    scan_pairs(state, true, |u, v, w_uv, adj, _| {
        let s: Weight = common_neighbors(&adj[u as usize], &adj[v as usize])
            .map(|(_, a, b)| a.min(b))
            .sum();
        w_uv + s >= lambda_hat
    })
}

/// Merge-join of two neighbour lists sorted by id.
fn common_neighbors<'a>(
    a: &'a [(u32, Weight)],
    b: &'a [(u32, Weight)],
) -> impl Iterator<Item = (u32, Weight, Weight)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let item = (a[i].0, a[i].1, b[j].1);
                    i += 1;
                    j += 1;
                    return Some(item);
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_mincut;
    use crate::testutil::wh;

    fn state(h: &Hypergraph) -> PipelineState {
        PipelineState::new(h, 1)
    }

    fn exact_after(h: &Hypergraph, s: &PipelineState) -> bool {
        let before = brute_mincut(h).unwrap().value;
        let after = match s.current.num_vertices() {
            0 | 1 => Weight::MAX,
            _ => brute_mincut(&s.current).unwrap().value,
        };
        before == s.lambda_hat.min(after)
    }

    #[test]
    fn singleton_examples() {
        let mut s = state(&wh(2, &[(&[0], 9), (&[0, 1], 1)]));
        assert!(rule_singleton(&mut s));
        assert_eq!(s.current, wh(2, &[(&[0, 1], 1)]));
        let mut s = state(&wh(2, &[(&[0, 1], 0), (&[0, 1], 2)]));
        assert!(rule_singleton(&mut s));
        assert_eq!(s.current, wh(2, &[(&[0, 1], 2)]));
        assert!(!rule_singleton(&mut s));
    }

    #[test]
    fn heavy_edge_examples() {
        let h = wh(3, &[(&[0, 1], 3), (&[1, 2], 1), (&[0, 2], 1)]);
        let mut s = state(&h);
        assert_eq!(s.lambda_hat, 2);
        assert!(rule_heavy_edge(&mut s));
        // {0,1} first, then the merged edge of weight 2 is heavy too
        assert_eq!(s.current.num_vertices(), 1);
        assert_eq!(s.lambda_hat, 2);
        assert!(exact_after(&h, &s));

        let mut s = state(&wh(3, &[(&[0, 1, 2], 5)]));
        assert!(rule_heavy_edge(&mut s));
        assert_eq!(s.current.num_vertices(), 1);
        assert_eq!(s.lambda_hat, 5);

        let mut s = state(&wh(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]));
        assert!(!rule_heavy_edge(&mut s));
    }

    #[test]
    fn heavy_edge_rescans_after_merges() {
        // the first pass leaves two vertices joined by the merged weight 7
        let h = wh(
            4,
            &[(&[0, 1], 5), (&[0, 2], 2), (&[1, 2], 2), (&[2, 3], 5), (&[0, 3], 3)],
        );
        let mut s = state(&h);
        s.lambda_hat = 4;
        assert!(rule_heavy_edge(&mut s));
        assert_eq!(s.current.num_vertices(), 1);
    }

    #[test]
    fn heavy_overlap_examples() {
        let h = wh(4, &[(&[0, 1, 2], 1), (&[0, 1, 3], 1), (&[2, 3], 1)]);
        let mut s = state(&h);
        assert_eq!(s.lambda_hat, 2);
        assert!(rule_heavy_overlap(&mut s));
        assert_eq!(s.current.num_vertices(), 3);
        assert_eq!(s.log.find(0), s.log.find(1));
        assert!(exact_after(&h, &s));

        let mut s = state(&wh(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]));
        assert!(!rule_heavy_overlap(&mut s));
    }

    #[test]
    fn parallel_edges_merge_before_overlap() {
        let h = wh(3, &[(&[0, 1], 1), (&[0, 1], 1), (&[1, 2], 3), (&[0, 2], 3)]);
        let mut s = state(&h);
        assert!(rule_singleton(&mut s));
        assert!(s.current.num_edges() == 3);
        s.lambda_hat = 2;
        assert!(rule_heavy_edge(&mut s));
        assert!(!rule_heavy_overlap(&mut s));
    }

    #[test]
    fn imbalanced_vertex_examples() {
        let h = wh(3, &[(&[0, 1], 3), (&[1, 2], 1)]);
        let mut s = state(&h);
        assert!(rule_imbalanced_vertex(&mut s));
        assert_eq!(s.log.find(0), s.log.find(1));
        assert!(exact_after(&h, &s));

        // d(0) = 4 = 2 * 2: equality does not contract
        let mut s = state(&wh(3, &[(&[0, 1], 2), (&[0, 2], 2), (&[1, 2], 5)]));
        let d = s.current.weighted_degrees().to_vec();
        assert_eq!(d[0], 4);
        let changed = rule_imbalanced_vertex(&mut s);
        // only {1,2} qualifies (d(1) = 7 < 10)
        assert!(changed);
        assert_ne!(s.log.find(0), s.log.find(1));

        let mut s = state(&wh(3, &[(&[0, 1, 2], 5)]));
        assert!(!rule_imbalanced_vertex(&mut s));
    }

    #[test]
    fn imbalanced_triangle_examples() {
        let h = wh(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]);
        let mut s = state(&h);
        assert!(rule_imbalanced_triangle(&mut s));
        assert_eq!(s.current.edges().collect::<Vec<_>>(), vec![(&[0u32, 1][..], 2)]);
        assert_eq!(s.lambda_hat, 2);

        let mut s = state(&wh(4, &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1)]));
        assert!(!rule_imbalanced_triangle(&mut s));
    }

    #[test]
    fn marking_blocks_second_triangle() {
        // two unit triangles sharing vertex 0
        let h = wh(
            5,
            &[
                (&[0, 1], 1),
                (&[0, 2], 1),
                (&[1, 2], 1),
                (&[0, 3], 1),
                (&[0, 4], 1),
                (&[3, 4], 1),
            ],
        );
        let mut s = state(&h);
        assert!(rule_imbalanced_triangle(&mut s));
        // {0,1} contracts; {0,3} and {0,4} are skipped, {3,4} may go
        assert_eq!(s.log.find(0), s.log.find(1));
        assert_ne!(s.log.find(0), s.log.find(3));
        assert_ne!(s.log.find(0), s.log.find(4));
    }

    #[test]
    fn either_triangle_test_is_not_exact() {
        // u=0, v=1, w=2; v is tied to the heavy clique {3,4,5}
        let h = wh(
            6,
            &[
                (&[0, 1], 1),
                (&[0, 2], 5),
                (&[1, 2], 1),
                (&[1, 3], 9),
                (&[3, 4], 9),
                (&[4, 5], 9),
                (&[3, 5], 9),
            ],
        );
        assert_eq!(brute_mincut(&h).unwrap().value, 2);
        let mut s = state(&h);
        assert!(!rule_imbalanced_triangle(&mut s) || exact_after(&h, &s));
        let mut s = state(&h);
        assert!(rule_imbalanced_triangle_with(&mut s, TriangleTest::Either));
        assert!(!exact_after(&h, &s));
    }

    #[test]
    fn heavy_neighborhood_examples() {
        let h = wh(
            4,
            &[(&[0, 1], 1), (&[0, 2], 1), (&[1, 2], 1), (&[2, 3], 1), (&[0, 3], 1)],
        );
        let mut s = state(&h);
        assert_eq!(s.lambda_hat, 2);
        assert!(rule_heavy_neighborhood(&mut s));
        assert_eq!(s.log.find(0), s.log.find(1));
        assert!(exact_after(&h, &s));

        let mut s = state(&wh(4, &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 3], 1), (&[0, 3], 1)]));
        assert!(!rule_heavy_neighborhood(&mut s));
    }
}
