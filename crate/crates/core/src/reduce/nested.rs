use crate::dsu::DisjointSets;

use super::PipelineState;

/// Result of scanning one parent hyperedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstructureScan {
    pub parent: usize,
    /// Pins of the parent that may reach outside it without passing
    /// through a superset of the parent.
    pub tainted: Vec<u32>,
    /// Untainted pin sets joined by strict-subset hyperedges; each has at
    /// least two and fewer than `|parent|` pins.
    pub components: Vec<Vec<u32>>,
}

/// Per-parent scratch space, reused across parents.
struct Scratch {
    count: Vec<u32>,
    touched_edges: Vec<u32>,
    in_parent: Vec<bool>,
    tainted: Vec<bool>,
}

impl Scratch {
    fn new(n: usize, m: usize) -> Self {
        Self {
            count: vec![0; m],
            touched_edges: Vec::new(),
            in_parent: vec![false; n],
            tainted: vec![false; n],
        }
    }
}

fn scan_one(state: &PipelineState, e: usize, s: &mut Scratch) -> SubstructureScan {
    let g = &state.current;
    let pins = g.pins(e);
    for &x in pins {
        s.in_parent[x as usize] = true;
        for &f in g.incident_edges(x as usize) {
            if s.count[f as usize] == 0 {
                s.touched_edges.push(f);
            }
            s.count[f as usize] += 1;
        }
    }

    // Classify every other edge touching e by its overlap size.
    let mut subsets = Vec::new();
    for &f in &s.touched_edges {
        let f = f as usize;
        let overlap = s.count[f] as usize;
        if f == e || overlap == pins.len() {
            continue; // e itself or a superset of e
        }
        if overlap == g.edge_size(f) {
            subsets.push(f);
        } else {
            for &x in g.pins(f) {
                if s.in_parent[x as usize] {
                    s.tainted[x as usize] = true;
                }
            }
        }
    }

    // Pins are sorted, so a binary search gives local indices.
    let local = |x: u32| pins.binary_search(&x).expect("pin of parent") as u32;
    let mut ds = DisjointSets::new(pins.len());
    for &f in &subsets {
        let fp = g.pins(f);
        for &x in &fp[1..] {
            ds.union(local(fp[0]), local(x));
        }
    }
    // Taint spreads across whole components.
    let mut comp_tainted = vec![false; pins.len()];
    for (i, &x) in pins.iter().enumerate() {
        if s.tainted[x as usize] {
            comp_tainted[ds.find(i as u32) as usize] = true;
        }
    }
    let mut groups: Vec<Vec<u32>> = vec![Vec::new(); pins.len()];
    let mut tainted = Vec::new();
    for (i, &x) in pins.iter().enumerate() {
        let r = ds.find(i as u32) as usize;
        if comp_tainted[r] {
            tainted.push(x);
        } else {
            groups[r].push(x);
        }
    }
    let components = groups
        .into_iter()
        .filter(|c| c.len() >= 2 && c.len() < pins.len())
        .collect();

    for &x in pins {
        s.in_parent[x as usize] = false;
        s.tainted[x as usize] = false;
    }
    for f in s.touched_edges.drain(..) {
        s.count[f as usize] = 0;
    }
    SubstructureScan {
        parent: e,
        tainted,
        components,
    }
}

/// Scans every hyperedge of size at least 3 of the current hypergraph.
pub fn scan_substructures(state: &PipelineState) -> Vec<SubstructureScan> {
    let g = &state.current;
    let mut s = Scratch::new(g.num_vertices(), g.num_edges());
    (0..g.num_edges())
        .filter(|&e| g.edge_size(e) >= 3)
        .map(|e| scan_one(state, e, &mut s))
        .collect()
}

/// For each parent hyperedge `e`, contracts every untainted set of pins
/// joined by strict-subset hyperedges of `e`. A parent is skipped once any
/// of its pins took part in an earlier parent's contraction this round.
pub fn rule_nested_substructure(state: &mut PipelineState) -> bool {
    let g = &state.current;
    let mut s = Scratch::new(g.num_vertices(), g.num_edges());
    let mut used = vec![false; g.num_vertices()];
    let mut ds = DisjointSets::new(g.num_vertices());
    let mut any = false;
    for e in 0..g.num_edges() {
        let pins = g.pins(e);
        if pins.len() < 3 || pins.iter().any(|&x| used[x as usize]) {
            continue;
        }
        let scan = scan_one(state, e, &mut s);
        if scan.components.is_empty() {
            continue;
        }
        for c in &scan.components {
            for &x in &c[1..] {
                any |= ds.union(c[0], x);
            }
        }
        for &x in pins {
            used[x as usize] = true;
        }
    }
    any && state.contract_groups(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::Hypergraph;
    use crate::oracle::brute_mincut;
    use crate::testutil::wh;

    fn run(h: &Hypergraph) -> (PipelineState, bool) {
        let mut s = PipelineState::new(h, 1);
        let changed = rule_nested_substructure(&mut s);
        (s, changed)
    }

    #[test]
    fn nested_pair_contracts() {
        let h = wh(4, &[(&[0, 1, 2, 3], 1), (&[1, 2], 1)]);
        let s = PipelineState::new(&h, 1);
        let scans = scan_substructures(&s);
        assert_eq!(scans.len(), 1);
        assert_eq!(scans[0].components, vec![vec![1, 2]]);
        assert!(scans[0].tainted.is_empty());
        let (s, changed) = run(&h);
        assert!(changed);
        assert_eq!(s.current.num_vertices(), 3);
        assert_eq!(s.current.num_edges(), 1);
        assert_eq!(s.current.edge_size(0), 3);
        assert_eq!(brute_mincut(&s.current).unwrap().value, brute_mincut(&h).unwrap().value);
    }

    #[test]
    fn escape_edge_taints() {
        let h = wh(5, &[(&[0, 1, 2, 3], 1), (&[1, 2], 1), (&[2, 4], 1)]);
        let s = PipelineState::new(&h, 1);
        let scan = &scan_substructures(&s)[0];
        assert_eq!(scan.tainted, vec![1, 2]);
        assert!(scan.components.is_empty());
        assert!(!run(&h).1);
    }

    #[test]
    fn superset_does_not_taint() {
        let h = wh(5, &[(&[0, 1, 2, 3], 1), (&[0, 1, 2, 3, 4], 1), (&[1, 2], 1)]);
        let (s, changed) = run(&h);
        assert!(changed);
        assert_eq!(s.log.find(1), s.log.find(2));
        assert_eq!(s.current.num_vertices(), 4);
        assert_eq!(brute_mincut(&s.current).unwrap().value, brute_mincut(&h).unwrap().value);
    }

    #[test]
    fn whole_parent_is_not_contracted() {
        let h = wh(3, &[(&[0, 1, 2], 1), (&[0, 1], 1), (&[1, 2], 1)]);
        assert!(!run(&h).1);
    }
}
