mod common;

use proptest::prelude::*;
use subspec::graph::{build_h, internal_paths, subdivide, FamilyKind, SubdivisionFamily};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_cardinalities((g, s) in common::graph_with_subset(2, 9), t in 1usize..7) {
        let gt = subdivide(&g, &s, t).unwrap();
        let ht = build_h(&g, &s, t).unwrap();
        prop_assert_eq!(gt.n(), g.n() + (t - 1) * s.len());
        prop_assert_eq!(ht.n(), g.n() + 2 * t * s.len());
        let fam = SubdivisionFamily::new(g.clone(), s.clone(), FamilyKind::H).unwrap();
        prop_assert_eq!(fam.order(t), ht.n());
    }

    #[test]
    fn degrees_preserved((g, s) in common::graph_with_subset(2, 9), t in 1usize..6) {
        let gt = subdivide(&g, &s, t).unwrap();
        for v in 0..g.n() {
            prop_assert_eq!(gt.degree(v), g.degree(v));
        }
        for v in g.n()..gt.n() {
            prop_assert_eq!(gt.degree(v), 2);
        }
        prop_assert_eq!(gt.edge_count(), g.edge_count() + (t - 1) * s.len());
    }

    #[test]
    fn labeling_is_deterministic((g, s) in common::graph_with_subset(2, 9), t in 1usize..6) {
        let a = subdivide(&g, &s, t).unwrap().to_edge_list();
        let b = subdivide(&g, &s, t).unwrap().to_edge_list();
        prop_assert_eq!(a, b);
        let a = build_h(&g, &s, t).unwrap().to_edge_list();
        let b = build_h(&g, &s, t).unwrap().to_edge_list();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn h_is_induced_prefix((g, s) in common::graph_with_subset(2, 8), t in 1usize..6) {
        let h = build_h(&g, &s, t).unwrap();
        let next = build_h(&g, &s, t + 1).unwrap();
        let sorted = |g: &subspec::graph::Graph| {
            let mut e = g.edges().to_vec();
            e.sort_unstable();
            e
        };
        prop_assert_eq!(sorted(&next.induced_prefix(h.n())), sorted(&h));
    }

    #[test]
    fn internal_paths_partition_degree_two(g in common::graph(1, 12), extra in 0usize..4) {
        let g = if g.edge_count() > 0 && extra > 0 {
            subdivide(&g, &subspec::graph::EdgeSubset::all(&g), extra + 1).unwrap()
        } else {
            g
        };
        let ip = internal_paths(&g);
        let mut seen = vec![0usize; g.n()];
        for p in &ip.paths {
            for &v in p.interior() {
                seen[v] += 1;
            }
            for w in p.vertices().windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
        }
        for c in &ip.cycles {
            for &v in c {
                seen[v] += 1;
            }
        }
        for (v, &c) in seen.iter().enumerate() {
            prop_assert_eq!(c, usize::from(g.degree(v) == 2), "vertex {}", v);
        }
    }
}
