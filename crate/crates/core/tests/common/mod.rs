#![allow(dead_code)]

use proptest::prelude::*;
use subspec::graph::{EdgeSubset, Graph};

/// Random simple graph on `min..=max` vertices.
pub fn graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.35), pairs),
            )
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).expect("simple")
        })
}

/// Random labelled tree on `min..=max` vertices (parent of `v` below `v`).
pub fn tree(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max)
        .prop_flat_map(|n| proptest::collection::vec(any::<prop::sample::Index>(), n - 1))
        .prop_map(|parents| {
            let n = parents.len() + 1;
            let edges = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1));
            Graph::new(n, edges).expect("tree")
        })
}

/// A graph with at least one edge together with a nonempty edge subset.
pub fn graph_with_subset(min: usize, max: usize) -> impl Strategy<Value = (Graph, EdgeSubset)> {
    graph(min, max)
        .prop_filter("needs an edge", |g| g.edge_count() > 0)
        .prop_flat_map(|g| {
            let m = g.edge_count();
            (
                Just(g),
                proptest::collection::vec(any::<bool>(), m),
                any::<prop::sample::Index>(),
            )
        })
        .prop_map(|(g, mask, fallback)| {
            let mut idx: Vec<usize> = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
            if idx.is_empty() {
                idx.push(fallback.index(g.edge_count()));
            }
            let s = EdgeSubset::new(&g, idx).expect("valid subset");
            (g, s)
        })
}

/// Eigenvalues strictly below `sigma - tol` and below `sigma + tol`.
pub fn window_counts(eigenvalues: &[f64], sigma: f64, tol: f64) -> (usize, usize) {
    (
        eigenvalues.iter().filter(|&&e| e < sigma - tol).count(),
        eigenvalues.iter().filter(|&&e| e < sigma + tol).count(),
    )
}
