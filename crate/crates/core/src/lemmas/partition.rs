use serde::{Deserialize, Serialize};

use super::LemmaError;
use crate::graph::Graph;

/// Layers `U_0, U_1, ..., U_d` of vertices by distance from a seed set.
///
/// Vertices unreachable from the seed belong to no layer; they are kept in
/// `unreachable` and still count toward the degree cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistancePartition {
    /// `layers[0]` is the seed set `U_0`.
    pub layers: Vec<Vec<usize>>,
    /// `{u in U_0 : N(u) meets U_1}`.
    pub boundary: Vec<usize>,
    /// Max degree over vertices outside `U_0`.
    pub degree_cap: usize,
    pub unreachable: Vec<usize>,
}

impl DistancePartition {
    /// Breadth-first layering from `seed`.
    pub fn new(g: &Graph, seed: &[usize]) -> Result<Self, LemmaError> {
        let n = g.n();
        if seed.is_empty() {
            return Err(LemmaError::Partition("seed set is empty".into()));
        }
        let mut dist = vec![usize::MAX; n];
        let mut u0 = Vec::new();
        for &v in seed {
            if v >= n {
                return Err(LemmaError::Partition(format!("seed vertex {v} out of range")));
            }
            if dist[v] == usize::MAX {
                dist[v] = 0;
                u0.push(v);
            }
        }
        u0.sort_unstable();
        let mut layers = vec![u0];
        loop {
            let mut next = Vec::new();
            for &u in layers.last().expect("nonempty") {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = layers.len();
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        Self::from_layers(g, layers)
    }

    /// Accepts explicit layers after checking them against `g`.
    pub fn from_layers(g: &Graph, layers: Vec<Vec<usize>>) -> Result<Self, LemmaError> {
        let n = g.n();
        let mut layer_of = vec![usize::MAX; n];
        for (i, layer) in layers.iter().enumerate() {
            for &v in layer {
                if v >= n || layer_of[v] != usize::MAX {
                    return Err(LemmaError::Partition(format!(
                        "vertex {v} is out of range or listed twice"
                    )));
                }
                layer_of[v] = i;
            }
        }
        if layers.first().is_none_or(|l| l.is_empty()) {
            return Err(LemmaError::Partition("U_0 is empty".into()));
        }
        for v in 0..n {
            let Some(i) = (layer_of[v] != usize::MAX).then_some(layer_of[v]) else {
                continue;
            };
            for &w in g.neighbors(v) {
                let j = layer_of[w];
                if j == usize::MAX || j.abs_diff(i) > 1 {
                    return Err(LemmaError::Partition(format!(
                        "edge {v}-{w} does not join equal or adjacent layers"
                    )));
                }
            }
            if i > 0 && !g.neighbors(v).iter().any(|&w| layer_of[w] == i - 1) {
                return Err(LemmaError::Partition(format!(
                    "vertex {v} in U_{i} has no neighbor in U_{}",
                    i - 1
                )));
            }
        }
        let unreachable: Vec<usize> = (0..n).filter(|&v| layer_of[v] == usize::MAX).collect();
        let boundary = layers[0]
            .iter()
            .copied()
            .filter(|&u| g.neighbors(u).iter().any(|&w| layer_of[w] == 1))
            .collect();
        let degree_cap = (0..n)
            .filter(|&v| layer_of[v] != 0)
            .map(|v| g.degree(v))
            .max()
            .unwrap_or(0);
        Ok(Self {
            layers,
            boundary,
            degree_cap,
            unreachable,
        })
    }

    /// `d`, the largest layer index.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }
}
