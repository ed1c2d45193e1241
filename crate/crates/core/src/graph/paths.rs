use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// A path `v_0 v_1 ... v_s` whose interior vertices all have degree 2.
///
/// `v_0 == v_s` is allowed: a cycle hanging off a single vertex of degree
/// at least 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalPath {
    vertices: Vec<usize>,
}

impl InternalPath {
    /// Validates `vertices` as an internal path of `g` (length at least 1).
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.len() < 2 {
            return Err(GraphError::Argument("an internal path needs at least one edge".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(GraphError::Argument(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        let s = vertices.len() - 1;
        for &v in &vertices[1..s] {
            if g.degree(v) != 2 {
                return Err(GraphError::Argument(format!(
                    "interior vertex {v} has degree {}",
                    g.degree(v)
                )));
            }
        }
        let mut interior: Vec<usize> = vertices[1..s].to_vec();
        interior.sort_unstable();
        if interior.windows(2).any(|w| w[0] == w[1])
            || interior.binary_search(&vertices[0]).is_ok()
            || interior.binary_search(&vertices[s]).is_ok()
        {
            return Err(GraphError::Argument("path repeats a vertex".into()));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Path length `s` (number of edges).
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        self.vertices[self.len()]
    }

    /// Both ends are the same vertex.
    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.len()]
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }
}

/// Result of [`internal_paths`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalPaths {
    /// Maximal internal paths containing at least one degree-2 vertex.
    pub paths: Vec<InternalPath>,
    /// Components that are cycles made only of degree-2 vertices. These
    /// have no endpoints and are reported separately.
    pub cycles: Vec<Vec<usize>>,
}

/// All maximal internal paths of `g`.
///
/// Every degree-2 vertex lies in exactly one returned path or degenerate
/// cycle. Paths start at their lower-id endpoint (for closed paths, at the
/// hub, walking towards the smaller neighbor first).
pub fn internal_paths(g: &Graph) -> InternalPaths {
    let n = g.n();
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    for u in 0..n {
        if g.degree(u) == 2 {
            continue;
        }
        for &first in g.neighbors(u) {
            if g.degree(first) != 2 || used[first] {
                continue;
            }
            let mut verts = vec![u, first];
            used[first] = true;
            let (mut prev, mut cur) = (u, first);
            while g.degree(cur) == 2 {
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                verts.push(next);
                if g.degree(next) == 2 {
                    used[next] = true;
                }
                prev = cur;
                cur = next;
            }
            if verts[verts.len() - 1] < verts[0] {
                verts.reverse();
            }
            paths.push(InternalPath { vertices: verts });
        }
    }
    paths.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    let mut cycles = Vec::new();
    for s in 0..n {
        if g.degree(s) != 2 || used[s] {
            continue;
        }
        let mut cyc = vec![s];
        used[s] = true;
        let (mut prev, mut cur) = (s, g.neighbors(s)[0]);
        while cur != s {
            used[cur] = true;
            cyc.push(cur);
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        cycles.push(cyc);
    }
    InternalPaths { paths, cycles }
}

/// `Q = {v : deg(v) >= 3}`, ascending.
pub fn high_degree_set(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.degree(v) >= 3).collect()
}
