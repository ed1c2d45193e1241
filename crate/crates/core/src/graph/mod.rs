//! Undirected simple graphs, edge subsets and the edge-list text format.
//!
//! Vertex ids are always `0..n`. Edges keep the order in which they were
//! supplied (normalized so that `u < v`), because edge subsets address edges
//! by their position in that order.

mod families;
mod paths;
mod subdivision;

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use families::{attach_path, complete, cycle, erdos_renyi, path, spider, square_with_pendant, star, theta};
pub use paths::{high_degree_set, internal_paths, InternalPath, InternalPaths};
pub use subdivision::{build_h, subdivide, FamilyKind, SubdivisionFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {index} out of range ({m} edges)")]
    EdgeIndexOutOfRange { index: usize, m: usize },
    #[error("edge index {0} listed twice in subset")]
    RepeatedEdgeIndex(usize),
    #[error("edge subset is bound to a different graph")]
    ForeignSubset,
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Fingerprint of a graph's vertex count and edge list.
///
/// FNV-1a over the little-endian encoding; stable across runs and builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphId(pub u64);

impl GraphId {
    fn of(n: usize, edges: &[(usize, usize)]) -> Self {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(n as u64);
        for &(u, v) in edges {
            feed(u as u64);
            feed(v as u64);
        }
        GraphId(h)
    }
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    id: GraphId,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    /// Each pair is stored as `(min, max)` in the given order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            adjacency[u].push(v);
            adjacency[v].push(u);
            list.push((u, v));
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let (x, y) = if u < w[0] { (u, w[0]) } else { (w[0], u) };
                return Err(GraphError::DuplicateEdge(x, y));
            }
        }
        let id = GraphId::of(n, &list);
        Ok(Self {
            n,
            edges: list,
            adjacency,
            id,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in the edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.iter().position(|&e| e == key)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by deleting vertex `v`; remaining vertices are
    /// relabeled in increasing order.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (relabel(a), relabel(b)));
        Graph::new(self.n - 1, edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Subgraph induced on the first `k` vertex ids.
    pub fn induced_prefix(&self, k: usize) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(_, b)| b < k);
        Graph::new(k, edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union of simple graphs is simple")
    }

    /// Parses the edge-list format: first non-comment line `n m`, then `m`
    /// lines `u v` with `0 <= u < v < n`. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut fields = Vec::new();
            let mut col = 0;
            for piece in content.split_whitespace() {
                let offset = content[col..].find(piece).unwrap_or(0) + col;
                fields.push((offset + 1, piece));
                col = offset + piece.len();
            }
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 2 {
                let column = fields.get(2).map_or(fields[0].0, |f| f.0);
                return Err(GraphError::Parse {
                    line,
                    column,
                    message: format!("expected two integers, found {} fields", fields.len()),
                });
            }
            let num = |(column, s): (usize, &str)| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line,
                    column,
                    message: format!("not a nonnegative integer: {s:?}"),
                })
            };
            let a = num(fields[0])?;
            let b = num(fields[1])?;
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= b || b >= n {
                        return Err(GraphError::Parse {
                            line,
                            column: if a >= b { fields[0].0 } else { fields[1].0 },
                            message: format!("edge {a} {b} violates 0 <= u < v < {n}"),
                        });
                    }
                    if !seen.insert((a, b)) {
                        return Err(GraphError::Parse {
                            line,
                            column: fields[0].0,
                            message: format!("duplicate edge {a} {b}"),
                        });
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 1,
            column: 1,
            message: "missing header line `n m`".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count().max(1),
                column: 1,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    /// Serializes to the edge-list format (no comments).
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(8 * (self.edges.len() + 1));
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// A subset `S` of a graph's edges, addressed by edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSubset {
    graph: GraphId,
    indices: Vec<usize>,
}

impl EdgeSubset {
    /// Validates indices against `g`. The stored order is ascending.
    pub fn new(g: &Graph, indices: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        let m = g.edge_count();
        if let Some(&bad) = idx.iter().find(|&&i| i >= m) {
            return Err(GraphError::EdgeIndexOutOfRange { index: bad, m });
        }
        idx.sort_unstable();
        if let Some(w) = idx.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::RepeatedEdgeIndex(w[0]));
        }
        Ok(Self {
            graph: g.id(),
            indices: idx,
        })
    }

    pub fn all(g: &Graph) -> Self {
        Self {
            graph: g.id(),
            indices: (0..g.edge_count()).collect(),
        }
    }

    /// Parses `all` or a comma/whitespace separated list of edge indices.
    pub fn parse(g: &Graph, spec: &str) -> Result<Self, GraphError> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("all") {
            return Ok(Self::all(g));
        }
        let mut idx = Vec::new();
        for (k, tok) in spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            if tok.starts_with('#') {
                break;
            }
            idx.push(tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: 1,
                column: k + 1,
                message: format!("bad edge index {tok:?}"),
            })?);
        }
        Self::new(g, idx)
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_all_of(&self, g: &Graph) -> bool {
        self.graph == g.id() && self.indices.len() == g.edge_count()
    }

    pub(crate) fn check_bound(&self, g: &Graph) -> Result<(), GraphError> {
        if self.graph != g.id() {
            return Err(GraphError::ForeignSubset);
        }
        Ok(())
    }
}
