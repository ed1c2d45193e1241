//! The subdivision operators `G_t(S)` and `H_t(S)`.

use serde::{Deserialize, Serialize};

use super::{EdgeSubset, Graph, GraphError};

/// Replaces every edge of `s` by a path of length `t` (a `t`-stretch).
///
/// Original vertices keep their ids. The `t - 1` new vertices of each
/// stretched edge are appended by edge index, then by position along the
/// path starting from the lower-id endpoint. Each stretch replaces its edge
/// in place in the edge list.
pub fn subdivide(g: &Graph, s: &EdgeSubset, t: usize) -> Result<Graph, GraphError> {
    if t == 0 {
        return Err(GraphError::Argument("stretch length t must be >= 1".into()));
    }
    s.check_bound(g)?;
    let mut in_s = vec![false; g.edge_count()];
    for &i in s.indices() {
        in_s[i] = true;
    }
    let n = g.n() + (t - 1) * s.len();
    let mut edges = Vec::with_capacity(g.edge_count() + (t - 1) * s.len());
    let mut next = g.n();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if !in_s[i] {
            edges.push((u, v));
            continue;
        }
        let mut prev = u;
        for _ in 1..t {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    debug_assert_eq!(next, n);
    Graph::new(n, edges)
}

/// `H_t(S)`: `G_{2t+1}(S)` with the middle edge of every stretch removed.
///
/// The stretch vertex at distance `d` (1..=t) from the `side` endpoint
/// (0 = lower id, 1 = higher id) of the `r`-th edge of `s` gets id
/// `n + 2|S|(d - 1) + 2r + side`. With this distance-major labeling `H_t` is
/// exactly the subgraph of `H_{t+1}` induced on its first `|H_t|` ids.
pub fn build_h(g: &Graph, s: &EdgeSubset, t: usize) -> Result<Graph, GraphError> {
    if t == 0 {
        return Err(GraphError::Argument("H_t is defined for t >= 1 only".into()));
    }
    s.check_bound(g)?;
    let k = s.len();
    let base = g.n();
    let label = |rank: usize, side: usize, d: usize| base + 2 * k * (d - 1) + 2 * rank + side;
    let mut rank_of = vec![None; g.edge_count()];
    for (r, &i) in s.indices().iter().enumerate() {
        rank_of[i] = Some(r);
    }
    let mut edges = Vec::with_capacity(g.edge_count() + 2 * t * k);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let Some(r) = rank_of[i] else {
            edges.push((u, v));
            continue;
        };
        for (side, end) in [(0, u), (1, v)] {
            edges.push((end, label(r, side, 1)));
            for d in 1..t {
                edges.push((label(r, side, d), label(r, side, d + 1)));
            }
        }
    }
    Graph::new(base + 2 * t * k, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `G_t(S)`
    G,
    /// `H_t(S)`
    H,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::G => "G",
            FamilyKind::H => "H",
        }
    }
}

/// A base graph, an edge subset and which of the two families to build.
#[derive(Debug, Clone)]
pub struct SubdivisionFamily {
    pub base: Graph,
    pub subset: EdgeSubset,
    pub kind: FamilyKind,
}

impl SubdivisionFamily {
    pub fn new(base: Graph, subset: EdgeSubset, kind: FamilyKind) -> Result<Self, GraphError> {
        subset.check_bound(&base)?;
        Ok(Self { base, subset, kind })
    }

    pub fn member(&self, t: usize) -> Result<Graph, GraphError> {
        match self.kind {
            FamilyKind::G => subdivide(&self.base, &self.subset, t),
            FamilyKind::H => build_h(&self.base, &self.subset, t),
        }
    }

    /// Vertex count of `member(t)`.
    pub fn order(&self, t: usize) -> usize {
        let (n, s) = (self.base.n(), self.subset.len());
        match self.kind {
            FamilyKind::G => n + t.saturating_sub(1) * s,
            FamilyKind::H => n + 2 * t * s,
        }
    }
}
