use serde::{Deserialize, Serialize};

use super::{LemmaError, Verdict};
use crate::eigen::{InertiaCounter, IntervalCount, SolverConfig};
use crate::graph::{build_h, high_degree_set, subdivide, EdgeSubset, Graph, GraphError};

const INF: f64 = f64::INFINITY;

/// `m(2, inf)` before and after subdividing one edge once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdivisionMonotonicity {
    pub edge: usize,
    pub before: IntervalCount,
    pub after: IntervalCount,
    /// Either count had an eigenvalue within tolerance of 2.
    pub ambiguous: bool,
    pub verdict: Verdict,
}

/// Compares `m_G(2, inf)` with `m_{G'}(2, inf)` where `G'` subdivides `edge`.
pub fn check_single_subdivision_monotonicity(
    g: &Graph,
    edge: usize,
    cfg: &SolverConfig,
) -> Result<SubdivisionMonotonicity, LemmaError> {
    if edge >= g.edge_count() {
        return Err(GraphError::EdgeIndexOutOfRange {
            index: edge,
            m: g.edge_count(),
        }
        .into());
    }
    let subset = EdgeSubset::new(g, [edge])?;
    let g2 = subdivide(g, &subset, 2)?;
    let before = InertiaCounter::new(g, cfg).interval(2.0, INF)?;
    let after = InertiaCounter::new(&g2, cfg).interval(2.0, INF)?;
    let verdict = if before.count <= after.count {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SubdivisionMonotonicity {
        edge,
        ambiguous: before.ambiguous() || after.ambiguous(),
        before,
        after,
        verdict,
    })
}

/// The four counts outside `[-2, 2]` for `G_t(S)` and `H_t(S)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QBoundReport {
    pub t: usize,
    pub q: usize,
    pub g_above: IntervalCount,
    pub h_above: IntervalCount,
    pub g_below: IntervalCount,
    pub h_below: IntervalCount,
    pub verdict: Verdict,
}

impl QBoundReport {
    pub fn counts(&self) -> [usize; 4] {
        [
            self.g_above.count,
            self.h_above.count,
            self.g_below.count,
            self.h_below.count,
        ]
    }
}

/// Checks that every count outside `[-2, 2]` is at most `|Q|`.
pub fn check_q_bound(g: &Graph, s: &EdgeSubset, t: usize, cfg: &SolverConfig) -> Result<QBoundReport, LemmaError> {
    let q = high_degree_set(g).len();
    let gt = subdivide(g, s, t)?;
    let ht = build_h(g, s, t)?;
    let cg = InertiaCounter::new(&gt, cfg);
    let ch = InertiaCounter::new(&ht, cfg);
    let report = QBoundReport {
        t,
        q,
        g_above: cg.interval(2.0, INF)?,
        h_above: ch.interval(2.0, INF)?,
        g_below: cg.interval(-INF, -2.0)?,
        h_below: ch.interval(-INF, -2.0)?,
        verdict: Verdict::NotApplicable,
    };
    let verdict = if report.counts().iter().all(|&c| c <= q) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(QBoundReport { verdict, ..report })
}
