use serde::{Deserialize, Serialize};

use super::{check_grid, check_subset, outside_counts, ExperimentError, GraphSpec, SweepConfig};
use crate::graph::{build_h, high_degree_set, subdivide, EdgeSubset, Graph};

/// The four counts tracked over `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// `m_{G_t}(2, inf)`
    GAbove,
    /// `m_{G_t}(-inf, -2)`
    GBelow,
    /// `m_{H_t}(2, inf)`
    HAbove,
    /// `m_{H_t}(-inf, -2)`
    HBelow,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 4] = [Self::GAbove, Self::GBelow, Self::HAbove, Self::HBelow];

    pub fn label(self) -> &'static str {
        match self {
            Self::GAbove => "g_above",
            Self::GBelow => "g_below",
            Self::HAbove => "h_above",
            Self::HBelow => "h_below",
        }
    }
}

/// Stabilization onset relative to the scanned range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Onset {
    /// Constant from `t0` through the end of the grid.
    Stabilized {
        t0: usize,
        value: usize,
    },
    NotStabilizedInRange,
}

/// Shape of a count sequence that changes value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillationFingerprint {
    /// Number of consecutive grid points whose values differ.
    pub changes: usize,
    /// Distinct values, ascending.
    pub values: Vec<usize>,
    /// Grid value of `t` at the last change.
    pub last_change_t: Option<usize>,
    /// Smallest `p >= 2` with `c[i] = c[i + p]` throughout, when the
    /// sequence spans at least two periods and is not constant.
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountSequence {
    pub kind: SequenceKind,
    pub counts: Vec<usize>,
    /// Grid values of `t` whose count had an eigenvalue within the shift
    /// tolerance of `2` or `-2`.
    pub ambiguous_t: Vec<usize>,
    pub onset: Onset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilizationReport {
    pub base: GraphSpec,
    pub subset: Vec<usize>,
    pub t_grid: Vec<usize>,
    pub q: usize,
    /// In [`SequenceKind::ALL`] order.
    pub sequences: Vec<CountSequence>,
    /// Fingerprint of `m_{G_t}(-inf, -2)`.
    pub g_below_oscillation: OscillationFingerprint,
}

impl StabilizationReport {
    pub fn sequence(&self, kind: SequenceKind) -> &CountSequence {
        self.sequences
            .iter()
            .find(|s| s.kind == kind)
            .expect("all four sequences present")
    }

    /// Every reported onset matches the stored counts.
    pub fn onsets_consistent(&self) -> bool {
        self.sequences
            .iter()
            .all(|s| detect_onset(&self.t_grid, &s.counts) == s.onset)
    }

    pub fn within_q_bound(&self) -> bool {
        self.sequences.iter().all(|s| s.counts.iter().all(|&c| c <= self.q))
    }
}

/// Points the final constant run must cover: `max(5, ceil(len / 4))`.
fn required_run(len: usize) -> usize {
    5.max(len.div_ceil(4))
}

/// First grid point after which `counts` is constant, provided that run
/// covers at least `max(5, 25%)` of the grid.
pub fn detect_onset(t_grid: &[usize], counts: &[usize]) -> Onset {
    let len = counts.len().min(t_grid.len());
    if len == 0 {
        return Onset::NotStabilizedInRange;
    }
    let last = counts[len - 1];
    let start = (0..len)
        .rev()
        .take_while(|&i| counts[i] == last)
        .last()
        .unwrap_or(len - 1);
    if len - start >= required_run(len) {
        Onset::Stabilized {
            t0: t_grid[start],
            value: last,
        }
    } else {
        Onset::NotStabilizedInRange
    }
}

pub fn oscillation_fingerprint(t_grid: &[usize], counts: &[usize]) -> OscillationFingerprint {
    let changes: Vec<usize> = (1..counts.len()).filter(|&i| counts[i] != counts[i - 1]).collect();
    let mut values = counts.to_vec();
    values.sort_unstable();
    values.dedup();
    let period = if changes.is_empty() {
        None
    } else {
        (2..=counts.len() / 2).find(|&p| (0..counts.len() - p).all(|i| counts[i] == counts[i + p]))
    };
    OscillationFingerprint {
        changes: changes.len(),
        values,
        last_change_t: changes.last().map(|&i| t_grid[i]),
        period,
    }
}

/// Outside-`[-2, 2]` counts of `G_t(S)` and `H_t(S)` along `t_grid`, with
/// onsets. Never fails for lack of stabilization.
pub fn run_stabilization(
    g: &Graph,
    s: &EdgeSubset,
    t_grid: &[usize],
    cfg: &SweepConfig,
) -> Result<StabilizationReport, ExperimentError> {
    check_grid(t_grid)?;
    check_subset(g, s)?;
    let solver = cfg.solver;
    let per_t = cfg.execution.map(t_grid, |&t| -> Result<_, ExperimentError> {
        let gt = outside_counts(&subdivide(g, s, t)?, &solver)?;
        let ht = outside_counts(&build_h(g, s, t)?, &solver)?;
        Ok((gt, ht))
    });
    let per_t = per_t.into_iter().collect::<Result<Vec<_>, _>>()?;

    let sequences = SequenceKind::ALL
        .iter()
        .map(|&kind| {
            let mut counts = Vec::with_capacity(per_t.len());
            let mut ambiguous_t = Vec::new();
            for (&(gt, ht), &t) in per_t.iter().zip(t_grid) {
                let (c, amb) = match kind {
                    SequenceKind::GAbove => (gt.above, gt.ambiguous),
                    SequenceKind::GBelow => (gt.below, gt.ambiguous),
                    SequenceKind::HAbove => (ht.above, ht.ambiguous),
                    SequenceKind::HBelow => (ht.below, ht.ambiguous),
                };
                counts.push(c);
                if amb {
                    ambiguous_t.push(t);
                }
            }
            CountSequence {
                kind,
                onset: detect_onset(t_grid, &counts),
                counts,
                ambiguous_t,
            }
        })
        .collect::<Vec<_>>();
    let g_below_oscillation = oscillation_fingerprint(t_grid, &sequences[1].counts);
    Ok(StabilizationReport {
        base: GraphSpec::of(g),
        subset: s.indices().to_vec(),
        t_grid: t_grid.to_vec(),
        q: high_degree_set(g).len(),
        sequences,
        g_below_oscillation,
    })
}
