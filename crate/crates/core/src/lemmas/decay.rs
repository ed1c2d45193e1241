use serde::{Deserialize, Serialize};

use super::{DistancePartition, LemmaError, Verdict};
use crate::eigen::EigenPair;
use crate::graph::{Graph, InternalPath};
use crate::tolerances::DECAY_ABS;

/// Which decay statement a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayKind {
    /// Layer maxima from a distance partition, ratio `k/|lambda|`.
    Partition,
    /// Paired maxima along an internal path, ratio `2/|lambda|`.
    InternalPath,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerCheck {
    pub index: usize,
    pub max_entry: f64,
    /// The tightest bound applied at this index.
    pub bound: f64,
    /// `bound - max_entry` (negative when violated beyond tolerance).
    pub slack: f64,
    pub pass: bool,
}

/// A tail-sum claim `sum_{j=p}^{s-p} |x_j|^power < epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCheck {
    pub power: u32,
    pub threshold_p: usize,
    pub epsilon: f64,
    /// `false` when `floor(s/2) < p`: the claim is vacuous.
    pub evaluated: bool,
    pub sum: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub kind: DecayKind,
    pub eigenvalue: f64,
    /// `k/|lambda|` or `2/|lambda|`.
    pub ratio: Option<f64>,
    /// `M_0` over the partition boundary (partition checks only).
    pub base_max: Option<f64>,
    pub layers: Vec<LayerCheck>,
    pub tail_linear: Option<TailCheck>,
    pub tail_square: Option<TailCheck>,
    /// Smallest layer slack; `None` when no layer was checked.
    pub worst_slack: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl DecayReport {
    fn not_applicable(kind: DecayKind, eigenvalue: f64, note: String) -> Self {
        Self {
            kind,
            eigenvalue,
            ratio: None,
            base_max: None,
            layers: Vec::new(),
            tail_linear: None,
            tail_square: None,
            worst_slack: None,
            tolerance: DECAY_ABS,
            verdict: Verdict::NotApplicable,
            note: Some(note),
        }
    }
}

fn max_abs(x: &[f64], vs: &[usize]) -> f64 {
    vs.iter().map(|&v| x[v].abs()).fold(0.0, f64::max)
}

/// Layer maxima against `M_i <= (k/|lambda|) M_{i-1}` and
/// `M_i <= (k/|lambda|)^i M_0`.
pub fn check_partition_decay(g: &Graph, part: &DistancePartition, pair: &EigenPair) -> Result<DecayReport, LemmaError> {
    if pair.vector.len() != g.n() {
        return Err(LemmaError::Argument("eigenvector length differs from n".into()));
    }
    let checked = DistancePartition::from_layers(g, part.layers.clone())?;
    if checked != *part {
        return Err(LemmaError::Partition(
            "partition metadata does not match the graph".into(),
        ));
    }
    let lambda = pair.value.abs();
    let k = part.degree_cap as f64;
    if lambda.is_nan() || lambda <= k {
        return Ok(DecayReport::not_applicable(
            DecayKind::Partition,
            pair.value,
            format!("|lambda| = {lambda} does not exceed the degree cap {k}"),
        ));
    }
    let x = &pair.vector;
    let ratio = k / lambda;
    let m0 = max_abs(x, &part.boundary);
    let mut prev = m0;
    let mut layers = Vec::with_capacity(part.depth());
    for (i, layer) in part.layers.iter().enumerate().skip(1) {
        let m = max_abs(x, layer);
        let bound = (ratio * prev).min(ratio.powi(i as i32) * m0);
        let slack = bound - m;
        layers.push(LayerCheck {
            index: i,
            max_entry: m,
            bound,
            slack,
            pass: slack >= -DECAY_ABS,
        });
        prev = m;
    }
    Ok(finish(
        DecayKind::Partition,
        pair.value,
        ratio,
        Some(m0),
        layers,
        None,
        None,
    ))
}

fn finish(
    kind: DecayKind,
    eigenvalue: f64,
    ratio: f64,
    base_max: Option<f64>,
    layers: Vec<LayerCheck>,
    tail_linear: Option<TailCheck>,
    tail_square: Option<TailCheck>,
) -> DecayReport {
    let worst_slack = layers.iter().map(|l| l.slack).reduce(f64::min);
    let pass = layers.iter().all(|l| l.pass)
        && tail_linear.as_ref().is_none_or(|t| t.pass)
        && tail_square.as_ref().is_none_or(|t| t.pass);
    DecayReport {
        kind,
        eigenvalue,
        ratio: Some(ratio),
        base_max,
        layers,
        tail_linear,
        tail_square,
        worst_slack,
        tolerance: DECAY_ABS,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        note: None,
    }
}

/// Smallest integer `p >= 1` meeting the linear tail threshold.
pub fn tail_threshold_linear(lambda: f64, epsilon: f64) -> usize {
    let l = lambda.abs();
    let p = ((2.0 * l) / (epsilon * (l - 2.0))).ln() / (l / 2.0).ln();
    clamp_p(p)
}

/// Smallest integer `p >= 1` meeting the squared tail threshold.
pub fn tail_threshold_square(lambda: f64, epsilon: f64) -> usize {
    let l = lambda.abs();
    let p = ((2.0 * l * l) / (epsilon * (l * l - 4.0))).ln() / (2.0 * (l / 2.0).ln());
    clamp_p(p)
}

fn clamp_p(p: f64) -> usize {
    if p.is_nan() || p <= 1.0 {
        1
    } else if p >= usize::MAX as f64 {
        usize::MAX
    } else {
        p.ceil() as usize
    }
}

fn tail(entries: &[f64], s: usize, p: usize, power: u32, epsilon: f64) -> TailCheck {
    let evaluated = s / 2 >= p;
    let sum = if evaluated {
        entries[p..=s - p].iter().map(|v| v.abs().powi(power as i32)).sum()
    } else {
        0.0
    };
    TailCheck {
        power,
        threshold_p: p,
        epsilon,
        evaluated,
        sum,
        pass: !evaluated || sum < epsilon + DECAY_ABS,
    }
}

/// Paired maxima `M_j = max(|x_j|, |x_{s-j}|) <= (2/|lambda|)^j` for
/// `1 <= j <= floor(s/2)`, plus both tail-sum claims at their thresholds.
pub fn check_path_decay(
    g: &Graph,
    path: &InternalPath,
    pair: &EigenPair,
    epsilon: f64,
) -> Result<DecayReport, LemmaError> {
    let path = InternalPath::new(g, path.vertices().to_vec())?;
    if pair.vector.len() != g.n() {
        return Err(LemmaError::Argument("eigenvector length differs from n".into()));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(LemmaError::Argument(format!("epsilon must be positive, got {epsilon}")));
    }
    let norm = pair.vector.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(LemmaError::Argument(format!("eigenvector norm is {norm}, expected 1")));
    }
    let lambda = pair.value.abs();
    if lambda.is_nan() || lambda <= 2.0 {
        return Ok(DecayReport::not_applicable(
            DecayKind::InternalPath,
            pair.value,
            format!("|lambda| = {lambda} <= 2"),
        ));
    }
    let s = path.len();
    if s < 2 {
        return Ok(DecayReport::not_applicable(
            DecayKind::InternalPath,
            pair.value,
            "path of length 1 has no interior".into(),
        ));
    }
    let entries: Vec<f64> = path.vertices().iter().map(|&v| pair.vector[v]).collect();
    let ratio = 2.0 / lambda;
    let layers = (1..=s / 2)
        .map(|j| {
            let m = entries[j].abs().max(entries[s - j].abs());
            let bound = ratio.powi(j as i32);
            LayerCheck {
                index: j,
                max_entry: m,
                bound,
                slack: bound - m,
                pass: m <= bound + DECAY_ABS,
            }
        })
        .collect();
    let ta = tail(&entries, s, tail_threshold_linear(lambda, epsilon), 1, epsilon);
    let tb = tail(&entries, s, tail_threshold_square(lambda, epsilon), 2, epsilon);
    Ok(finish(
        DecayKind::InternalPath,
        pair.value,
        ratio,
        None,
        layers,
        Some(ta),
        Some(tb),
    ))
}
