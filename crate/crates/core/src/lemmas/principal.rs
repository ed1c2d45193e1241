use serde::{Deserialize, Serialize};

use super::{LemmaError, Verdict};
use crate::eigen::{eigenpair_with, full_spectrum_with, SolverConfig};
use crate::graph::{Graph, InternalPath};
use crate::tolerances::{ENDPOINT_EQ, STRICT_NOISE};

/// Shape of the Perron vector along an internal path, oriented so that
/// `x_0 <= x_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrincipalCase {
    /// `x_0 = x_s`: symmetric V.
    EqualEnds,
    /// `x_0 < x_s` and `x_0 <= x_1`: increasing after the first entry.
    Increasing,
    /// `x_0 < x_s` and `x_0 > x_1`: dips to a minimum at `witness`.
    Dip { witness: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalReport {
    /// Path as checked, after orientation.
    pub path: Vec<usize>,
    pub reversed: bool,
    pub lambda1: f64,
    pub entries: Vec<f64>,
    pub case: Option<PrincipalCase>,
    pub checks: Vec<PatternCheck>,
    pub endpoint_tolerance: f64,
    pub verdict: Verdict,
}

/// `a > b` up to rounding noise.
fn gt(a: f64, b: f64) -> bool {
    a - b > -STRICT_NOISE
}

fn strictly_decreasing(x: &[f64]) -> bool {
    x.windows(2).all(|w| gt(w[0], w[1]))
}

fn strictly_increasing(x: &[f64]) -> bool {
    x.windows(2).all(|w| gt(w[1], w[0]))
}

fn equal_ends_checks(x: &[f64]) -> Vec<PatternCheck> {
    let s = x.len() - 1;
    let (lo, hi) = (s / 2, s.div_ceil(2));
    vec![
        PatternCheck {
            name: "x_i = x_{s-i}".into(),
            holds: (0..=s).all(|i| (x[i] - x[s - i]).abs() <= ENDPOINT_EQ),
        },
        PatternCheck {
            name: "x_0 > ... > x_{floor(s/2)}".into(),
            holds: strictly_decreasing(&x[..=lo]),
        },
        PatternCheck {
            name: "x_{floor(s/2)} = x_{ceil(s/2)}".into(),
            holds: (x[lo] - x[hi]).abs() <= ENDPOINT_EQ,
        },
        PatternCheck {
            name: "x_{ceil(s/2)} < ... < x_s".into(),
            holds: strictly_increasing(&x[hi..]),
        },
    ]
}

fn increasing_checks(x: &[f64]) -> Vec<PatternCheck> {
    vec![PatternCheck {
        name: "x_1 < x_2 < ... < x_s".into(),
        holds: strictly_increasing(&x[1..]),
    }]
}

/// Dip sub-case: returns the checks and the first valid witness `k`.
fn dip_checks(x: &[f64]) -> (Vec<PatternCheck>, Option<usize>) {
    let s = x.len() - 1;
    let dominated = (0..s.div_ceil(2)).all(|i| gt(x[s - i], x[i]));
    let witness = (1..=s / 2)
        .find(|&k| strictly_decreasing(&x[..k]) && x[k - 1] - x[k] >= -STRICT_NOISE && strictly_increasing(&x[k..]));
    (
        vec![
            PatternCheck {
                name: "x_{s-i} > x_i for i <= ceil(s/2) - 1".into(),
                holds: dominated,
            },
            PatternCheck {
                name: "exists k in [1, floor(s/2)] with x_0 > ... > x_{k-1} >= x_k < ... < x_s".into(),
                holds: witness.is_some(),
            },
        ],
        witness,
    )
}

/// Classifies the Perron vector along `path` and checks the matching pattern.
pub fn check_principal_unimodality(
    g: &Graph,
    path: &InternalPath,
    cfg: &SolverConfig,
) -> Result<PrincipalReport, LemmaError> {
    let path = InternalPath::new(g, path.vertices().to_vec())?;
    if !g.is_connected() {
        return Err(LemmaError::Argument("graph must be connected".into()));
    }
    let lambda1 = full_spectrum_with(g, cfg)?.eigenvalues[0];
    let mut report = PrincipalReport {
        path: path.vertices().to_vec(),
        reversed: false,
        lambda1,
        entries: Vec::new(),
        case: None,
        checks: Vec::new(),
        endpoint_tolerance: ENDPOINT_EQ,
        verdict: Verdict::NotApplicable,
    };
    if lambda1.is_nan() || lambda1 <= 2.0 {
        return Ok(report);
    }
    let pair = eigenpair_with(g, lambda1, cfg)?;
    let mut x: Vec<f64> = path.vertices().iter().map(|&v| pair.vector[v].abs()).collect();
    let s = path.len();
    if x[0] > x[s] + ENDPOINT_EQ {
        x.reverse();
        report.path.reverse();
        report.reversed = true;
    }
    let (case, checks) = if (x[0] - x[s]).abs() <= ENDPOINT_EQ {
        (PrincipalCase::EqualEnds, equal_ends_checks(&x))
    } else if x[0] <= x[1] {
        (PrincipalCase::Increasing, increasing_checks(&x))
    } else {
        let (dip, witness) = dip_checks(&x);
        let inc = increasing_checks(&x);
        // x_0 and x_1 equal up to noise: either sub-case may apply.
        if witness.is_none() && x[0] - x[1] <= STRICT_NOISE && inc.iter().all(|c| c.holds) {
            (PrincipalCase::Increasing, inc)
        } else {
            (PrincipalCase::Dip { witness }, dip)
        }
    };
    report.verdict = if checks.iter().all(|c| c.holds) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.entries = x;
    report.case = Some(case);
    report.checks = checks;
    Ok(report)
}
