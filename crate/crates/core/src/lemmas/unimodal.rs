use serde::{Deserialize, Serialize};

use super::{LemmaError, Verdict};
use crate::eigen::EigenPair;
use crate::graph::{Graph, InternalPath};
use crate::tolerances::{DECAY_ABS, RATIO_REL};

/// Eigenvalues this far below 2 in magnitude are still treated as `|lambda| >= 2`.
const GATE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnimodalityReport {
    pub path: Vec<usize>,
    pub eigenvalue: f64,
    pub magnitudes: Vec<f64>,
    /// Smallest index attaining the minimum magnitude.
    pub minimizer: usize,
    /// Minimizer for which both chains held (any near-minimizer may serve).
    pub witness: Option<usize>,
    pub mu: f64,
    /// `|x_i| >= mu^{j-i} |x_j|` for `0 <= i < j <= k-1`.
    pub descending_holds: bool,
    /// `|x_j| >= mu^{j-i} |x_i|` for `k+1 <= i < j <= s`.
    pub ascending_holds: bool,
    /// Smallest `lhs - rhs` over all checked pairs at the reported minimizer.
    pub worst_margin: Option<f64>,
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub verdict: Verdict,
}

struct Chains {
    descending: bool,
    ascending: bool,
    worst: Option<f64>,
}

/// `hi * (1 + rel) >= mu^gap * (lo - abs)`.
fn chain_margin(hi: f64, lo: f64, mu: f64, gap: usize) -> f64 {
    let lo = lo - DECAY_ABS;
    let rhs = if lo <= 0.0 { 0.0 } else { mu.powi(gap as i32) * lo };
    hi * (1.0 + RATIO_REL) - rhs
}

fn chains(m: &[f64], k: usize, mu: f64) -> Chains {
    let s = m.len() - 1;
    let mut worst: Option<f64> = None;
    let mut note = |v: f64| worst = Some(worst.map_or(v, |w| w.min(v)));
    let mut descending = true;
    for i in 0..k.saturating_sub(1) {
        for j in i + 1..k {
            let margin = chain_margin(m[i], m[j], mu, j - i);
            note(margin);
            descending &= margin >= 0.0;
        }
    }
    let mut ascending = true;
    for i in k + 1..=s {
        for j in i + 1..=s {
            let margin = chain_margin(m[j], m[i], mu, j - i);
            note(margin);
            ascending &= margin >= 0.0;
        }
    }
    Chains {
        descending,
        ascending,
        worst,
    }
}

/// Ratio chains on both sides of the minimum of `|x|` along `path`.
pub fn check_unimodality(g: &Graph, path: &InternalPath, pair: &EigenPair) -> Result<UnimodalityReport, LemmaError> {
    let path = InternalPath::new(g, path.vertices().to_vec())?;
    if pair.vector.len() != g.n() {
        return Err(LemmaError::Argument("eigenvector length differs from n".into()));
    }
    let magnitudes: Vec<f64> = path.vertices().iter().map(|&v| pair.vector[v].abs()).collect();
    let lambda = pair.value.abs();
    let mu = lambda - 1.0;
    let min = magnitudes.iter().copied().fold(f64::INFINITY, f64::min);
    let minimizer = magnitudes.iter().position(|&v| v == min).expect("nonempty path");
    let mut report = UnimodalityReport {
        path: path.vertices().to_vec(),
        eigenvalue: pair.value,
        magnitudes: magnitudes.clone(),
        minimizer,
        witness: None,
        mu,
        descending_holds: false,
        ascending_holds: false,
        worst_margin: None,
        relative_tolerance: RATIO_REL,
        absolute_tolerance: DECAY_ABS,
        verdict: Verdict::NotApplicable,
    };
    if lambda.is_nan() || lambda < 2.0 - GATE_SLACK {
        return Ok(report);
    }
    let first = chains(&magnitudes, minimizer, mu);
    report.descending_holds = first.descending;
    report.ascending_holds = first.ascending;
    report.worst_margin = first.worst;
    if first.descending && first.ascending {
        report.witness = Some(minimizer);
    } else {
        report.witness = (0..magnitudes.len())
            .filter(|&k| k != minimizer && magnitudes[k] <= min + DECAY_ABS)
            .find(|&k| {
                let c = chains(&magnitudes, k, mu);
                c.descending && c.ascending
            });
    }
    report.verdict = if report.witness.is_some() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{eigenpair_at, full_eigensystem, full_spectrum, SolverConfig};
    use crate::graph::{attach_path, complete, cycle, internal_paths, path, spider};

    #[test]
    fn spider_leg_descends_to_leaf() {
        let g = spider(3, 12);
        let l1 = full_spectrum(&g).unwrap().eigenvalues[0];
        let pair = eigenpair_at(&g, l1).unwrap();
        for p in internal_paths(&g).paths {
            let r = check_unimodality(&g, &p, &pair).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.minimizer, 12, "leaf end of a center-first leg");
        }
    }

    #[test]
    fn cycle_at_two_is_flat() {
        let c = cycle(6);
        let pair = EigenPair {
            value: 2.0,
            vector: vec![1.0 / 6f64.sqrt(); 6],
            residual: 0.0,
            in_eigenspace: false,
        };
        let p = InternalPath::new(&c, vec![0, 1, 2, 3]).unwrap();
        let r = check_unimodality(&c, &p, &pair).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.mu, 1.0);
        assert!(r.worst_margin.unwrap() >= 0.0);
    }

    #[test]
    fn small_eigenvalues_not_applicable() {
        let g = path(5);
        let es = full_eigensystem(&g, &SolverConfig::default()).unwrap();
        let p = internal_paths(&g).paths.remove(0);
        for pair in es.pairs() {
            let r = check_unimodality(&g, &p, &pair).unwrap();
            assert_eq!(r.verdict, Verdict::NotApplicable);
        }
    }

    #[test]
    fn violated_chain_fails() {
        let g = attach_path(&complete(4), 0, 1, 4);
        let p = internal_paths(&g).paths.remove(0);
        let mut vector = vec![0.0; g.n()];
        // Not an eigenvector: magnitudes 0.5, 0.1, 0.4, 0.0, 0.5 break the
        // descending chain at mu = 2.
        for (&v, x) in p.vertices().iter().zip([0.5, 0.1, 0.4, 0.0, 0.5]) {
            vector[v] = x;
        }
        let pair = EigenPair {
            value: 3.0,
            vector,
            residual: f64::NAN,
            in_eigenspace: false,
        };
        let r = check_unimodality(&g, &p, &pair).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.descending_holds);
    }
}
