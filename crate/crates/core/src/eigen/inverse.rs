//! Eigenvectors for a known eigenvalue by tridiagonal inverse iteration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normalize_sign, reduce, residual, EigenError, EigenPair, SolverConfig};
use crate::graph::Graph;
use crate::tolerances::MULTIPLICITY_GAP;

/// Half-width of the search window around the target.
const WINDOW: f64 = 2e-6;
const MAX_STEPS: usize = 8;

/// Unit eigenvector for the eigenvalue nearest `target`.
pub fn eigenpair_at(g: &Graph, target: f64) -> Result<EigenPair, EigenError> {
    eigenpair_with(g, target, &SolverConfig::default())
}

pub fn eigenpair_with(g: &Graph, target: f64, cfg: &SolverConfig) -> Result<EigenPair, EigenError> {
    let n = g.n();
    if n == 0 || !target.is_finite() {
        return Err(EigenError::Argument(format!("no eigenpair at {target} for n = {n}")));
    }
    let red = reduce(g, cfg, true)?;
    let tri = &red.tri;
    let qt = red.qt.as_ref().expect("requested Q");

    let first = tri.sturm(target - WINDOW).below;
    let last = tri.sturm(target + WINDOW).below;
    if last == first {
        return Err(EigenError::NoEigenvalueNear { target, window: WINDOW });
    }
    let value = (first..last)
        .map(|k| tri.kth_ascending(k))
        .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
        .expect("nonempty window");
    let cluster = tri.sturm(value + MULTIPLICITY_GAP).below - tri.sturm(value - MULTIPLICITY_GAP).below;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let scale = tri.norm_inf().max(1.0);
    let mut best = f64::INFINITY;
    for _ in 0..MAX_STEPS {
        let mut z = tri.solve_shifted(value, &y);
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            break;
        }
        z.iter_mut().for_each(|v| *v /= norm);
        let tz = tri.apply(&z);
        let r = tz
            .iter()
            .zip(&z)
            .map(|(a, b)| (a - value * b).powi(2))
            .sum::<f64>()
            .sqrt();
        y = z;
        if r >= 0.5 * best || r <= 8.0 * f64::EPSILON * scale {
            break;
        }
        best = r;
    }

    // Back to vertex coordinates: x = Q y.
    let mut x = vec![0.0; n];
    for (i, &yi) in y.iter().enumerate() {
        let row = &qt[i * n..(i + 1) * n];
        for (xv, &q) in x.iter_mut().zip(row) {
            *xv += yi * q;
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    normalize_sign(&mut x);
    let res = residual(g, value, &x);
    if res.is_nan() || res > cfg.residual_bound {
        return Err(EigenError::Residual {
            residual: res,
            bound: cfg.residual_bound,
        });
    }
    Ok(EigenPair {
        value,
        vector: x,
        residual: res,
        in_eigenspace: cluster > 1,
    })
}
