//! Extreme eigenvalues of `A(G)` by Lanczos with full reorthogonalization
//! and explicit locking of converged Ritz vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tridiagonal::SymTridiagonal;
use super::{adjacency_apply, EigenError, SolverConfig};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanczosConfig {
    /// Krylov dimension per restart.
    pub max_dim: usize,
    /// Restarts allowed per eigenvalue.
    pub max_restarts: usize,
    /// Ritz residual target, relative to `max(1, max degree)`.
    pub tol: f64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self {
            max_dim: 160,
            max_restarts: 40,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Largest,
    Smallest,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(w, b);
            axpy(w, -c, b);
        }
    }
}

fn normalize(w: &mut [f64]) -> f64 {
    let norm = dot(w, w).sqrt();
    if norm > 0.0 {
        w.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Top eigenvalue of `T` and the last component of its unit eigenvector.
fn top_ritz(t: &SymTridiagonal, rng: &mut ChaCha8Rng) -> (f64, Vec<f64>) {
    let theta = t.largest_eigenvalue();
    let mut y: Vec<f64> = (0..t.n()).map(|_| rng.gen_range(0.5..1.0)).collect();
    for _ in 0..3 {
        y = t.solve_shifted(theta, &y);
        if normalize(&mut y) == 0.0 || y.iter().any(|v| !v.is_finite()) {
            y = vec![0.0; t.n()];
            y[t.n() - 1] = 1.0;
            break;
        }
    }
    (theta, y)
}

/// The `k` largest eigenvalues (descending) or `k` smallest (ascending).
pub fn extreme_eigenvalues(g: &Graph, k: usize, side: Side, cfg: &SolverConfig) -> Result<Vec<f64>, EigenError> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(EigenError::Argument(format!("k = {k} must lie in 1..={n}")));
    }
    let lc = cfg.lanczos;
    let sign = match side {
        Side::Largest => 1.0,
        Side::Smallest => -1.0,
    };
    let op = |x: &[f64]| -> Vec<f64> {
        let mut y = adjacency_apply(g, x);
        if sign < 0.0 {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        y
    };
    let scale = (g.max_degree() as f64).max(1.0);
    let tol = lc.tol * scale;
    let breakdown = 1e-12 * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut locked: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut values: Vec<f64> = Vec::with_capacity(k);

    while values.len() < k {
        let remaining = n - locked.len();
        let mut start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut converged = None;
        let mut last_theta = f64::NAN;
        for _restart in 0..=lc.max_restarts {
            orthogonalize(&mut start, &locked);
            if normalize(&mut start) <= 1e-10 {
                start = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                orthogonalize(&mut start, &locked);
                normalize(&mut start);
            }
            let dim = lc.max_dim.min(remaining).max(1);
            let mut basis: Vec<Vec<f64>> = vec![start.clone()];
            let mut alpha: Vec<f64> = Vec::with_capacity(dim);
            let mut beta: Vec<f64> = Vec::with_capacity(dim);
            let mut ritz = None;
            for j in 0..dim {
                let mut w = op(&basis[j]);
                let a = dot(&w, &basis[j]);
                alpha.push(a);
                axpy(&mut w, -a, &basis[j]);
                if j > 0 {
                    axpy(&mut w, -beta[j - 1], &basis[j - 1]);
                }
                orthogonalize(&mut w, &locked);
                orthogonalize(&mut w, &basis);
                let b = dot(&w, &w).sqrt();
                let t = SymTridiagonal::new(alpha.clone(), beta.clone());
                let (theta, y) = top_ritz(&t, &mut rng);
                last_theta = theta;
                let res = b * y[j].abs();
                if res <= tol || b <= breakdown || j + 1 == dim {
                    let exhausted = b <= breakdown || j + 1 == remaining;
                    ritz = Some((y, res, exhausted));
                    break;
                }
                w.iter_mut().for_each(|x| *x /= b);
                beta.push(b);
                basis.push(w);
            }
            let (y, res, exhausted) = ritz.expect("loop sets a Ritz pair");
            let mut x = vec![0.0; n];
            for (v, &c) in basis.iter().zip(&y) {
                axpy(&mut x, c, v);
            }
            orthogonalize(&mut x, &locked);
            normalize(&mut x);
            if res <= tol || exhausted {
                converged = Some(x);
                break;
            }
            start = x;
        }
        let Some(x) = converged else {
            let mut best: Vec<f64> = values.clone();
            best.push(sign * last_theta);
            return Err(EigenError::LanczosNoConvergence {
                restarts: lc.max_restarts,
                best,
            });
        };
        let ax = op(&x);
        values.push(sign * dot(&x, &ax));
        locked.push(x);
    }
    match side {
        Side::Largest => values.sort_by(|a, b| b.total_cmp(a)),
        Side::Smallest => values.sort_by(f64::total_cmp),
    }
    Ok(values)
}
