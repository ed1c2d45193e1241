//! Adjacency spectra: dense symmetric eigensolver, inertia-based interval
//! counting, inverse iteration and an iterative extreme-eigenvalue solver.
//!
//! The dense path reduces `A(G)` to tridiagonal form with Householder
//! reflections and then runs implicit-shift QL. The same tridiagonal form
//! feeds the Sturm counts used for interval multiplicities, so counting
//! never needs the full spectrum.

mod condense;
mod counting;
mod householder;
mod inverse;
mod lanczos;
pub mod tridiagonal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::tolerances::{DEFAULT_DENSE_CAP, RESIDUAL_BOUND, TAU};

pub use condense::Condensation;
pub use counting::{count_below, m_interval, Endpoint, InertiaCounter, IntervalCount, Route, SliverFlag};
pub use householder::{tridiagonalize, Reduction};
pub use inverse::{eigenpair_at, eigenpair_with};
pub use lanczos::{extreme_eigenvalues, LanczosConfig, Side};
pub use tridiagonal::{SturmCount, SymTridiagonal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("dimension {n} exceeds the dense cap {cap}; use interval counting or extreme-eigenvalue mode")]
    Capacity { n: usize, cap: usize },
    #[error("QL iteration did not converge for eigenvalue {index} after {sweeps} sweeps")]
    NoConvergence { index: usize, sweeps: usize },
    #[error("Lanczos did not converge after {restarts} restarts; best Ritz values {best:?}")]
    LanczosNoConvergence { restarts: usize, best: Vec<f64> },
    #[error("count at {sigma} is ambiguous: {below} below sigma - tau, {above} below sigma + tau")]
    Ambiguous { sigma: f64, below: usize, above: usize },
    #[error("no eigenvalue within {window} of {target}")]
    NoEigenvalueNear { target: f64, window: f64 },
    #[error("inverse iteration residual {residual:e} exceeds bound {bound:e}")]
    Residual { residual: f64, bound: f64 },
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// Knobs shared by the spectral routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest dimension handled by dense routines.
    pub dense_cap: usize,
    /// Boundary tolerance for interval endpoints and shift retries.
    pub tau: f64,
    /// Seed for every iterative start vector.
    pub seed: u64,
    /// Maximum accepted `||Ax - lambda x||` for returned eigenpairs.
    pub residual_bound: f64,
    pub lanczos: LanczosConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dense_cap: DEFAULT_DENSE_CAP,
            tau: TAU,
            seed: 0,
            residual_bound: RESIDUAL_BOUND,
            lanczos: LanczosConfig::default(),
        }
    }
}

/// All eigenvalues of `A(G)`, descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub n: usize,
    /// Max residual over computed pairs, when vectors were computed.
    pub residual_bound: Option<f64>,
    /// QL sweeps spent.
    pub iterations: usize,
}

impl Spectrum {
    /// `lambda_k` with 1-based `k` (largest first).
    pub fn largest(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.eigenvalues.get(i).copied())
    }

    /// `k`-th smallest, 1-based: `lambda_{n-k+1}`.
    pub fn smallest(&self, k: usize) -> Option<f64> {
        if k == 0 || k > self.n {
            return None;
        }
        Some(self.eigenvalues[self.n - k])
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l < sigma).count()
    }
}

/// An eigenvalue with a unit eigenvector indexed by vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    /// Another eigenvalue lies within `1e-8`; the vector is one element of
    /// the (numerical) eigenspace.
    pub in_eigenspace: bool,
}

/// Eigenvalues (descending) with their eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Row `i` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

impl Eigensystem {
    pub fn pairs(&self) -> impl Iterator<Item = EigenPair> + '_ {
        let n = self.values.len();
        (0..n).map(move |i| {
            let v = self.values[i];
            let near = |j: usize| (self.values[j] - v).abs() <= crate::tolerances::MULTIPLICITY_GAP;
            let in_eigenspace = (i > 0 && near(i - 1)) || (i + 1 < n && near(i + 1));
            EigenPair {
                value: v,
                vector: self.vectors[i].clone(),
                residual: self.residuals[i],
                in_eigenspace,
            }
        })
    }
}

/// Row-major dense adjacency matrix.
pub fn adjacency_dense(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

/// `y = A(G) x`.
pub fn adjacency_apply(g: &Graph, x: &[f64]) -> Vec<f64> {
    (0..g.n()).map(|u| g.neighbors(u).iter().map(|&w| x[w]).sum()).collect()
}

/// `||A x - lambda x||_2`.
pub fn residual(g: &Graph, value: f64, x: &[f64]) -> f64 {
    let ax = adjacency_apply(g, x);
    ax.iter()
        .zip(x)
        .map(|(a, b)| (a - value * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Flips `x` so that its largest-magnitude entry (first on ties) is positive.
pub fn normalize_sign(x: &mut [f64]) {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    if x.get(best).is_some_and(|&v| v < 0.0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

fn check_cap(n: usize, cfg: &SolverConfig) -> Result<(), EigenError> {
    if n > cfg.dense_cap {
        return Err(EigenError::Capacity { n, cap: cfg.dense_cap });
    }
    Ok(())
}

/// Tridiagonal form of `A(G)` (no `Q`), guarded by the dense cap.
pub fn reduce(g: &Graph, cfg: &SolverConfig, want_q: bool) -> Result<Reduction, EigenError> {
    check_cap(g.n(), cfg)?;
    Ok(tridiagonalize(adjacency_dense(g), g.n(), want_q))
}

/// All eigenvalues of `A(G)`, descending.
pub fn full_spectrum(g: &Graph) -> Result<Spectrum, EigenError> {
    full_spectrum_with(g, &SolverConfig::default())
}

pub fn full_spectrum_with(g: &Graph, cfg: &SolverConfig) -> Result<Spectrum, EigenError> {
    let n = g.n();
    if n == 0 {
        return Err(EigenError::Argument("empty graph".into()));
    }
    let red = reduce(g, cfg, false)?;
    let (mut vals, iterations) = red.tri.eigenvalues()?;
    vals.reverse();
    Ok(Spectrum {
        eigenvalues: vals,
        n,
        residual_bound: None,
        iterations,
    })
}

/// Full eigendecomposition; vectors are sign-normalized.
pub fn full_eigensystem(g: &Graph, cfg: &SolverConfig) -> Result<Eigensystem, EigenError> {
    let n = g.n();
    if n == 0 {
        return Err(EigenError::Argument("empty graph".into()));
    }
    let red = reduce(g, cfg, true)?;
    let mut rows = red.qt.expect("requested Q");
    let (vals, _) = red.tri.eigen_into_rows(&mut rows)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for i in order {
        let mut v = rows[i * n..(i + 1) * n].to_vec();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        normalize_sign(&mut v);
        residuals.push(residual(g, vals[i], &v));
        values.push(vals[i]);
        vectors.push(v);
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(Eigensystem {
        values,
        vectors,
        residuals,
        max_residual,
    })
}
