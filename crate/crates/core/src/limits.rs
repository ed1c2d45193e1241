//! Limits of spectra under repeated subdivision: path characteristic
//! polynomials, the path ratio recurrence, spider and quotient-path radii,
//! and the per-index limits for fully subdivided graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::SymTridiagonal;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of the path ratio at t = {t}, x = {x}")]
    Pole { t: usize, x: f64 },
}

/// `mantissa * 2^exponent`, used when a value leaves the `f64` range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharpolyValue {
    pub mantissa: f64,
    pub exponent: i32,
}

impl CharpolyValue {
    /// The value as an `f64` (may be infinite).
    pub fn to_f64(self) -> f64 {
        self.mantissa * 2f64.powi(self.exponent)
    }

    pub fn is_scaled(self) -> bool {
        self.exponent != 0
    }
}

const RESCALE_AT: f64 = 1e150;
const RESCALE_BITS: i32 = 498;

/// `phi(P_t, x)` by `phi_{t+1} = x phi_t - phi_{t-1}`, `phi_0 = 1`, `phi_1 = x`.
pub fn path_charpoly_eval(t: usize, x: f64) -> CharpolyValue {
    let (mut prev, mut cur) = (1.0, x);
    if t == 0 {
        return CharpolyValue {
            mantissa: 1.0,
            exponent: 0,
        };
    }
    let mut exponent = 0;
    let down = 2f64.powi(-RESCALE_BITS);
    for _ in 1..t {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            cur *= down;
            prev *= down;
            exponent += RESCALE_BITS;
        }
    }
    CharpolyValue {
        mantissa: cur,
        exponent,
    }
}

/// `rho_t = phi(P_{t-1}, x) / phi(P_t, x)`, advanced by
/// `rho_{t+1} = 1 / (x - rho_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathRatioState {
    pub x: f64,
    pub t: usize,
    pub rho: f64,
}

impl PathRatioState {
    pub fn new(x: f64) -> Result<Self, LimitsError> {
        if !x.is_finite() {
            return Err(LimitsError::Domain(format!("x = {x} is not finite")));
        }
        if x.abs() <= f64::MIN_POSITIVE {
            return Err(LimitsError::Pole { t: 1, x });
        }
        Ok(Self { x, t: 1, rho: 1.0 / x })
    }

    /// `x > 2`: no poles, `rho` in `(0, 1)`.
    pub fn in_primary_regime(&self) -> bool {
        self.x > 2.0
    }

    pub fn advance(&mut self) -> Result<(), LimitsError> {
        let denom = self.x - self.rho;
        if denom.abs() <= f64::EPSILON * self.x.abs().max(1.0) {
            return Err(LimitsError::Pole {
                t: self.t + 1,
                x: self.x,
            });
        }
        self.rho = 1.0 / denom;
        self.t += 1;
        Ok(())
    }
}

/// `phi(P_{t-1}, x) / phi(P_t, x)` for `t >= 1`.
pub fn path_ratio(t: usize, x: f64) -> Result<f64, LimitsError> {
    if t == 0 {
        return Err(LimitsError::Domain("t must be >= 1".into()));
    }
    let mut s = PathRatioState::new(x)?;
    while s.t < t {
        s.advance()?;
    }
    Ok(s.rho)
}

/// `(x - sqrt(x^2 - 4)) / 2` for `x > 2`, evaluated without cancellation.
pub fn path_ratio_limit(x: f64) -> Result<f64, LimitsError> {
    if !x.is_finite() || x <= 2.0 {
        return Err(LimitsError::Domain(format!("path ratio limit needs x > 2, got {x}")));
    }
    Ok(2.0 / (x + ((x - 2.0) * (x + 2.0)).sqrt()))
}

/// `lim_t lambda_1((K_{1,d})_t)`: 2 for `d <= 2`, `d / sqrt(d - 1)` otherwise.
pub fn spider_limit(d: usize) -> Result<f64, LimitsError> {
    match d {
        0 => Err(LimitsError::Domain("spider needs d >= 1".into())),
        1 | 2 => Ok(2.0),
        _ => {
            let d = d as f64;
            Ok(d / (d - 1.0).sqrt())
        }
    }
}

/// The weighted path `P_{d,t+1}`: vertices `0..=t`, first edge weight
/// `sqrt(d)`, all others 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPath {
    pub d: usize,
    pub t: usize,
    pub matrix: SymTridiagonal,
}

impl WeightedPath {
    pub fn new(d: usize, t: usize) -> Result<Self, LimitsError> {
        if d == 0 || t == 0 {
            return Err(LimitsError::Domain(format!(
                "weighted path needs d, t >= 1 (d = {d}, t = {t})"
            )));
        }
        let mut off = vec![1.0; t];
        off[0] = (d as f64).sqrt();
        Ok(Self {
            d,
            t,
            matrix: SymTridiagonal::new(vec![0.0; t + 1], off),
        })
    }

    pub fn spectral_radius(&self) -> f64 {
        self.matrix.largest_eigenvalue()
    }
}

/// Spectral radius of `P_{d,t+1}`, equal to `lambda_1((K_{1,d})_t)`.
pub fn quotient_path_radius(d: usize, t: usize) -> Result<f64, LimitsError> {
    Ok(WeightedPath::new(d, t)?.spectral_radius())
}

/// `spider_limit(d) - lambda_1((K_{1,d})_t)` to full relative precision.
///
/// Far out in `t` the gap drops below the spacing of doubles near the
/// limit, so it is computed from the leg equation in `w = u^2`, with
/// `lambda = u + 1/u`: `w = w* + delta`, `w* = 1/(d-1)` and
/// `delta = w^{t+1} (d - 1 - w) / (d - 1)`. `None` when `lambda_1 <= 2`
/// (no solution with `w < 1`) or `d < 3`.
pub fn spider_radius_deficit(d: usize, t: usize) -> Option<f64> {
    if d < 3 || t == 0 {
        return None;
    }
    let dm1 = (d - 1) as f64;
    let a = 1.0 / dm1;
    // Fixed-point iteration from delta = 0 increases monotonically to the
    // smallest root; w = 1 (lambda = 2) is always a root.
    let mut delta = 0.0f64;
    let mut converged = false;
    for _ in 0..100_000 {
        let w = a + delta;
        if w >= 1.0 {
            return None;
        }
        let next = w.powi(t as i32 + 1) * (dm1 - w) / dm1;
        let done = next == delta || (next - delta).abs() <= 1e-17 * next;
        delta = next;
        if done {
            converged = true;
            break;
        }
    }
    let b = a + delta;
    if !converged || b >= 1.0 - 1e-6 {
        return None;
    }
    let (ra, rb) = (a.sqrt(), b.sqrt());
    Some(delta / (ra + rb) * (1.0 / (ra * rb) - 1.0))
}

/// Degrees `d_1 >= d_2 >= ... >= d_n`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Result<Self, LimitsError> {
        if degrees.is_empty() {
            return Err(LimitsError::Domain("empty degree sequence".into()));
        }
        if degrees.contains(&0) {
            return Err(LimitsError::Domain("degrees must be positive".into()));
        }
        if degrees.iter().sum::<usize>() % 2 == 1 {
            return Err(LimitsError::Domain("degree sum must be even".into()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(degrees))
    }

    /// Degrees of the non-isolated vertices of `g`.
    pub fn from_graph(g: &Graph) -> Result<Self, LimitsError> {
        Self::new(g.degrees().into_iter().filter(|&d| d > 0).collect())
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Predicted `lim_t lambda_k(G_t(E(G)))`: `d_k / sqrt(d_k - 1)` when
/// `k <= n` and `d_k >= 3`, else 2. The `k`-th smallest eigenvalue tends to
/// the negative of this value.
pub fn subdivision_limit(ds: &DegreeSequence, k: usize) -> Result<f64, LimitsError> {
    if k == 0 {
        return Err(LimitsError::Domain("k must be >= 1".into()));
    }
    match ds.0.get(k - 1) {
        Some(&d) if d >= 3 => spider_limit(d),
        _ => Ok(2.0),
    }
}
