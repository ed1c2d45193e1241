//! Symmetric tridiagonal kernels: implicit-shift QL iteration, Sturm
//! (inertia) counts, and shifted linear solves for inverse iteration.

use super::EigenError;

/// Maximum QL sweeps spent on a single eigenvalue before giving up.
const QL_MAX_SWEEPS: usize = 60;

/// Symmetric tridiagonal matrix: `off[i]` couples rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Outcome of a Sturm count at a shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SturmCount {
    /// Number of negative pivots of `T - sigma I`, i.e. eigenvalues below
    /// `sigma`.
    pub below: usize,
    /// Smallest pivot magnitude seen (before the `pivmin` guard).
    pub min_pivot: f64,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            off.len() + 1 == diag.len() || (diag.is_empty() && off.is_empty()),
            "off-diagonal must have n - 1 entries"
        );
        Self { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| {
                let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let r = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + l + r
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let r = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - l - r);
            hi = hi.max(self.diag[i] + l + r);
        }
        (lo, hi)
    }

    /// Sturm count: the number of eigenvalues strictly below `sigma`, read
    /// off the signs of the `LDL^T` pivots of `T - sigma I`.
    pub fn sturm(&self, sigma: f64) -> SturmCount {
        let n = self.n();
        if n == 0 {
            return SturmCount {
                below: 0,
                min_pivot: f64::INFINITY,
            };
        }
        let max_off2 = self.off.iter().map(|e| e * e).fold(1.0, f64::max);
        let pivmin = f64::MIN_POSITIVE * max_off2;
        let mut below = 0;
        let mut min_pivot = f64::INFINITY;
        let mut q = self.diag[0] - sigma;
        for i in 0..n {
            if i > 0 {
                q = (self.diag[i] - sigma) - self.off[i - 1] * self.off[i - 1] / q;
            }
            min_pivot = min_pivot.min(q.abs());
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                below += 1;
            }
        }
        SturmCount { below, min_pivot }
    }

    /// Eigenvalues in ascending order and the number of QL sweeps used.
    pub fn eigenvalues(&self) -> Result<(Vec<f64>, usize), EigenError> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        let iters = ql_implicit(&mut d, &mut e, None)?;
        d.sort_by(f64::total_cmp);
        Ok((d, iters))
    }

    /// Eigenvalues (unsorted, aligned with rows) while accumulating the
    /// rotations into `rows`, an `n x n` row-major matrix whose rows are
    /// transformed. Starting from `Q^T` yields eigenvectors of `Q T Q^T` as
    /// rows.
    pub fn eigen_into_rows(&self, rows: &mut [f64]) -> Result<(Vec<f64>, usize), EigenError> {
        let n = self.n();
        assert_eq!(rows.len(), n * n);
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        let iters = ql_implicit(&mut d, &mut e, Some(rows))?;
        Ok((d, iters))
    }

    /// Largest eigenvalue by bisection on Sturm counts.
    pub fn largest_eigenvalue(&self) -> f64 {
        let n = self.n();
        self.kth_ascending(n - 1)
    }

    /// The `k`-th smallest eigenvalue (0-based) by Sturm bisection.
    pub fn kth_ascending(&self, k: usize) -> f64 {
        assert!(k < self.n());
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm(mid).below > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solves `(T - sigma I) x = b` by Gaussian elimination with partial
    /// pivoting. Zero pivots are replaced by `eps * ||T||` so that shifts at
    /// an eigenvalue still produce a usable inverse-iteration step.
    pub fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(b.len(), n);
        if n == 0 {
            return Vec::new();
        }
        let tiny = f64::EPSILON * self.norm_inf().max(1.0);
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let mut dl: Vec<f64> = self.off.clone();
        let mut du: Vec<f64> = self.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let m = dl[i] / d[i];
                dl[i] = m;
                d[i + 1] -= m * du[i];
            } else {
                swapped[i] = true;
                let m = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = m;
                let tmp = d[i + 1];
                d[i + 1] = du[i] - m * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -m;
                }
                du[i] = tmp;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if swapped[i] {
                let tmp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = tmp - dl[i] * x[i];
            } else {
                x[i + 1] -= dl[i] * x[i];
            }
        }
        x[n - 1] /= d[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        x
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y: Vec<f64> = (0..n).map(|i| self.diag[i] * x[i]).collect();
        for i in 0..n.saturating_sub(1) {
            y[i] += self.off[i] * x[i + 1];
            y[i + 1] += self.off[i] * x[i];
        }
        y
    }
}

/// Implicit QL with Wilkinson-type shifts on `(d, e)` where `e[i]` couples
/// `i` and `i + 1` and `e[n - 1] == 0`. When `rows` is given, every plane
/// rotation is applied to the corresponding pair of rows.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut rows: Option<&mut [f64]>) -> Result<usize, EigenError> {
    let n = d.len();
    if n <= 1 {
        return Ok(0);
    }
    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let abs_floor = f64::EPSILON * anorm * 0.5;
    let mut total = 0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= abs_floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            total += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(EigenError::NoConvergence {
                    index: l,
                    sweeps: QL_MAX_SWEEPS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut deflated_early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = rows.as_deref_mut() {
                    let (head, tail) = z.split_at_mut((i + 1) * n);
                    let zi = &mut head[i * n..];
                    let zi1 = &mut tail[..n];
                    for k in 0..n {
                        let a = zi[k];
                        let bb = zi1[k];
                        zi1[k] = s * a + c * bb;
                        zi[k] = c * a - s * bb;
                    }
                }
            }
            if deflated_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(total)
}
