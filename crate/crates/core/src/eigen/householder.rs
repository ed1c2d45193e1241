//! Orthogonal reduction of a dense symmetric matrix to tridiagonal form.

use super::tridiagonal::SymTridiagonal;

/// `A = Q T Q^T`. `qt` holds `Q^T` row-major when it was requested.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub tri: SymTridiagonal,
    pub qt: Option<Vec<f64>>,
}

/// Householder tridiagonalization of the symmetric `n x n` row-major
/// matrix `a` (consumed as workspace).
pub fn tridiagonalize(mut a: Vec<f64>, n: usize, want_q: bool) -> Reduction {
    assert_eq!(a.len(), n * n);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut qt = want_q.then(|| {
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        q
    });
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut y = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        diag[k] = a[k * n + k];
        let m = n - k - 1;
        let base = k + 1;
        let x0 = a[base * n + k];
        let tail2: f64 = (1..m).map(|i| a[(base + i) * n + k].powi(2)).sum();
        if tail2 == 0.0 {
            off[k] = x0;
            continue;
        }
        let norm = (x0 * x0 + tail2).sqrt();
        let alpha = if x0 > 0.0 { -norm } else { norm };
        let v = &mut v[..m];
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = a[(base + i) * n + k];
        }
        let vtv = v[0] * v[0] + tail2;
        let beta = 2.0 / vtv;
        off[k] = alpha;

        // p = beta * B v, with B the trailing block.
        let p = &mut p[..m];
        for i in 0..m {
            let row = &a[(base + i) * n + base..(base + i) * n + base + m];
            p[i] = beta * row.iter().zip(v.iter()).map(|(r, s)| r * s).sum::<f64>();
        }
        let kk = 0.5 * beta * p.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<f64>();
        for i in 0..m {
            p[i] -= kk * v[i];
        }
        // B -= v w^T + w v^T
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(base + i) * n + base..(base + i) * n + base + m];
            for j in 0..m {
                row[j] -= vi * p[j] + wi * v[j];
            }
        }

        if let Some(q) = qt.as_mut() {
            // Q^T <- H_k Q^T on rows base..n.
            let y = &mut y[..n];
            y.iter_mut().for_each(|x| *x = 0.0);
            for i in 0..m {
                let row = &q[(base + i) * n..(base + i + 1) * n];
                let vi = v[i];
                for c in 0..n {
                    y[c] += vi * row[c];
                }
            }
            for i in 0..m {
                let f = beta * v[i];
                let row = &mut q[(base + i) * n..(base + i + 1) * n];
                for c in 0..n {
                    row[c] -= f * y[c];
                }
            }
        }
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2];
        diag[n - 1] = a[(n - 1) * n + n - 1];
        off[n - 2] = a[(n - 1) * n + n - 2];
    } else if n == 1 {
        diag[0] = a[0];
    }
    Reduction {
        tri: SymTridiagonal::new(diag, off),
        qt,
    }
}
