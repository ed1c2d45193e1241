//! Inertia of `A - sigma I` by eliminating degree-2 chains exactly.
//!
//! Every maximal run of degree-2 vertices is a path whose shifted
//! adjacency block has explicit `LDL^T` pivots. Eliminating those blocks
//! leaves a Schur complement on the remaining "core" vertices, and inertia
//! is additive across the elimination. For `|sigma|` near or beyond 2 the
//! chain pivots stay well away from zero, so long subdivided stretches cost
//! `O(length)` instead of joining a dense factorization.

use super::householder::tridiagonalize;
use super::tridiagonal::SturmCount;
use super::EigenError;
use crate::graph::{internal_paths, Graph};

/// Shifts closer to the interior of `(-2, 2)` than this use the dense route.
const MIN_ABS_SHIFT: f64 = 2.0 - 1e-6;
/// Smallest chain pivot magnitude accepted before falling back.
const MIN_CHAIN_PIVOT: f64 = 0.25;

#[derive(Debug, Clone, Copy)]
struct Chain {
    start: usize,
    end: usize,
    interior: usize,
}

/// Chain/core decomposition of a graph.
#[derive(Debug, Clone)]
pub struct Condensation {
    n: usize,
    core: Vec<usize>,
    core_edges: Vec<(usize, usize)>,
    chains: Vec<Chain>,
}

/// Sturm count of the condensed problem plus the scale its pivots refer to.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CondensedCount {
    pub count: SturmCount,
    pub scale: f64,
}

impl Condensation {
    /// `None` when the graph has no degree-2 vertex to eliminate.
    pub fn new(g: &Graph) -> Option<Self> {
        let ip = internal_paths(g);
        if ip.paths.is_empty() && ip.cycles.is_empty() {
            return None;
        }
        let n = g.n();
        let mut is_core: Vec<bool> = (0..n).map(|v| g.degree(v) != 2).collect();
        for c in &ip.cycles {
            is_core[c[0]] = true;
        }
        let core: Vec<usize> = (0..n).filter(|&v| is_core[v]).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in core.iter().enumerate() {
            local[v] = i;
        }
        let core_edges = g
            .edges()
            .iter()
            .filter(|&&(u, v)| g.degree(u) != 2 && g.degree(v) != 2)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        let mut chains: Vec<Chain> = ip
            .paths
            .iter()
            .map(|p| Chain {
                start: local[p.start()],
                end: local[p.end()],
                interior: p.interior().len(),
            })
            .collect();
        chains.extend(ip.cycles.iter().map(|c| Chain {
            start: local[c[0]],
            end: local[c[0]],
            interior: c.len() - 1,
        }));
        Some(Self {
            n,
            core,
            core_edges,
            chains,
        })
    }

    pub fn core_size(&self) -> usize {
        self.core.len()
    }

    /// Vertices removed by the elimination.
    pub fn eliminated(&self) -> usize {
        self.n - self.core.len()
    }

    /// Eigenvalues of `A` below `sigma`, or `None` when the shift is outside
    /// the range where chain elimination is numerically safe.
    pub(crate) fn sturm(&self, sigma: f64, cap: usize) -> Result<Option<CondensedCount>, EigenError> {
        if sigma.is_nan() || sigma.abs() < MIN_ABS_SHIFT {
            return Ok(None);
        }
        let k = self.core.len();
        if k > cap {
            return Err(EigenError::Capacity { n: k, cap });
        }
        let mut s = vec![0.0; k * k];
        for i in 0..k {
            s[i * k + i] = -sigma;
        }
        for &(u, v) in &self.core_edges {
            s[u * k + v] += 1.0;
            s[v * k + u] += 1.0;
        }
        let mut below = 0;
        for ch in &self.chains {
            let mut q = -sigma;
            let mut inv_prod = 1.0;
            for j in 0..ch.interior {
                if j > 0 {
                    q = -sigma - 1.0 / q;
                }
                if q.abs() < MIN_CHAIN_PIVOT {
                    return Ok(None);
                }
                if q < 0.0 {
                    below += 1;
                }
                inv_prod /= q;
            }
            // Corner entries of the inverse of the chain block.
            let g_end = 1.0 / q;
            let sign = if ch.interior % 2 == 1 { 1.0 } else { -1.0 };
            let g_cross = sign * inv_prod;
            let (a, b) = (ch.start, ch.end);
            s[a * k + a] -= g_end;
            s[b * k + b] -= g_end;
            if a == b {
                s[a * k + a] -= 2.0 * g_cross;
            } else {
                s[a * k + b] -= g_cross;
                s[b * k + a] -= g_cross;
            }
        }
        let tri = tridiagonalize(s, k, false).tri;
        let c = tri.sturm(0.0);
        Ok(Some(CondensedCount {
            count: SturmCount {
                below: below + c.below,
                min_pivot: c.min_pivot,
            },
            scale: tri.norm_inf(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::full_spectrum;
    use crate::graph::{complete, cycle, path, spider, square_with_pendant, subdivide, EdgeSubset};

    fn agrees(g: &Graph, shifts: &[f64]) {
        let c = Condensation::new(g).expect("has chains");
        let s = full_spectrum(g).unwrap();
        for &sigma in shifts {
            let got = c.sturm(sigma, 4000).unwrap().expect("shift accepted").count.below;
            assert_eq!(got, s.count_below(sigma), "sigma = {sigma}");
        }
    }

    #[test]
    fn matches_dense_on_families() {
        let shifts = [-3.0, -2.2, -2.0 - 1e-7, 2.0 + 1e-7, 2.05, 2.12, 2.2, 3.5];
        agrees(&spider(3, 12), &shifts);
        agrees(&path(9), &shifts);
        agrees(&cycle(8), &[-2.5, 2.5, -2.0 - 1e-7, 2.0 + 1e-7]);
        agrees(&cycle(7).disjoint_union(&complete(4)), &shifts);
        let k4 = complete(4);
        agrees(&subdivide(&k4, &EdgeSubset::all(&k4), 9).unwrap(), &shifts);
        let f = square_with_pendant();
        for t in 2..6 {
            agrees(&subdivide(&f, &EdgeSubset::new(&f, [0]).unwrap(), t).unwrap(), &shifts);
        }
    }

    #[test]
    fn interior_shift_is_declined() {
        let c = Condensation::new(&spider(3, 4)).unwrap();
        assert!(c.sturm(1.0, 4000).unwrap().is_none());
        assert!(c.sturm(f64::NAN, 4000).unwrap().is_none());
    }

    #[test]
    fn no_chains_no_condensation() {
        assert!(Condensation::new(&complete(5)).is_none());
    }

    #[test]
    fn core_sizes() {
        let k4 = complete(4);
        let g = subdivide(&k4, &EdgeSubset::all(&k4), 64).unwrap();
        let c = Condensation::new(&g).unwrap();
        assert_eq!(c.core_size(), 4);
        assert_eq!(c.eliminated(), 378);
        assert_eq!(Condensation::new(&cycle(6)).unwrap().core_size(), 1);
    }

    #[test]
    fn core_cap() {
        let c = Condensation::new(&spider(5, 3)).unwrap();
        assert!(matches!(c.sturm(3.0, 1), Err(EigenError::Capacity { .. })));
    }
}
