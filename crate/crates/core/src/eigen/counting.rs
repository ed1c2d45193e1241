//! Interval eigenvalue counts from inertia, without full spectra.

use std::cell::OnceCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::condense::Condensation;
use super::tridiagonal::SymTridiagonal;
use super::{reduce, EigenError, SolverConfig};
use crate::graph::Graph;
use crate::tolerances::BREAKDOWN;

/// Interval endpoint on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    NegInf,
    Finite(f64),
    PosInf,
}

impl From<f64> for Endpoint {
    fn from(x: f64) -> Self {
        if x == f64::NEG_INFINITY {
            Endpoint::NegInf
        } else if x == f64::INFINITY {
            Endpoint::PosInf
        } else {
            Endpoint::Finite(x)
        }
    }
}

impl Endpoint {
    pub fn value(self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::Finite(x) => x,
            Endpoint::PosInf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::Finite(x) => write!(f, "{x}"),
            Endpoint::PosInf => f.write_str("inf"),
        }
    }
}

/// Eigenvalues found within `tau` of a finite endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliverFlag {
    pub endpoint: f64,
    pub eigenvalues: usize,
}

/// `m_G(a, b)`: eigenvalues strictly inside the open interval `(a, b)`.
///
/// Eigenvalues within `shift_tolerance` of a finite endpoint are counted
/// as lying on it (excluded) and reported in `slivers`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalCount {
    pub a: Endpoint,
    pub b: Endpoint,
    pub count: usize,
    pub shift_tolerance: f64,
    pub slivers: Vec<SliverFlag>,
}

impl IntervalCount {
    /// Some eigenvalue sits within the tolerance of an endpoint.
    pub fn ambiguous(&self) -> bool {
        !self.slivers.is_empty()
    }
}

/// Which factorization answers a Sturm query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Chain elimination when it saves work or the graph exceeds the dense
    /// cap, dense otherwise.
    Auto,
    Dense,
    Condensed,
}

#[derive(Debug, Clone, Copy)]
struct RawCount {
    below: usize,
    min_pivot: f64,
    scale: f64,
}

/// Repeated inertia queries on one graph, sharing its factorizations.
#[derive(Debug)]
pub struct InertiaCounter<'g> {
    graph: &'g Graph,
    cfg: SolverConfig,
    condensed: Option<Condensation>,
    dense: OnceCell<Result<SymTridiagonal, EigenError>>,
}

impl<'g> InertiaCounter<'g> {
    pub fn new(graph: &'g Graph, cfg: &SolverConfig) -> Self {
        Self::with_route(graph, cfg, Route::Auto)
    }

    pub fn with_route(graph: &'g Graph, cfg: &SolverConfig, route: Route) -> Self {
        let condensed = match route {
            Route::Dense => None,
            Route::Condensed => Condensation::new(graph),
            Route::Auto => {
                Condensation::new(graph).filter(|c| graph.n() > cfg.dense_cap || 2 * c.eliminated() >= graph.n())
            }
        };
        Self {
            graph,
            cfg: *cfg,
            condensed,
            dense: OnceCell::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    fn dense(&self) -> Result<&SymTridiagonal, EigenError> {
        self.dense
            .get_or_init(|| reduce(self.graph, &self.cfg, false).map(|r| r.tri))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn raw(&self, sigma: f64) -> Result<RawCount, EigenError> {
        if let Some(c) = &self.condensed {
            if let Some(r) = c.sturm(sigma, self.cfg.dense_cap)? {
                return Ok(RawCount {
                    below: r.count.below,
                    min_pivot: r.count.min_pivot,
                    scale: r.scale,
                });
            }
        }
        let tri = self.dense()?;
        let s = tri.sturm(sigma);
        Ok(RawCount {
            below: s.below,
            min_pivot: s.min_pivot,
            scale: tri.norm_inf(),
        })
    }

    /// Plain Sturm count at `sigma` with no breakdown handling.
    pub fn sturm_count(&self, sigma: f64) -> Result<usize, EigenError> {
        Ok(self.raw(sigma)?.below)
    }

    /// Eigenvalues strictly below `sigma`. A near-singular pivot triggers
    /// retries at `sigma -/+ tau`; disagreeing retries are an error.
    pub fn count_below(&self, sigma: f64) -> Result<usize, EigenError> {
        if sigma.is_nan() {
            return Err(EigenError::Argument("shift is NaN".into()));
        }
        if self.n() == 0 {
            return Ok(0);
        }
        if sigma == f64::NEG_INFINITY {
            return Ok(0);
        }
        if sigma == f64::INFINITY {
            return Ok(self.n());
        }
        let r = self.raw(sigma)?;
        if r.min_pivot >= BREAKDOWN * r.scale.max(1.0) {
            return Ok(r.below);
        }
        let tau = self.cfg.tau;
        let below = self.raw(sigma - tau)?.below;
        let above = self.raw(sigma + tau)?.below;
        if below == above {
            Ok(below)
        } else {
            Err(EigenError::Ambiguous { sigma, below, above })
        }
    }

    /// `m_G(a, b)` with sliver bookkeeping at finite endpoints.
    pub fn interval(&self, a: f64, b: f64) -> Result<IntervalCount, EigenError> {
        if a.is_nan() || b.is_nan() || a >= b || a == f64::INFINITY || b == f64::NEG_INFINITY {
            return Err(EigenError::Argument(format!("invalid interval ({a}, {b})")));
        }
        let tau = self.cfg.tau;
        let mut slivers = Vec::new();
        let lower = if a == f64::NEG_INFINITY {
            0
        } else {
            let inner = self.raw(a + tau)?.below;
            let outer = self.raw(a - tau)?.below;
            if inner > outer {
                slivers.push(SliverFlag {
                    endpoint: a,
                    eigenvalues: inner - outer,
                });
            }
            inner
        };
        let upper = if b == f64::INFINITY {
            self.n()
        } else {
            let inner = self.raw(b - tau)?.below;
            let outer = self.raw(b + tau)?.below;
            if outer > inner {
                slivers.push(SliverFlag {
                    endpoint: b,
                    eigenvalues: outer - inner,
                });
            }
            inner
        };
        Ok(IntervalCount {
            a: a.into(),
            b: b.into(),
            count: upper.saturating_sub(lower),
            shift_tolerance: tau,
            slivers,
        })
    }
}

/// Eigenvalues of `A(G)` strictly below `sigma`.
pub fn count_below(g: &Graph, sigma: f64) -> Result<usize, EigenError> {
    InertiaCounter::new(g, &SolverConfig::default()).count_below(sigma)
}

/// `m_G(a, b)`; infinite endpoints are `f64::NEG_INFINITY`/`f64::INFINITY`.
pub fn m_interval(g: &Graph, a: f64, b: f64) -> Result<IntervalCount, EigenError> {
    InertiaCounter::new(g, &SolverConfig::default()).interval(a, b)
}
