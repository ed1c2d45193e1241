use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{check_grid, check_subset, outside_counts, ExperimentError, GraphSpec, SweepConfig};
use crate::eigen::{extreme_eigenvalues, full_spectrum_with, EigenError, Side, SolverConfig};
use crate::graph::{high_degree_set, EdgeSubset, FamilyKind, Graph, SubdivisionFamily};
use crate::limits::{subdivision_limit, DegreeSequence};
use crate::tolerances::INTERLACING;

/// Agreement required between the dense and iterative solvers at the crossover.
const CROSSOVER_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverRoute {
    Dense,
    Iterative,
}

/// Selected eigenvalues of `G_{2t+2}` paired with an `H_t` point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignedPoint {
    pub t: usize,
    pub n: usize,
    pub largest: Vec<Option<f64>>,
    pub smallest: Vec<Option<f64>>,
}

/// One grid point. `largest[i]` is `lambda_k` and `smallest[i]` is
/// `lambda_{n-k+1}` for `k = ks[i]`; `None` when `k > n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TracePoint {
    pub t: usize,
    pub n: usize,
    pub route: SolverRoute,
    pub largest: Vec<Option<f64>>,
    pub smallest: Vec<Option<f64>>,
    /// `m(2, inf)`
    pub m_above: usize,
    /// `m(-inf, -2)`
    pub m_below: usize,
    /// An eigenvalue sits within the shift tolerance of `2` or `-2`.
    pub ambiguous: bool,
    /// `|largest[i] - prediction[i]|`; empty without predictions.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gap_largest: Vec<Option<f64>>,
    /// `|smallest[i] + prediction[i]|`; empty without predictions.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gap_smallest: Vec<Option<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aligned: Option<AlignedPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Where and why a sweep stopped early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub t: usize,
    pub reason: String,
}

/// Dense versus iterative extremes on the last grid point below the cap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossCheck {
    pub t: usize,
    pub max_difference: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceTrace {
    pub base: GraphSpec,
    pub subset: Vec<usize>,
    pub kind: FamilyKind,
    pub ks: Vec<usize>,
    /// Requested grid; `points` may stop short when truncated.
    pub t_grid: Vec<usize>,
    /// `|Q|` of the base graph.
    pub q: usize,
    /// Limit of `lambda_k` per `ks[i]` when `S = E(G)`; the `k`-th smallest
    /// tends to the negative.
    pub predictions: Option<Vec<f64>>,
    pub points: Vec<TracePoint>,
    pub truncation: Option<Truncation>,
    pub crosscheck: Option<CrossCheck>,
}

/// Outcome of the structural checks on a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceChecks {
    /// `H_t` sequences monotone in `t` (`None` for the `G` family).
    pub monotone: Option<bool>,
    /// `lambda_k(H_t) <= lambda_k(G_{2t+2})` and the mirror for the smallest.
    pub sandwich: Option<bool>,
    /// Every count at most `|Q|`.
    pub count_bound: bool,
    pub violations: Vec<String>,
}

impl TraceChecks {
    pub fn passed(&self) -> bool {
        self.monotone != Some(false) && self.sandwich != Some(false) && self.count_bound
    }
}

impl ConvergenceTrace {
    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }

    fn k_index(&self, k: usize) -> Option<usize> {
        self.ks.iter().position(|&x| x == k)
    }

    /// `(t, |lambda_k - prediction|)` along the grid.
    pub fn gap_series(&self, k: usize) -> Vec<(usize, f64)> {
        let Some(i) = self.k_index(k) else {
            return Vec::new();
        };
        self.points
            .iter()
            .filter_map(|p| p.gap_largest.get(i).copied().flatten().map(|g| (p.t, g)))
            .collect()
    }

    /// `(t, |lambda_k(H_t) - lambda_k(G_{2t+2})|)` for `H` traces.
    pub fn family_gap_series(&self, k: usize) -> Vec<(usize, f64)> {
        let Some(i) = self.k_index(k) else {
            return Vec::new();
        };
        self.points
            .iter()
            .filter_map(|p| {
                let a = p.aligned.as_ref()?;
                Some((p.t, (a.largest[i]? - p.largest[i]?).abs()))
            })
            .collect()
    }

    pub fn checks(&self) -> TraceChecks {
        let mut violations = Vec::new();
        let monotone = (self.kind == FamilyKind::H).then(|| {
            let mut ok = true;
            for w in self.points.windows(2) {
                for (i, &k) in self.ks.iter().enumerate() {
                    if let (Some(a), Some(b)) = (w[0].largest[i], w[1].largest[i]) {
                        if b < a - INTERLACING {
                            ok = false;
                            violations.push(format!("lambda_{k}(H) decreases from t={} to t={}", w[0].t, w[1].t));
                        }
                    }
                    if let (Some(a), Some(b)) = (w[0].smallest[i], w[1].smallest[i]) {
                        if b > a + INTERLACING {
                            ok = false;
                            violations.push(format!(
                                "{k}-th smallest of H increases from t={} to t={}",
                                w[0].t, w[1].t
                            ));
                        }
                    }
                }
            }
            ok
        });
        let sandwich = (self.kind == FamilyKind::H).then(|| {
            let mut ok = true;
            for p in &self.points {
                let Some(a) = &p.aligned else {
                    ok = false;
                    violations.push(format!("no aligned G point at t={}", p.t));
                    continue;
                };
                for (i, &k) in self.ks.iter().enumerate() {
                    if let (Some(h), Some(g)) = (p.largest[i], a.largest[i]) {
                        if h > g + INTERLACING {
                            ok = false;
                            violations.push(format!("lambda_{k}(H_{}) exceeds lambda_{k}(G_{})", p.t, a.t));
                        }
                    }
                    if let (Some(h), Some(g)) = (p.smallest[i], a.smallest[i]) {
                        if h < g - INTERLACING {
                            ok = false;
                            violations.push(format!("{k}-th smallest of H_{} below G_{}", p.t, a.t));
                        }
                    }
                }
            }
            ok
        });
        let mut count_bound = true;
        for p in &self.points {
            if p.m_above > self.q || p.m_below > self.q {
                count_bound = false;
                violations.push(format!(
                    "counts ({}, {}) exceed |Q| = {} at t={}",
                    p.m_above, p.m_below, self.q, p.t
                ));
            }
        }
        TraceChecks {
            monotone,
            sandwich,
            count_bound,
            violations,
        }
    }
}

struct Extremes {
    route: SolverRoute,
    largest: Vec<Option<f64>>,
    smallest: Vec<Option<f64>>,
}

fn extremes(g: &Graph, ks: &[usize], route: SolverRoute, cfg: &SolverConfig) -> Result<Extremes, EigenError> {
    let n = g.n();
    let pick = |vals: &[f64]| -> Vec<Option<f64>> {
        ks.iter()
            .map(|&k| k.checked_sub(1).and_then(|i| vals.get(i).copied()))
            .collect()
    };
    match route {
        SolverRoute::Dense => {
            let sp = full_spectrum_with(g, cfg)?;
            let mut asc = sp.eigenvalues.clone();
            asc.reverse();
            Ok(Extremes {
                route,
                largest: pick(&sp.eigenvalues),
                smallest: pick(&asc),
            })
        }
        SolverRoute::Iterative => {
            let kmax = ks.iter().copied().max().unwrap_or(1).min(n);
            if kmax == 0 {
                return Ok(Extremes {
                    route,
                    largest: vec![None; ks.len()],
                    smallest: vec![None; ks.len()],
                });
            }
            let top = extreme_eigenvalues(g, kmax, Side::Largest, cfg)?;
            let bottom = extreme_eigenvalues(g, kmax, Side::Smallest, cfg)?;
            Ok(Extremes {
                route,
                largest: pick(&top),
                smallest: pick(&bottom),
            })
        }
    }
}

fn route_for(n: usize, cfg: &SolverConfig) -> SolverRoute {
    if n <= cfg.dense_cap {
        SolverRoute::Dense
    } else {
        SolverRoute::Iterative
    }
}

fn max_difference(a: &[Option<f64>], b: &[Option<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .filter_map(|(x, y)| Some((x.as_ref()? - y.as_ref()?).abs()))
        .fold(0.0, f64::max)
}

fn gaps(values: &[Option<f64>], targets: &[f64], sign: f64) -> Vec<Option<f64>> {
    values
        .iter()
        .zip(targets)
        .map(|(v, &p)| v.map(|v| (v - sign * p).abs()))
        .collect()
}

/// Selected extreme eigenvalues and outside counts of `G_t(S)` or `H_t(S)`
/// over `t_grid`.
///
/// Points above the dense cap use the iterative solver for eigenvalues and
/// chain condensation for counts; the last dense point before the crossover
/// is re-solved iteratively and compared. A failing point truncates the
/// trace there.
pub fn run_convergence(
    g: &Graph,
    s: &EdgeSubset,
    kind: FamilyKind,
    ks: &[usize],
    t_grid: &[usize],
    cfg: &SweepConfig,
) -> Result<ConvergenceTrace, ExperimentError> {
    check_grid(t_grid)?;
    check_subset(g, s)?;
    if ks.is_empty() || ks.contains(&0) {
        return Err(ExperimentError::Argument("k values must be nonempty and >= 1".into()));
    }
    let family = SubdivisionFamily::new(g.clone(), s.clone(), kind)?;
    let aligned_family = SubdivisionFamily::new(g.clone(), s.clone(), FamilyKind::G)?;
    let predictions = if s.is_all_of(g) {
        DegreeSequence::from_graph(g)
            .ok()
            .map(|ds| {
                ks.iter()
                    .map(|&k| subdivision_limit(&ds, k))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?
    } else {
        None
    };
    let solver = cfg.solver;

    let evaluate = |&t: &usize| -> Result<TracePoint, ExperimentError> {
        let start = Instant::now();
        let member = family.member(t)?;
        let n = member.n();
        let ex = extremes(&member, ks, route_for(n, &solver), &solver)?;
        let counts = outside_counts(&member, &solver)?;
        let aligned = if kind == FamilyKind::H {
            let ga = aligned_family.member(2 * t + 2)?;
            let ax = extremes(&ga, ks, route_for(ga.n(), &solver), &solver)?;
            Some(AlignedPoint {
                t: 2 * t + 2,
                n: ga.n(),
                largest: ax.largest,
                smallest: ax.smallest,
            })
        } else {
            None
        };
        let (gap_largest, gap_smallest) = match &predictions {
            Some(p) => (gaps(&ex.largest, p, 1.0), gaps(&ex.smallest, p, -1.0)),
            None => (Vec::new(), Vec::new()),
        };
        Ok(TracePoint {
            t,
            n,
            route: ex.route,
            largest: ex.largest,
            smallest: ex.smallest,
            m_above: counts.above,
            m_below: counts.below,
            ambiguous: counts.ambiguous,
            gap_largest,
            gap_smallest,
            aligned,
            wall_ms: cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        })
    };

    let results = cfg.execution.map(t_grid, evaluate);
    let mut points = Vec::with_capacity(t_grid.len());
    let mut truncation = None;
    for (r, &t) in results.into_iter().zip(t_grid) {
        match r {
            Ok(p) => points.push(p),
            Err(e) => {
                truncation = Some(Truncation {
                    t,
                    reason: e.to_string(),
                });
                break;
            }
        }
    }

    let crossover = t_grid
        .windows(2)
        .position(|w| family.order(w[0]) <= solver.dense_cap && family.order(w[1]) > solver.dense_cap);
    let crosscheck = match crossover.and_then(|i| points.get(i)) {
        Some(p) => {
            let member = family.member(p.t)?;
            let it = extremes(&member, ks, SolverRoute::Iterative, &solver);
            Some(match it {
                Ok(it) => {
                    let d = max_difference(&p.largest, &it.largest).max(max_difference(&p.smallest, &it.smallest));
                    CrossCheck {
                        t: p.t,
                        max_difference: d,
                        agrees: d <= CROSSOVER_AGREEMENT,
                    }
                }
                Err(_) => CrossCheck {
                    t: p.t,
                    max_difference: f64::MAX,
                    agrees: false,
                },
            })
        }
        None => None,
    };

    Ok(ConvergenceTrace {
        base: GraphSpec::of(g),
        subset: s.indices().to_vec(),
        kind,
        ks: ks.to_vec(),
        t_grid: t_grid.to_vec(),
        q: high_degree_set(g).len(),
        predictions,
        points,
        truncation,
        crosscheck,
    })
}
