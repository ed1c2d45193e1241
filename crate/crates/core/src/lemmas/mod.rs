//! Numerical checkers for eigenvector decay and unimodality on internal
//! paths, and for the interval-count bounds under subdivision.
//!
//! Every check is gated on its hypothesis: when the precondition fails the
//! verdict is [`Verdict::NotApplicable`], never [`Verdict::Fail`].

mod decay;
mod partition;
mod principal;
mod props;
mod unimodal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{full_eigensystem, EigenError, SolverConfig};
use crate::graph::{high_degree_set, internal_paths, EdgeSubset, Graph, GraphError};

pub use decay::{
    check_partition_decay, check_path_decay, tail_threshold_linear, tail_threshold_square, DecayKind, DecayReport,
    LayerCheck, TailCheck,
};
pub use partition::DistancePartition;
pub use principal::{check_principal_unimodality, PatternCheck, PrincipalCase, PrincipalReport};
pub use props::{check_q_bound, check_single_subdivision_monotonicity, QBoundReport, SubdivisionMonotonicity};
pub use unimodal::{check_unimodality, UnimodalityReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LemmaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("inconsistent partition: {0}")]
    Partition(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

/// Which checks [`run_suite`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaSelector {
    Decay,
    Unimodality,
    Principal,
    Prop61,
    Prop62,
    All,
}

impl LemmaSelector {
    fn includes(self, other: LemmaSelector) -> bool {
        self == LemmaSelector::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub selector: LemmaSelector,
    /// Tail-sum target for the path decay check.
    pub epsilon: f64,
    /// Subset and stretch length for the `|Q|` bound.
    pub subset: Option<EdgeSubset>,
    pub t: usize,
    pub solver: SolverConfig,
}

impl SuiteOptions {
    pub fn new(selector: LemmaSelector) -> Self {
        Self {
            selector,
            epsilon: 1e-3,
            subset: None,
            t: 10,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.not_applicable
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub partition_decay: Tally,
    pub path_decay: Tally,
    pub unimodality: Tally,
    pub principal: Tally,
    pub prop61: Tally,
    pub prop62: Tally,
}

/// A failed check with its full report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Finding {
    PartitionDecay(DecayReport),
    PathDecay(DecayReport),
    Unimodality(UnimodalityReport),
    Principal(PrincipalReport),
    Prop61(SubdivisionMonotonicity),
    Prop62(QBoundReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub selector: LemmaSelector,
    pub n: usize,
    pub internal_paths: usize,
    pub tallies: Tallies,
    pub failures: Vec<Finding>,
    pub q_bound: Option<QBoundReport>,
    pub verdict: Verdict,
}

/// Runs the selected checks over every eigenpair and maximal internal path
/// of `g`.
pub fn run_suite(g: &Graph, opts: &SuiteOptions) -> Result<SuiteReport, LemmaError> {
    let sel = opts.selector;
    let paths = internal_paths(g).paths;
    let mut tallies = Tallies::default();
    let mut failures = Vec::new();
    let mut record = |tally: &mut Tally, v: Verdict, f: &dyn Fn() -> Finding| {
        tally.add(v);
        if v == Verdict::Fail {
            failures.push(f());
        }
    };

    let spectral = sel.includes(LemmaSelector::Decay) || sel.includes(LemmaSelector::Unimodality);
    if spectral {
        let es = full_eigensystem(g, &opts.solver)?;
        let q = high_degree_set(g);
        let part = if q.is_empty() {
            None
        } else {
            Some(DistancePartition::new(g, &q)?)
        };
        for pair in es.pairs() {
            if sel.includes(LemmaSelector::Decay) {
                if let Some(part) = &part {
                    let r = check_partition_decay(g, part, &pair)?;
                    record(&mut tallies.partition_decay, r.verdict, &|| {
                        Finding::PartitionDecay(r.clone())
                    });
                }
                for p in &paths {
                    let r = check_path_decay(g, p, &pair, opts.epsilon)?;
                    record(&mut tallies.path_decay, r.verdict, &|| Finding::PathDecay(r.clone()));
                }
            }
            if sel.includes(LemmaSelector::Unimodality) {
                for p in &paths {
                    let r = check_unimodality(g, p, &pair)?;
                    record(&mut tallies.unimodality, r.verdict, &|| Finding::Unimodality(r.clone()));
                }
            }
        }
    }
    if sel.includes(LemmaSelector::Principal) {
        if g.is_connected() {
            for p in &paths {
                let r = check_principal_unimodality(g, p, &opts.solver)?;
                record(&mut tallies.principal, r.verdict, &|| Finding::Principal(r.clone()));
            }
        } else {
            tallies.principal.add(Verdict::NotApplicable);
        }
    }
    if sel.includes(LemmaSelector::Prop61) {
        for e in 0..g.edge_count() {
            let r = check_single_subdivision_monotonicity(g, e, &opts.solver)?;
            record(&mut tallies.prop61, r.verdict, &|| Finding::Prop61(r.clone()));
        }
    }
    let mut q_bound = None;
    if sel.includes(LemmaSelector::Prop62) {
        let subset = opts.subset.clone().unwrap_or_else(|| EdgeSubset::all(g));
        let r = check_q_bound(g, &subset, opts.t, &opts.solver)?;
        record(&mut tallies.prop62, r.verdict, &|| Finding::Prop62(r.clone()));
        q_bound = Some(r);
    }

    let all = [
        tallies.partition_decay,
        tallies.path_decay,
        tallies.unimodality,
        tallies.principal,
        tallies.prop61,
        tallies.prop62,
    ];
    let verdict = if all.iter().any(|t| t.fail > 0) {
        Verdict::Fail
    } else if all.iter().any(|t| t.pass > 0) {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    };
    Ok(SuiteReport {
        selector: sel,
        n: g.n(),
        internal_paths: paths.len(),
        tallies,
        failures,
        q_bound,
        verdict,
    })
}
