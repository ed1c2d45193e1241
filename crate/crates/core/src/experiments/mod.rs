//! Sweep harness: convergence traces over `t`, interval-count
//! stabilization, conjecture scans over random corpora, and persistence.
//!
//! Sweep points and corpus instances are independent; they are evaluated
//! under an [`Execution`] strategy and always aggregated in input order.

mod convergence;
mod persist;
mod scan;
mod stabilization;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{EigenError, InertiaCounter, SolverConfig};
use crate::exec::Execution;
use crate::graph::{EdgeSubset, Graph, GraphError};
use crate::limits::LimitsError;

pub use convergence::{
    run_convergence, AlignedPoint, ConvergenceTrace, CrossCheck, SolverRoute, TraceChecks, TracePoint, Truncation,
};
pub use persist::{load_json, persist, Envelope, Format, Persistable, SCHEMA_VERSION};
pub use scan::{
    rerun_bundle, scan_conjectures, scan_instance, CandidateReason, ConjectureScan, CorpusSpec, ReproBundle,
    ScanCounts, ScanReport, ScanVerdict, SkippedInstance, SubsetPolicy,
};
pub use stabilization::{
    detect_onset, oscillation_fingerprint, run_stabilization, CountSequence, Onset, OscillationFingerprint,
    SequenceKind, StabilizationReport,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

/// Solver and scheduling options shared by every sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SweepConfig {
    pub solver: SolverConfig,
    pub execution: Execution,
    /// Record per-point wall time. Off by default so outputs are byte-stable.
    pub timing: bool,
}

/// Serializable form of a graph: vertex count plus edge list in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn of(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied())
    }
}

/// `m(2, inf)` and `m(-inf, -2)` at one graph, with sliver flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OutsideCounts {
    pub above: usize,
    pub below: usize,
    pub ambiguous: bool,
}

pub(crate) fn outside_counts(g: &Graph, cfg: &SolverConfig) -> Result<OutsideCounts, EigenError> {
    let c = InertiaCounter::new(g, cfg);
    let above = c.interval(2.0, f64::INFINITY)?;
    let below = c.interval(f64::NEG_INFINITY, -2.0)?;
    Ok(OutsideCounts {
        above: above.count,
        below: below.count,
        ambiguous: above.ambiguous() || below.ambiguous(),
    })
}

pub(crate) fn check_grid(t_grid: &[usize]) -> Result<(), ExperimentError> {
    if t_grid.is_empty() {
        return Err(ExperimentError::Argument("t-grid is empty".into()));
    }
    if t_grid[0] == 0 {
        return Err(ExperimentError::Argument("t-grid values must be >= 1".into()));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::Argument("t-grid must be strictly increasing".into()));
    }
    Ok(())
}

pub(crate) fn check_subset(g: &Graph, s: &EdgeSubset) -> Result<(), ExperimentError> {
    if s.graph_id() != g.id() {
        return Err(GraphError::ForeignSubset.into());
    }
    Ok(())
}
