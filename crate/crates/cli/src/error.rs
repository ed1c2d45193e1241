//! Failure categories and their stable exit codes.

use std::path::PathBuf;
use std::process::ExitCode;

use subspec::eigen::EigenError;
use subspec::experiments::ExperimentError;
use subspec::graph::GraphError;
use subspec::lemmas::LemmaError;
use subspec::limits::LimitsError;
use thiserror::Error;

/// A check ran and failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Malformed arguments or input files.
pub const EXIT_USAGE: u8 = 2;
/// Capacity limit or solver failure.
pub const EXIT_SOLVER: u8 = 3;
/// Reading or writing a file failed.
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error("{0}")]
    Solver(#[from] EigenError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("writing standard output: {0}")]
    Stdout(#[source] std::io::Error),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Graph(_) | CliError::Limits(_) => EXIT_USAGE,
            CliError::Solver(e) => solver_code(e),
            CliError::Io { .. } | CliError::Stdout(_) => EXIT_IO,
            CliError::Experiment(e) => match e {
                ExperimentError::Graph(_) | ExperimentError::Limits(_) | ExperimentError::Argument(_) => EXIT_USAGE,
                ExperimentError::Eigen(e) => solver_code(e),
                ExperimentError::Io { .. } | ExperimentError::Format { .. } => EXIT_IO,
            },
            CliError::Lemma(e) => match e {
                LemmaError::Graph(_) | LemmaError::Argument(_) => EXIT_USAGE,
                LemmaError::Eigen(e) => solver_code(e),
                LemmaError::Partition(_) => EXIT_SOLVER,
            },
        }
    }

    /// Follow-up advice printed after the message.
    pub fn hint(&self) -> Option<&'static str> {
        let capacity = |e: &EigenError| matches!(e, EigenError::Capacity { .. });
        let hit = match self {
            CliError::Solver(e) => capacity(e),
            CliError::Experiment(ExperimentError::Eigen(e)) => capacity(e),
            CliError::Lemma(LemmaError::Eigen(e)) => capacity(e),
            _ => false,
        };
        hit.then_some("pass --extremes for iterative extreme eigenvalues, --interval for counts, or raise --dense-cap")
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("error: {self}");
        if let Some(h) = self.hint() {
            eprintln!("hint: {h}");
        }
        ExitCode::from(self.exit_code())
    }
}

fn solver_code(e: &EigenError) -> u8 {
    match e {
        EigenError::Argument(_) => EXIT_USAGE,
        _ => EXIT_SOLVER,
    }
}
