//! `subspec`: spectra of edge-subdivided graph families from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 malformed
//! arguments or input, 3 capacity or solver failure, 4 I/O failure.

mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(error::EXIT_CHECK_FAILED),
        Err(e) => e.report(),
    }
}
