//! Command-line schema and value parsers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use subspec::eigen::Endpoint;

#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(name = "subspec", version, about = "Spectra of edge-subdivided graph families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GlobalOpts {
    /// Seed for iterative start vectors and random corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Interval-endpoint and shift-retry tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tau: f64,
    /// Largest dimension handled by dense routines.
    #[arg(long, global = true, default_value_t = 4000)]
    pub dense_cap: usize,
    /// Maximum accepted eigenpair residual.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub residual_bound: f64,
    /// Output file; the format follows `--format` or the extension.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,
    /// Record per-point wall time in sweep outputs.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Log configuration and progress to standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Full spectrum, selected eigenvalues or an interval count.
    Spectrum(SpectrumArgs),
    /// Writes G_t(S), or H_t(S) with --sever, as an edge list.
    Subdivide(SubdivideArgs),
    /// Runs the eigenvector lemma and interval-count checks.
    Verify(VerifyArgs),
    /// Predicted eigenvalue limits under full subdivision.
    Limits(LimitsArgs),
    /// Convergence trace or stabilization report over a t-grid.
    Sweep(SweepArgs),
    /// Scans a seeded random corpus for counterexample candidates.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SubsetOpts {
    /// Subdivide every edge.
    #[arg(long, conflicts_with_all = ["edges", "subset"])]
    pub all: bool,
    /// Edge indices, e.g. `0,2,5` or `0..3`.
    #[arg(long, value_parser = parse_usize_list, conflicts_with = "subset")]
    pub edges: Option<std::vec::Vec<usize>>,
    /// `all`, an index list, or a file containing either.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    pub input: PathBuf,
    /// 1-based indices `k` of the eigenvalues to report.
    #[arg(long, value_parser = parse_usize_list, conflicts_with = "interval")]
    pub k: Option<std::vec::Vec<usize>>,
    /// Report the k-th smallest instead of the k-th largest.
    #[arg(long)]
    pub smallest: bool,
    /// Use the iterative extreme-eigenvalue solver.
    #[arg(long)]
    pub extremes: bool,
    /// Count eigenvalues strictly inside `a,b`; `-inf`/`inf` allowed.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_interval)]
    pub interval: Option<(Endpoint, Endpoint)>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SubdivideArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub subset: SubsetOpts,
    #[arg(long)]
    pub t: usize,
    /// Build H_t(S) instead of G_t(S).
    #[arg(long)]
    pub sever: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaArg {
    Decay,
    Unimodality,
    Principal,
    Prop61,
    Prop62,
    All,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub lemma: LemmaArg,
    #[command(flatten)]
    pub subset: SubsetOpts,
    /// Stretch length for the outside-count bound.
    #[arg(long, default_value_t = 10)]
    pub t: usize,
    /// Tail-sum target for the path decay check.
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct LimitsArgs {
    /// Degree sequence, e.g. `3,3,3,3`.
    #[arg(long, value_parser = parse_usize_list, conflicts_with_all = ["graph", "spider"])]
    pub degrees: Option<std::vec::Vec<usize>>,
    /// Take the degree sequence from an edge-list file.
    #[arg(long, conflicts_with = "spider")]
    pub graph: Option<PathBuf>,
    /// Spider `(K_{1,d})_t`: the limit, or the radius at `--t`.
    #[arg(long)]
    pub spider: Option<usize>,
    #[arg(long, requires = "spider")]
    pub t: Option<usize>,
    /// 1-based indices `k`; defaults to `1..=n+1`.
    #[arg(long, value_parser = parse_usize_list, conflicts_with = "spider")]
    pub k: Option<std::vec::Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportArg {
    Convergence,
    Stabilization,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub subset: SubsetOpts,
    /// t-grid, e.g. `1..64` or `8,16,32,64`.
    #[arg(long, value_parser = parse_usize_list)]
    pub t: std::vec::Vec<usize>,
    #[arg(long, value_parser = parse_usize_list, default_value = "1..5")]
    pub k: std::vec::Vec<usize>,
    #[arg(long, value_enum, default_value = "g")]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "convergence")]
    pub report: ReportArg,
    /// Evaluate grid points one at a time.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetPolicyArg {
    All,
    Half,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    /// Vertex-count range, e.g. `8..12`.
    #[arg(long, value_parser = parse_range, default_value = "4..12")]
    pub n: (usize, usize),
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    #[arg(long, default_value_t = 20)]
    pub tmax: usize,
    #[arg(long, default_value_t = 50)]
    pub instances: usize,
    #[arg(long, value_enum, default_value = "half")]
    pub subset: SubsetPolicyArg,
    /// Redraw disconnected graphs.
    #[arg(long)]
    pub connected: bool,
    #[arg(long)]
    pub sequential: bool,
}

impl Cli {
    /// Compact JSON of the parsed configuration; parses back to `self`.
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    #[cfg(test)]
    pub fn from_canonical(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `a..b` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let s = s.trim();
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("not a nonnegative integer: {x:?}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|v| (v, v)),
    }
}

/// Comma-separated values and inclusive ranges: `1..5,8,16`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = parse_range(part)?;
        out.extend(a..=b);
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

fn parse_endpoint(s: &str) -> Result<f64, String> {
    match s.trim() {
        "-inf" => Ok(f64::NEG_INFINITY),
        "inf" | "+inf" => Ok(f64::INFINITY),
        x => x
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("bad interval endpoint {x:?}")),
    }
}

/// `a,b` with `a < b`.
pub fn parse_interval(s: &str) -> Result<(Endpoint, Endpoint), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let (a, b) = (parse_endpoint(a)?, parse_endpoint(b)?);
    if a >= b {
        return Err(format!("empty interval ({a}, {b})"));
    }
    Ok((a.into(), b.into()))
}
