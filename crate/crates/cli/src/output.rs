//! Number formatting, output destinations and CLI-level result records.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use subspec::eigen::{IntervalCount, Side, SolverConfig};
use subspec::experiments::{Envelope, Format, Persistable};
use subspec::lemmas::{SuiteReport, Tally};
use subspec::tolerances::Tolerances;

use crate::args::OutFormat;
use crate::error::CliError;

/// Environment variable naming the directory for persisted results when
/// `--out` is absent.
pub const OUT_DIR_VAR: &str = "SUBSPEC_OUT_DIR";

/// Eight decimals with trailing zeros trimmed; negative zero prints as `0`.
pub fn fmt_value(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let mut s = format!("{x:.8}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn format_of(explicit: Option<OutFormat>, path: Option<&Path>, fallback: Format) -> Format {
    match explicit {
        Some(OutFormat::Csv) => Format::Csv,
        Some(OutFormat::Json) => Format::Json,
        None => path.map_or(fallback, Format::from_path),
    }
}

/// `--out` if given, else `default_name` under the output directory
/// variable when set.
pub fn destination(out: Option<&Path>, default_name: impl FnOnce() -> String) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_path_buf());
    }
    std::env::var_os(OUT_DIR_VAR)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(default_name()))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(CliError::Stdout)
}

pub fn render<T: Persistable>(env: &Envelope<T>, format: Format) -> String {
    match format {
        Format::Json => env.to_json(),
        Format::Csv => env.to_csv(),
    }
}

/// `# key: value` lines carrying the run metadata for plain-text outputs.
pub fn provenance_lines(config: &str, solver: &SolverConfig) -> String {
    let tol = Tolerances {
        tau: solver.tau,
        residual_bound: solver.residual_bound,
        ..Tolerances::default()
    };
    format!(
        "# config: {config}\n# seed: {}\n# tolerances: {}\n",
        solver.seed,
        serde_json::to_string(&tol).expect("tolerances serialize")
    )
}

/// Result of `spectrum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SpectrumResult {
    /// All eigenvalues, descending.
    Full {
        n: usize,
        eigenvalues: Vec<f64>,
    },
    /// `lambda_k` (largest side) or the `k`-th smallest.
    Selected {
        n: usize,
        side: Side,
        iterative: bool,
        ks: Vec<usize>,
        values: Vec<f64>,
    },
    Interval {
        n: usize,
        count: IntervalCount,
    },
}

impl SpectrumResult {
    pub fn plain(&self) -> String {
        match self {
            SpectrumResult::Full { eigenvalues, .. }
            | SpectrumResult::Selected {
                values: eigenvalues, ..
            } => {
                let v: Vec<String> = eigenvalues.iter().map(|&x| fmt_value(x)).collect();
                format!("{}\n", v.join(" "))
            }
            SpectrumResult::Interval { count, .. } => format!("{}\n", count.count),
        }
    }
}

impl Persistable for SpectrumResult {
    const KIND: &'static str = "spectrum";

    fn csv_header(&self) -> Vec<String> {
        let cols: &[&str] = match self {
            SpectrumResult::Full { .. } => &["index", "value"],
            SpectrumResult::Selected { .. } => &["k", "value"],
            SpectrumResult::Interval { .. } => &["a", "b", "count", "sliver_eigenvalues"],
        };
        cols.iter().map(|c| c.to_string()).collect()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        match self {
            SpectrumResult::Full { eigenvalues, .. } => eigenvalues
                .iter()
                .enumerate()
                .map(|(i, &x)| vec![(i + 1).to_string(), x.to_string()])
                .collect(),
            SpectrumResult::Selected { ks, values, .. } => ks
                .iter()
                .zip(values)
                .map(|(k, x)| vec![k.to_string(), x.to_string()])
                .collect(),
            SpectrumResult::Interval { count, .. } => vec![vec![
                count.a.to_string(),
                count.b.to_string(),
                count.count.to_string(),
                count.slivers.iter().map(|s| s.eigenvalues).sum::<usize>().to_string(),
            ]],
        }
    }

    fn csv_notes(&self) -> Vec<String> {
        let n = match self {
            SpectrumResult::Full { n, .. }
            | SpectrumResult::Selected { n, .. }
            | SpectrumResult::Interval { n, .. } => n,
        };
        let mut notes = vec![format!("n: {n}")];
        if let SpectrumResult::Selected { side, iterative, .. } = self {
            notes.push(format!(
                "side: {}",
                if *side == Side::Largest { "largest" } else { "smallest" }
            ));
            notes.push(format!("iterative: {iterative}"));
        }
        notes
    }
}

/// Result of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerifyResult(pub SuiteReport);

impl Persistable for VerifyResult {
    const KIND: &'static str = "lemma_suite";

    fn csv_header(&self) -> Vec<String> {
        ["check", "pass", "fail", "not_applicable"].map(String::from).to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let t = &self.0.tallies;
        let rows: [(&str, &Tally); 6] = [
            ("partition_decay", &t.partition_decay),
            ("path_decay", &t.path_decay),
            ("unimodality", &t.unimodality),
            ("principal", &t.principal),
            ("prop61", &t.prop61),
            ("prop62", &t.prop62),
        ];
        rows.iter()
            .map(|(name, t)| {
                vec![
                    name.to_string(),
                    t.pass.to_string(),
                    t.fail.to_string(),
                    t.not_applicable.to_string(),
                ]
            })
            .collect()
    }

    fn csv_notes(&self) -> Vec<String> {
        vec![
            format!("n: {}", self.0.n),
            format!("internal_paths: {}", self.0.internal_paths),
            format!(
                "verdict: {}",
                serde_json::to_value(self.0.verdict).expect("verdict serializes")
            ),
        ]
    }
}

/// One predicted limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LimitEntry {
    /// `lim_t lambda_k(G_t(E(G)))` for the degree sequence.
    Degrees { k: usize, value: f64 },
    /// `lim_t lambda_1((K_{1,d})_t)`.
    Spider { d: usize, value: f64 },
    /// `lambda_1((K_{1,d})_t)` at a finite `t`.
    SpiderAt { d: usize, t: usize, value: f64 },
}

impl LimitEntry {
    pub fn value(&self) -> f64 {
        match *self {
            LimitEntry::Degrees { value, .. }
            | LimitEntry::Spider { value, .. }
            | LimitEntry::SpiderAt { value, .. } => value,
        }
    }
}

/// Result of `limits`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitsResult {
    pub degrees: Option<Vec<usize>>,
    pub entries: Vec<LimitEntry>,
}

impl Persistable for LimitsResult {
    const KIND: &'static str = "limits";

    fn csv_header(&self) -> Vec<String> {
        ["source", "k", "d", "t", "value"].map(String::from).to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                let (src, k, d, t) = match *e {
                    LimitEntry::Degrees { k, .. } => ("degrees", k.to_string(), String::new(), String::new()),
                    LimitEntry::Spider { d, .. } => ("spider", String::new(), d.to_string(), String::new()),
                    LimitEntry::SpiderAt { d, t, .. } => ("spider_at", String::new(), d.to_string(), t.to_string()),
                };
                vec![src.to_string(), k, d, t, e.value().to_string()]
            })
            .collect()
    }

    fn csv_notes(&self) -> Vec<String> {
        self.degrees
            .iter()
            .map(|d| {
                let d: Vec<String> = d.iter().map(usize::to_string).collect();
                format!("degrees: {}", d.join(","))
            })
            .collect()
    }
}
