use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::convergence::ConvergenceTrace;
use super::scan::ScanReport;
use super::stabilization::{Onset, SequenceKind, StabilizationReport};
use super::ExperimentError;
use crate::eigen::SolverConfig;
use crate::tolerances::Tolerances;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `csv` for a `.csv` extension, `json` otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// A persistable experiment result with a tabular view.
pub trait Persistable: Serialize + DeserializeOwned {
    const KIND: &'static str;
    fn csv_header(&self) -> Vec<String>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
    /// Extra `# key: value` lines placed before the header.
    fn csv_notes(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Versioned wrapper carrying reproducibility metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    /// Canonical description of the run that produced `payload`.
    pub config: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub payload: T,
}

impl<T: Persistable> Envelope<T> {
    pub fn new(config: impl Into<String>, solver: &SolverConfig, payload: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: T::KIND.to_string(),
            config: config.into(),
            seed: solver.seed,
            tolerances: Tolerances {
                tau: solver.tau,
                residual_bound: solver.residual_bound,
                ..Tolerances::default()
            },
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("experiment results serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema_version: {}\n", self.schema_version));
        out.push_str(&format!("# kind: {}\n", self.kind));
        out.push_str(&format!("# config: {}\n", self.config));
        out.push_str(&format!("# seed: {}\n", self.seed));
        out.push_str(&format!(
            "# tolerances: {}\n",
            serde_json::to_string(&self.tolerances).expect("tolerances serialize")
        ));
        for note in self.payload.csv_notes() {
            out.push_str(&format!("# {note}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.payload.csv_header()).expect("in-memory write");
        for row in self.payload.csv_rows() {
            w.write_record(row).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&bytes).expect("csv fields are UTF-8"));
        out
    }
}

/// Writes `env` to `path`. Identical inputs give identical bytes.
pub fn persist<T: Persistable>(env: &Envelope<T>, path: &Path, format: Format) -> Result<(), ExperimentError> {
    let text = match format {
        Format::Json => env.to_json(),
        Format::Csv => env.to_csv(),
    };
    fs::write(path, text).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a JSON envelope, rejecting unknown fields, other kinds and other
/// schema versions.
pub fn load_json<T: Persistable>(path: &Path) -> Result<Envelope<T>, ExperimentError> {
    let text = fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let fail = |message: String| ExperimentError::Format {
        path: path.to_path_buf(),
        message,
    };
    let env: Envelope<T> = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(fail(format!(
            "schema version {} (expected {SCHEMA_VERSION})",
            env.schema_version
        )));
    }
    if env.kind != T::KIND {
        return Err(fail(format!("kind {:?} (expected {:?})", env.kind, T::KIND)));
    }
    Ok(env)
}

/// Serde name of a unit enum variant.
fn variant<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn num(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl Persistable for ConvergenceTrace {
    const KIND: &'static str = "convergence_trace";

    fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["t", "n", "route"].map(String::from).to_vec();
        h.extend(self.ks.iter().map(|k| format!("lambda_{k}")));
        h.extend(self.ks.iter().map(|k| format!("lambda_min_{k}")));
        h.extend(["m_above", "m_below", "ambiguous"].map(String::from));
        if self.predictions.is_some() {
            h.extend(self.ks.iter().map(|k| format!("gap_{k}")));
            h.extend(self.ks.iter().map(|k| format!("gap_min_{k}")));
        }
        if self.points.iter().any(|p| p.aligned.is_some()) {
            h.extend(["aligned_t", "aligned_n"].map(String::from));
            h.extend(self.ks.iter().map(|k| format!("aligned_lambda_{k}")));
            h.extend(self.ks.iter().map(|k| format!("aligned_lambda_min_{k}")));
        }
        if self.points.iter().any(|p| p.wall_ms.is_some()) {
            h.push("wall_ms".into());
        }
        h
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let with_aligned = self.points.iter().any(|p| p.aligned.is_some());
        let with_time = self.points.iter().any(|p| p.wall_ms.is_some());
        self.points
            .iter()
            .map(|p| {
                let mut r = vec![p.t.to_string(), p.n.to_string(), variant(&p.route)];
                r.extend(p.largest.iter().map(|&x| num(x)));
                r.extend(p.smallest.iter().map(|&x| num(x)));
                r.extend([p.m_above.to_string(), p.m_below.to_string(), p.ambiguous.to_string()]);
                if self.predictions.is_some() {
                    r.extend(p.gap_largest.iter().map(|&x| num(x)));
                    r.extend(p.gap_smallest.iter().map(|&x| num(x)));
                }
                if with_aligned {
                    match &p.aligned {
                        Some(a) => {
                            r.extend([a.t.to_string(), a.n.to_string()]);
                            r.extend(a.largest.iter().map(|&x| num(x)));
                            r.extend(a.smallest.iter().map(|&x| num(x)));
                        }
                        None => r.extend(std::iter::repeat_n(String::new(), 2 + 2 * self.ks.len())),
                    }
                }
                if with_time {
                    r.push(num(p.wall_ms));
                }
                r
            })
            .collect()
    }

    fn csv_notes(&self) -> Vec<String> {
        let mut notes = vec![format!("family: {}", self.kind.label())];
        if let Some(p) = &self.predictions {
            let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            notes.push(format!("predictions: {}", s.join(",")));
        }
        if let Some(t) = &self.truncation {
            notes.push(format!("truncated at t={}: {}", t.t, t.reason));
        }
        if let Some(c) = &self.crosscheck {
            notes.push(format!(
                "crosscheck t={}: max_difference={} agrees={}",
                c.t, c.max_difference, c.agrees
            ));
        }
        notes
    }
}

impl Persistable for StabilizationReport {
    const KIND: &'static str = "stabilization_report";

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["t".to_string()];
        h.extend(SequenceKind::ALL.iter().map(|k| k.label().to_string()));
        h.push("ambiguous".into());
        h
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.t_grid
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let mut r = vec![t.to_string()];
                r.extend(
                    SequenceKind::ALL
                        .iter()
                        .map(|&k| self.sequence(k).counts[i].to_string()),
                );
                let amb = self.sequences.iter().any(|s| s.ambiguous_t.contains(&t));
                r.push(amb.to_string());
                r
            })
            .collect()
    }

    fn csv_notes(&self) -> Vec<String> {
        SequenceKind::ALL
            .iter()
            .map(|&k| {
                let onset = match self.sequence(k).onset {
                    Onset::Stabilized { t0, value } => format!("stabilized t0={t0} value={value}"),
                    Onset::NotStabilizedInRange => "not stabilized in range".into(),
                };
                format!("onset {}: {onset}", k.label())
            })
            .collect()
    }
}

impl Persistable for ScanReport {
    const KIND: &'static str = "conjecture_scan";

    fn csv_header(&self) -> Vec<String> {
        [
            "index",
            "n",
            "m",
            "subset_size",
            "max_g_above",
            "max_h_above",
            "max_g_below",
            "max_h_below",
            "g_below_t0",
            "g_below_changes",
            "ambiguous_points",
            "verdict",
            "reasons",
            "solver_anomaly",
        ]
        .map(String::from)
        .to_vec()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.instances
            .iter()
            .map(|s| {
                let t0 = match s.g_below_onset {
                    Onset::Stabilized { t0, .. } => t0.to_string(),
                    Onset::NotStabilizedInRange => String::new(),
                };
                let reasons: Vec<String> = s.reasons.iter().map(variant).collect();
                vec![
                    s.index.map(|i| i.to_string()).unwrap_or_default(),
                    s.n.to_string(),
                    s.m.to_string(),
                    s.subset_size.to_string(),
                    s.max_g_above.to_string(),
                    s.max_h_above.to_string(),
                    s.max_g_below.to_string(),
                    s.max_h_below.to_string(),
                    t0,
                    s.g_below_oscillation.changes.to_string(),
                    s.ambiguous_points.to_string(),
                    variant(&s.verdict),
                    reasons.join(";"),
                    s.solver_anomaly.to_string(),
                ]
            })
            .collect()
    }

    fn csv_notes(&self) -> Vec<String> {
        let mut notes = vec![format!("t_max: {}", self.t_max)];
        notes.extend(
            self.skipped
                .iter()
                .map(|s| format!("skipped {}: {}", s.index, s.reason)),
        );
        notes
    }
}
