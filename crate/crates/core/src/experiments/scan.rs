use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::stabilization::{detect_onset, oscillation_fingerprint, Onset, OscillationFingerprint};
use super::{check_subset, outside_counts, ExperimentError, GraphSpec, SweepConfig};
use crate::eigen::SolverConfig;
use crate::graph::{build_h, erdos_renyi, subdivide, EdgeSubset, Graph};

/// Attempts per instance at drawing a connected graph.
const CONNECTED_ATTEMPTS: usize = 1000;

/// Which edges of each random graph are subdivided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetPolicy {
    All,
    /// `ceil(m / 2)` edges drawn uniformly without replacement.
    RandomHalf,
}

/// Seeded Erdős–Rényi corpus. Instance `i` draws from its own ChaCha8
/// stream `i`, so any instance can be regenerated alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    pub seed: u64,
    pub instances: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub edge_probability: f64,
    pub subset: SubsetPolicy,
    pub require_connected: bool,
}

impl CorpusSpec {
    fn validate(&self) -> Result<(), ExperimentError> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(ExperimentError::Argument(format!(
                "invalid size range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(ExperimentError::Argument(format!(
                "edge probability {} outside [0, 1]",
                self.edge_probability
            )));
        }
        Ok(())
    }

    /// Graph and subset of instance `index`.
    pub fn instance(&self, index: usize) -> Result<(Graph, EdgeSubset), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        for _ in 0..CONNECTED_ATTEMPTS {
            let n = rng.gen_range(self.n_min..=self.n_max);
            let g = erdos_renyi(n, self.edge_probability, &mut rng);
            if self.require_connected && !g.is_connected() {
                continue;
            }
            let s = match self.subset {
                SubsetPolicy::All => EdgeSubset::all(&g),
                SubsetPolicy::RandomHalf => {
                    let m = g.edge_count();
                    let picked = sample(&mut rng, m, m.div_ceil(2)).into_vec();
                    EdgeSubset::new(&g, picked).map_err(|e| e.to_string())?
                }
            };
            return Ok((g, s));
        }
        Err(format!("no connected graph in {CONNECTED_ATTEMPTS} draws"))
    }
}

/// Count sequences of one instance: `G_t` for `t = 1..=2 t_max + 2` and
/// `H_t` for `t = 1..=t_max`, so each `H_t` is induced in a scanned `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanCounts {
    pub g_above: Vec<usize>,
    pub g_below: Vec<usize>,
    pub h_above: Vec<usize>,
    pub h_below: Vec<usize>,
    /// Grid points with an eigenvalue within the shift tolerance of `2`/`-2`.
    pub ambiguous_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    ConsistentInRange,
    CounterexampleCandidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateReason {
    /// `m_{G_t}(-inf, -2)` not constant over the tail of `t = 1..=t_max`.
    GBelowNotStabilized,
    AboveMaximaDiffer,
    BelowMaximaDiffer,
}

/// Everything needed to recompute an instance's counts independently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproBundle {
    pub graph: GraphSpec,
    pub subset: Vec<usize>,
    pub t_max: usize,
    /// Inclusive `t` windows for the two families.
    pub g_window: (usize, usize),
    pub h_window: (usize, usize),
    pub corpus_seed: Option<u64>,
    pub index: Option<usize>,
    pub counts: ScanCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureScan {
    pub index: Option<usize>,
    pub n: usize,
    pub m: usize,
    pub subset_size: usize,
    pub t_max: usize,
    pub max_g_above: usize,
    pub max_h_above: usize,
    pub max_g_below: usize,
    pub max_h_below: usize,
    pub g_below_onset: Onset,
    pub g_below_oscillation: OscillationFingerprint,
    pub ambiguous_points: usize,
    pub verdict: ScanVerdict,
    pub reasons: Vec<CandidateReason>,
    /// An `H` maximum exceeds the `G` maximum, which interlacing rules out.
    pub solver_anomaly: bool,
    /// Present for counterexample candidates.
    pub bundle: Option<ReproBundle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkippedInstance {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanReport {
    pub corpus: CorpusSpec,
    pub t_max: usize,
    pub instances: Vec<ConjectureScan>,
    pub skipped: Vec<SkippedInstance>,
}

impl ScanReport {
    pub fn candidates(&self) -> impl Iterator<Item = &ConjectureScan> {
        self.instances
            .iter()
            .filter(|i| i.verdict == ScanVerdict::CounterexampleCandidate)
    }
}

fn counts_for(g: &Graph, s: &EdgeSubset, t_max: usize, cfg: &SolverConfig) -> Result<ScanCounts, ExperimentError> {
    let mut c = ScanCounts {
        g_above: Vec::new(),
        g_below: Vec::new(),
        h_above: Vec::new(),
        h_below: Vec::new(),
        ambiguous_points: 0,
    };
    for t in 1..=2 * t_max + 2 {
        let o = outside_counts(&subdivide(g, s, t)?, cfg)?;
        c.g_above.push(o.above);
        c.g_below.push(o.below);
        c.ambiguous_points += usize::from(o.ambiguous);
    }
    for t in 1..=t_max {
        let o = outside_counts(&build_h(g, s, t)?, cfg)?;
        c.h_above.push(o.above);
        c.h_below.push(o.below);
        c.ambiguous_points += usize::from(o.ambiguous);
    }
    Ok(c)
}

fn max_of(v: &[usize]) -> usize {
    v.iter().copied().max().unwrap_or(0)
}

/// Scans one `(G, S)` pair up to `t_max`.
pub fn scan_instance(
    g: &Graph,
    s: &EdgeSubset,
    t_max: usize,
    cfg: &SolverConfig,
) -> Result<ConjectureScan, ExperimentError> {
    if t_max == 0 {
        return Err(ExperimentError::Argument("t_max must be >= 1".into()));
    }
    check_subset(g, s)?;
    let counts = counts_for(g, s, t_max, cfg)?;
    let grid: Vec<usize> = (1..=t_max).collect();
    let g_below_range = &counts.g_below[..t_max];
    let g_below_onset = detect_onset(&grid, g_below_range);
    let (max_g_above, max_h_above) = (max_of(&counts.g_above), max_of(&counts.h_above));
    let (max_g_below, max_h_below) = (max_of(&counts.g_below), max_of(&counts.h_below));
    let mut reasons = Vec::new();
    if g_below_onset == Onset::NotStabilizedInRange {
        reasons.push(CandidateReason::GBelowNotStabilized);
    }
    if max_g_above != max_h_above {
        reasons.push(CandidateReason::AboveMaximaDiffer);
    }
    if max_g_below != max_h_below {
        reasons.push(CandidateReason::BelowMaximaDiffer);
    }
    let verdict = if reasons.is_empty() {
        ScanVerdict::ConsistentInRange
    } else {
        ScanVerdict::CounterexampleCandidate
    };
    let bundle = (verdict == ScanVerdict::CounterexampleCandidate).then(|| ReproBundle {
        graph: GraphSpec::of(g),
        subset: s.indices().to_vec(),
        t_max,
        g_window: (1, 2 * t_max + 2),
        h_window: (1, t_max),
        corpus_seed: None,
        index: None,
        counts: counts.clone(),
    });
    Ok(ConjectureScan {
        index: None,
        n: g.n(),
        m: g.edge_count(),
        subset_size: s.len(),
        t_max,
        max_g_above,
        max_h_above,
        max_g_below,
        max_h_below,
        g_below_oscillation: oscillation_fingerprint(&grid, g_below_range),
        g_below_onset,
        ambiguous_points: counts.ambiguous_points,
        verdict,
        reasons,
        solver_anomaly: max_h_above > max_g_above || max_h_below > max_g_below,
        bundle,
    })
}

/// Recomputes the counts recorded in a bundle.
pub fn rerun_bundle(bundle: &ReproBundle, cfg: &SolverConfig) -> Result<ScanCounts, ExperimentError> {
    let g = bundle.graph.build()?;
    let s = EdgeSubset::new(&g, bundle.subset.iter().copied())?;
    counts_for(&g, &s, bundle.t_max, cfg)
}

/// Scans every corpus instance. Instances that cannot be generated or
/// solved are skipped with a reason; the scan itself does not fail.
pub fn scan_conjectures(corpus: &CorpusSpec, t_max: usize, cfg: &SweepConfig) -> Result<ScanReport, ExperimentError> {
    corpus.validate()?;
    if t_max == 0 {
        return Err(ExperimentError::Argument("t_max must be >= 1".into()));
    }
    let indices: Vec<usize> = (0..corpus.instances).collect();
    let solver = cfg.solver;
    let results = cfg.execution.map(&indices, |&i| -> Result<ConjectureScan, String> {
        let (g, s) = corpus.instance(i)?;
        let mut scan = scan_instance(&g, &s, t_max, &solver).map_err(|e| e.to_string())?;
        scan.index = Some(i);
        if let Some(b) = &mut scan.bundle {
            b.corpus_seed = Some(corpus.seed);
            b.index = Some(i);
        }
        Ok(scan)
    });
    let mut instances = Vec::new();
    let mut skipped = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(s) => instances.push(s),
            Err(reason) => skipped.push(SkippedInstance { index: i, reason }),
        }
    }
    Ok(ScanReport {
        corpus: corpus.clone(),
        t_max,
        instances,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, square_with_pendant};

    fn corpus(instances: usize) -> CorpusSpec {
        CorpusSpec {
            seed: 7,
            instances,
            n_min: 5,
            n_max: 8,
            edge_probability: 0.4,
            subset: SubsetPolicy::RandomHalf,
            require_connected: false,
        }
    }

    #[test]
    fn empty_corpus() {
        let r = scan_conjectures(&corpus(0), 5, &SweepConfig::default()).unwrap();
        assert!(r.instances.is_empty() && r.skipped.is_empty());
    }

    #[test]
    fn instances_are_reproducible_individually() {
        let c = corpus(6);
        let r = scan_conjectures(&c, 4, &SweepConfig::default()).unwrap();
        assert_eq!(r.instances.len() + r.skipped.len(), 6);
        let (g, s) = c.instance(3).unwrap();
        let again = scan_instance(&g, &s, 4, &SolverConfig::default()).unwrap();
        let stored = r.instances.iter().find(|x| x.index == Some(3)).unwrap();
        assert_eq!(stored.max_g_above, again.max_g_above);
        assert_eq!(stored.g_below_onset, again.g_below_onset);
        assert!(r.instances.iter().all(|x| !x.solver_anomaly));
    }

    #[test]
    fn pendant_square_oscillates() {
        let f = square_with_pendant();
        let s = EdgeSubset::new(&f, [0]).unwrap();
        let r = scan_instance(&f, &s, 6, &SolverConfig::default()).unwrap();
        assert!(r.g_below_oscillation.changes >= 2);
        assert_eq!(r.verdict, ScanVerdict::CounterexampleCandidate);
        assert!(r.reasons.contains(&CandidateReason::GBelowNotStabilized));
        let b = r.bundle.unwrap();
        assert_eq!(rerun_bundle(&b, &SolverConfig::default()).unwrap(), b.counts);
    }

    #[test]
    fn k4_all_edges_consistent() {
        let k4 = complete(4);
        let r = scan_instance(&k4, &EdgeSubset::all(&k4), 8, &SolverConfig::default()).unwrap();
        assert_eq!(r.max_g_above, 4);
        assert_eq!(r.max_h_above, 4);
        assert!(!r.solver_anomaly);
    }

    #[test]
    fn connected_policy_and_bad_specs() {
        let mut c = corpus(4);
        c.require_connected = true;
        c.edge_probability = 0.6;
        for i in 0..4 {
            if let Ok((g, _)) = c.instance(i) {
                assert!(g.is_connected());
            }
        }
        c.n_min = 9;
        assert!(scan_conjectures(&c, 3, &SweepConfig::default()).is_err());
        assert!(scan_conjectures(&corpus(1), 0, &SweepConfig::default()).is_err());
    }
}
