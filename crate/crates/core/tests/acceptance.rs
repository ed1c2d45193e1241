//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subspec::eigen::{adjacency_dense, count_below, full_eigensystem, full_spectrum, EigenError, SolverConfig};
use subspec::experiments::{
    load_json, persist, rerun_bundle, run_convergence, run_stabilization, scan_conjectures, ConvergenceTrace,
    CorpusSpec, Envelope, Format, ScanReport, SequenceKind, SubsetPolicy, SweepConfig,
};
use subspec::graph::{
    attach_path, complete, erdos_renyi, internal_paths, spider, square_with_pendant, subdivide, EdgeSubset, FamilyKind,
    Graph, InternalPath,
};
use subspec::lemmas::{
    check_path_decay, check_principal_unimodality, check_q_bound, check_single_subdivision_monotonicity,
    check_unimodality, Verdict,
};
use subspec::limits::{path_ratio, path_ratio_limit, quotient_path_radius, spider_limit, spider_radius_deficit};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda1(g: &Graph) -> f64 {
    full_spectrum(g).expect("dense spectrum").eigenvalues[0]
}

fn spider_limit_check(d: usize) -> Result<f64, String> {
    let limit = spider_limit(d).map_err(|e| e.to_string())?;
    let values: Vec<f64> = (1..=100).map(|t| lambda1(&spider(d, t))).collect();
    for t in 1..100 {
        let (a, b) = (values[t - 1], values[t]);
        ensure(b >= a - 1e-12, || {
            format!("d={d}: lambda_1 drops from t={t} to t={}", t + 1)
        })?;
        if b > a {
            continue;
        }
        // Below one ulp: compare the deficits computed in relative precision.
        let (da, db) = match (spider_radius_deficit(d, t), spider_radius_deficit(d, t + 1)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(format!("d={d}: unresolved step at t={t}")),
        };
        ensure(db < da, || format!("d={d}: deficit not decreasing at t={t}"))?;
        ensure((a - (limit - da)).abs() <= 1e-12, || {
            format!("d={d}: dense and deficit disagree at t={t}")
        })?;
    }
    let gap = (values[99] - limit).abs();
    ensure(gap <= 1e-3, || format!("d={d}: |lambda_1 - limit| = {gap:e}"))?;
    Ok(gap)
}

fn c1() -> Outcome {
    let g3 = spider_limit_check(3)?;
    let g4 = spider_limit_check(4)?;
    Ok(format!(
        "strictly increasing; gaps at t=100: d=3 {g3:.2e}, d=4 {g4:.2e}"
    ))
}

fn c2() -> Outcome {
    let mut worst = 0.0f64;
    for d in [3, 4, 5] {
        for t in [1, 5, 20, 50] {
            let q = quotient_path_radius(d, t).map_err(|e| e.to_string())?;
            let diff = (q - lambda1(&spider(d, t))).abs();
            worst = worst.max(diff);
            ensure(diff <= 1e-9, || format!("d={d}, t={t}: difference {diff:e}"))?;
        }
    }
    Ok(format!("max difference {worst:.2e}"))
}

fn c3() -> Outcome {
    let k4 = complete(4);
    let tr = run_convergence(
        &k4,
        &EdgeSubset::all(&k4),
        FamilyKind::G,
        &[1, 2, 3, 4, 5],
        &[8, 16, 32, 64],
        &SweepConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(!tr.is_truncated(), || "trace truncated".into())?;
    let last = tr.points.last().unwrap();
    ensure(last.n == 382, || format!("n = {}", last.n))?;
    let target4 = 3.0 / 2f64.sqrt();
    let g4 = (last.largest[3].unwrap() - target4).abs();
    let g5 = (last.largest[4].unwrap() - 2.0).abs();
    ensure(g4 <= 1e-2 && g5 <= 1e-2, || format!("gaps {g4:e}, {g5:e}"))?;
    for k in [4, 5] {
        let s = tr.gap_series(k);
        ensure(s.len() == 4, || format!("gap series for k={k} incomplete"))?;
        ensure(s.windows(2).all(|w| w[1].1 < w[0].1), || {
            format!("gap for k={k} not decreasing: {s:?}")
        })?;
    }
    Ok(format!(
        "t=64: |lambda_4 - 3/sqrt2| = {g4:.2e}, |lambda_5 - 2| = {g5:.2e}"
    ))
}

fn c4() -> Outcome {
    let f = square_with_pendant();
    let r = run_stabilization(
        &f,
        &EdgeSubset::new(&f, [0]).map_err(|e| e.to_string())?,
        &[1, 2, 3],
        &SweepConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let c = &r.sequence(SequenceKind::GBelow).counts;
    ensure(c == &vec![1, 0, 1], || format!("counts {c:?}"))?;
    Ok("m(-inf,-2) = (1, 0, 1)".into())
}

/// Eigenvalue counts from an independent dense solver.
fn oracle_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let m = DMatrix::from_row_slice(n, n, &adjacency_dense(g));
    SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut detected) = (0usize, 0usize);
    for i in 0..200 {
        let n = rng.gen_range(2..=100);
        let p = rng.gen_range(0.02..0.3);
        let mut g = erdos_renyi(n, p, &mut rng);
        if i % 4 == 0 && g.edge_count() > 0 {
            // Long stretches put eigenvalues close to +-2.
            let k = g.edge_count().min(3);
            let s = EdgeSubset::new(&g, 0..k).unwrap();
            let t = (100 - g.n()) / k.max(1);
            g = subdivide(&g, &s, t.clamp(1, 25)).unwrap();
        }
        let eig = oracle_eigenvalues(&g);
        let mut shifts = vec![2.0, -2.0, 2.0 + 1e-10, -2.0 - 1e-10, 0.0];
        if let Some(&e) = eig.iter().find(|e| e.abs() > 0.5) {
            shifts.push(e);
        }
        while shifts.len() < 10 {
            shifts.push(rng.gen_range(-4.0..4.0));
        }
        for &sigma in &shifts {
            let lo = eig.iter().filter(|&&e| e < sigma - 1e-9).count();
            let hi = eig.iter().filter(|&&e| e < sigma + 1e-9).count();
            match count_below(&g, sigma) {
                Ok(c) => ensure(lo <= c && c <= hi, || {
                    format!("graph {i} (n={}), sigma={sigma}: count {c}, oracle {lo}..={hi}", g.n())
                })?,
                Err(EigenError::Ambiguous { .. }) => {
                    ensure(lo != hi, || format!("graph {i}: spurious ambiguity at {sigma}"))?;
                    detected += 1;
                }
                Err(e) => return Err(format!("graph {i}: {e}")),
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} shifts agree; {detected} ambiguities reported, none undetected"
    ))
}

struct Augmented {
    graph: Graph,
    path: InternalPath,
}

/// Connected random base plus one attached path of length 30 whose ends
/// have degree >= 3 afterwards.
fn augmented_corpus(count: usize, seed: u64) -> Vec<Augmented> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(5..=12);
        let g = erdos_renyi(n, rng.gen_range(0.3..0.6), &mut rng);
        if !g.is_connected() {
            continue;
        }
        let ends: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 2).collect();
        if ends.len() < 2 {
            continue;
        }
        let u = ends[rng.gen_range(0..ends.len())];
        let v = loop {
            let w = ends[rng.gen_range(0..ends.len())];
            if w != u {
                break w;
            }
        };
        let aug = attach_path(&g, u, v, 30);
        let path = internal_paths(&aug)
            .paths
            .into_iter()
            .find(|p| p.len() == 30)
            .expect("attached path is maximal");
        out.push(Augmented { graph: aug, path });
    }
    out
}

fn c6(corpus: &[Augmented]) -> Outcome {
    let cfg = SolverConfig::default();
    let (mut checked, mut failed) = (0usize, Vec::new());
    for (i, a) in corpus.iter().enumerate() {
        let es = full_eigensystem(&a.graph, &cfg).map_err(|e| e.to_string())?;
        for pair in es.pairs().filter(|p| p.value.abs() > 2.0) {
            let r = check_path_decay(&a.graph, &a.path, &pair, 1e-3).map_err(|e| e.to_string())?;
            checked += 1;
            if r.verdict == Verdict::Fail {
                failed.push(format!("instance {i}, lambda {}", pair.value));
            }
        }
    }
    ensure(checked > 0, || "no eigenpair with |lambda| > 2".into())?;
    ensure(failed.is_empty(), || {
        format!("{} failures: {:?}", failed.len(), &failed[..failed.len().min(5)])
    })?;
    Ok(format!("{checked} eigenpairs pass"))
}

fn c7(corpus: &[Augmented]) -> Outcome {
    let cfg = SolverConfig::default();
    let (mut checked, mut failed) = (0usize, Vec::new());
    for (i, a) in corpus.iter().enumerate() {
        let es = full_eigensystem(&a.graph, &cfg).map_err(|e| e.to_string())?;
        for pair in es.pairs().filter(|p| p.value.abs() >= 2.0) {
            let r = check_unimodality(&a.graph, &a.path, &pair).map_err(|e| e.to_string())?;
            checked += 1;
            if r.verdict == Verdict::Fail {
                failed.push(format!("instance {i}, lambda {}", pair.value));
            }
        }
    }
    ensure(failed.is_empty(), || format!("unimodality failures: {failed:?}"))?;
    let mut principal = 0;
    for a in corpus.iter().filter(|a| lambda1(&a.graph) > 2.0).take(20) {
        for p in internal_paths(&a.graph).paths {
            let r = check_principal_unimodality(&a.graph, &p, &cfg).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Pass, || format!("principal pattern fails: {r:?}"))?;
        }
        principal += 1;
    }
    ensure(principal == 20, || {
        format!("only {principal} instances with lambda_1 > 2")
    })?;
    Ok(format!(
        "{checked} eigenpairs unimodal; principal patterns on {principal} instances"
    ))
}

fn sandwich_traces() -> Result<Vec<ConvergenceTrace>, String> {
    let k4 = complete(4);
    let f = square_with_pendant();
    let ks = [1, 2, 3, 4, 5];
    let cfg = SweepConfig::default();
    let mut out = Vec::new();
    let grid_k4: Vec<usize> = (1..=12).chain([16, 24, 32]).collect();
    out.push(
        run_convergence(&k4, &EdgeSubset::all(&k4), FamilyKind::H, &ks, &grid_k4, &cfg).map_err(|e| e.to_string())?,
    );
    let grid_f: Vec<usize> = (1..=20).collect();
    for s in [
        EdgeSubset::new(&f, [0]).unwrap(),
        EdgeSubset::new(&f, [0, 4]).unwrap(),
        EdgeSubset::all(&f),
    ] {
        out.push(run_convergence(&f, &s, FamilyKind::H, &ks, &grid_f, &cfg).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn c8(traces: &[ConvergenceTrace]) -> Outcome {
    let mut points = 0;
    for tr in traces {
        ensure(!tr.is_truncated(), || "trace truncated".into())?;
        let c = tr.checks();
        ensure(c.monotone == Some(true) && c.sandwich == Some(true), || {
            format!("{:?}", c.violations)
        })?;
        points += tr.points.len();
    }
    Ok(format!("{} sweeps, {points} points, k = 1..5", traces.len()))
}

fn c9() -> Outcome {
    let mut worst = 0.0f64;
    for x in [2.5, 3.0, 4.0] {
        let r = path_ratio(60, x).map_err(|e| e.to_string())?;
        let l = path_ratio_limit(x).map_err(|e| e.to_string())?;
        worst = worst.max((r - l).abs());
        ensure((r - l).abs() <= 1e-8, || {
            format!("x={x}: difference {:e}", (r - l).abs())
        })?;
    }
    let xs: Vec<f64> = (0..=80).map(|i| 2.05 + 0.05 * i as f64).collect();
    for t in 1..=60 {
        let rs: Vec<f64> = xs.iter().map(|&x| path_ratio(t, x).unwrap()).collect();
        ensure(rs.windows(2).all(|w| w[1] < w[0]), || {
            format!("ratio not decreasing in x at t={t}")
        })?;
    }
    Ok(format!(
        "max |rho_60 - limit| = {worst:.2e}; decreasing in x for t <= 60"
    ))
}

fn c10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = SolverConfig::default();
    let mut samples = 0;
    while samples < 100 {
        let n = rng.gen_range(4..=30);
        let g = erdos_renyi(n, rng.gen_range(0.1..0.6), &mut rng);
        if g.edge_count() == 0 {
            continue;
        }
        let e = rng.gen_range(0..g.edge_count());
        let r = check_single_subdivision_monotonicity(&g, e, &cfg).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Pass, || format!("decrease: {r:?}"))?;
        samples += 1;
    }
    Ok("100 samples, m(2,inf) never decreases".into())
}

fn c11(traces: &[ConvergenceTrace]) -> Outcome {
    let cfg = SweepConfig::default();
    let k4 = complete(4);
    let f = square_with_pendant();
    let mut sweeps = 0;
    for tr in traces {
        ensure(tr.checks().count_bound, || "trace count above |Q|".into())?;
        sweeps += 1;
    }
    let grid: Vec<usize> = (1..=40).collect();
    for (g, s) in [
        (&k4, EdgeSubset::all(&k4)),
        (&f, EdgeSubset::new(&f, [0]).unwrap()),
        (&f, EdgeSubset::all(&f)),
    ] {
        let r = run_stabilization(g, &s, &grid, &cfg).map_err(|e| e.to_string())?;
        ensure(r.within_q_bound(), || "stabilization count above |Q|".into())?;
        sweeps += 1;
    }
    let r = check_q_bound(&k4, &EdgeSubset::all(&k4), 64, &cfg.solver).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Pass, || format!("{:?}", r.counts()))?;
    ensure(r.g_above.count == 4 && r.q == 4, || {
        format!("tightness: counts {:?}", r.counts())
    })?;
    Ok(format!("{sweeps} sweeps within |Q|; K4 t=64 counts {:?}", r.counts()))
}

fn c12() -> Outcome {
    let corpus = CorpusSpec {
        seed: 12,
        instances: 50,
        n_min: 4,
        n_max: 12,
        edge_probability: 0.4,
        subset: SubsetPolicy::RandomHalf,
        require_connected: false,
    };
    let cfg = SweepConfig::default();
    let report = scan_conjectures(&corpus, 20, &cfg).map_err(|e| e.to_string())?;
    ensure(report.instances.len() + report.skipped.len() == 50, || {
        "instances lost".into()
    })?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("scan.json");
    let env = Envelope::new("scan acceptance", &cfg.solver, report);
    persist(&env, &path, Format::Json).map_err(|e| e.to_string())?;
    let back: Envelope<ScanReport> = load_json(&path).map_err(|e| e.to_string())?;
    ensure(back == env, || "JSON reload differs".into())?;
    let raw: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for inst in raw["payload"]["instances"].as_array().unwrap() {
        let v = inst["verdict"].as_str().unwrap_or("");
        ensure(v == "consistent_in_range" || v == "counterexample_candidate", || {
            format!("verdict {v:?}")
        })?;
    }
    let report = back.payload;
    let mut candidates = 0;
    for c in report.candidates() {
        let b = c.bundle.as_ref().ok_or("candidate without bundle")?;
        let again = rerun_bundle(b, &cfg.solver).map_err(|e| e.to_string())?;
        ensure(again == b.counts, || format!("bundle {:?} does not reproduce", c.index))?;
        candidates += 1;
    }
    ensure(report.instances.iter().all(|i| !i.solver_anomaly), || {
        "solver anomaly flagged".into()
    })?;
    Ok(format!(
        "{} scanned, {} skipped, {candidates} candidates reproduce",
        report.instances.len(),
        report.skipped.len()
    ))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {id:>2} PASS  {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {id:>2} FAIL  {name}: {detail}");
            false
        }
    }
}

fn main() {
    let corpus = augmented_corpus(100, 6);
    let traces = sandwich_traces();
    let traces_ref = traces.as_ref();
    let results = [
        run(1, "spider limit", c1),
        run(2, "quotient path radius", c2),
        run(3, "K4 limits", c3),
        run(4, "pendant square counts", c4),
        run(5, "inertia oracle", c5),
        run(6, "decay suite", || c6(&corpus)),
        run(7, "unimodality suite", || c7(&corpus)),
        run(8, "interlacing sandwich", || c8(traces_ref.map_err(Clone::clone)?)),
        run(9, "path ratio limit", c9),
        run(10, "single-subdivision monotonicity", c10),
        run(11, "outside counts bounded by |Q|", || {
            c11(traces_ref.map_err(Clone::clone)?)
        }),
        run(12, "conjecture scanner", c12),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
