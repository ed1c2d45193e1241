//! One handler per subcommand.

use std::path::Path;

use subspec::eigen::{extreme_eigenvalues, full_spectrum_with, InertiaCounter, Side, SolverConfig};
use subspec::exec::Execution;
use subspec::experiments::{
    run_convergence, run_stabilization, scan_conjectures, CorpusSpec, Envelope, Format, Onset, Persistable,
    SequenceKind, SubsetPolicy, SweepConfig,
};
use subspec::graph::{build_h, subdivide, EdgeSubset, FamilyKind, Graph};
use subspec::lemmas::{run_suite, LemmaSelector, SuiteOptions, Verdict};
use subspec::limits::{quotient_path_radius, spider_limit, subdivision_limit, DegreeSequence};

use crate::args::{
    Cli, Command, FamilyArg, LemmaArg, LimitsArgs, ReportArg, ScanArgs, SpectrumArgs, SubdivideArgs, SubsetOpts,
    SubsetPolicyArg, SweepArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::output::{
    destination, fmt_value, format_of, provenance_lines, render, write_file, write_stdout, LimitEntry, LimitsResult,
    SpectrumResult, VerifyResult,
};

/// What a successful dispatch reports back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ChecksFailed,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Context::new(cli)?;
    if cli.global.verbose > 0 {
        eprintln!("config: {}", ctx.config);
    }
    match &cli.command {
        Command::Spectrum(a) => spectrum(&ctx, a),
        Command::Subdivide(a) => subdivide_cmd(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
        Command::Limits(a) => limits(&ctx, a),
        Command::Sweep(a) => sweep(&ctx, a),
        Command::Scan(a) => scan(&ctx, a),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    config: String,
    solver: SolverConfig,
}

impl<'a> Context<'a> {
    fn new(cli: &'a Cli) -> Result<Self, CliError> {
        let g = &cli.global;
        if !(g.tau > 0.0 && g.tau.is_finite()) {
            return Err(CliError::Usage(format!("--tau must be positive, got {}", g.tau)));
        }
        if !(g.residual_bound > 0.0 && g.residual_bound.is_finite()) {
            return Err(CliError::Usage(format!(
                "--residual-bound must be positive, got {}",
                g.residual_bound
            )));
        }
        let solver = SolverConfig {
            dense_cap: g.dense_cap,
            tau: g.tau,
            seed: g.seed,
            residual_bound: g.residual_bound,
            ..SolverConfig::default()
        };
        Ok(Self {
            cli,
            config: cli.canonical(),
            solver,
        })
    }

    fn envelope<T: Persistable>(&self, payload: T) -> Envelope<T> {
        Envelope::new(self.config.clone(), &self.solver, payload)
    }

    fn out(&self) -> Option<&Path> {
        self.cli.global.out.as_deref()
    }

    /// Writes to `--out` when given, else prints `plain` to stdout.
    fn emit<T: Persistable>(&self, payload: T, plain: impl FnOnce(&T) -> String) -> Result<(), CliError> {
        match self.out() {
            Some(path) => {
                let format = format_of(self.cli.global.format, Some(path), Format::Json);
                write_file(path, &render(&self.envelope(payload), format))
            }
            None => write_stdout(&plain(&payload)),
        }
    }

    /// Persists to the resolved destination with the summary on stdout, or
    /// prints the rendered result to stdout with the summary on stderr.
    fn persist<T: Persistable>(
        &self,
        payload: T,
        default_name: impl FnOnce(Format) -> String,
        fallback: Format,
        summary: &str,
    ) -> Result<(), CliError> {
        let g = &self.cli.global;
        let dest = destination(self.out(), || default_name(format_of(g.format, None, fallback)));
        let format = format_of(g.format, dest.as_deref(), fallback);
        let text = render(&self.envelope(payload), format);
        match dest {
            Some(path) => {
                write_file(&path, &text)?;
                write_stdout(&format!("{summary}\nwrote {}\n", path.display()))
            }
            None => {
                write_stdout(&text)?;
                eprintln!("{summary}");
                Ok(())
            }
        }
    }
}

fn extension(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
}

/// `None` when no subset flag was given.
fn resolve_subset(g: &Graph, opts: &SubsetOpts) -> Result<Option<EdgeSubset>, CliError> {
    if opts.all {
        return Ok(Some(EdgeSubset::all(g)));
    }
    if let Some(idx) = &opts.edges {
        return Ok(Some(EdgeSubset::new(g, idx.iter().copied())?));
    }
    let Some(spec) = &opts.subset else {
        return Ok(None);
    };
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Some(EdgeSubset::all(g)));
    }
    if let Ok(idx) = crate::args::parse_usize_list(spec) {
        return Ok(Some(EdgeSubset::new(g, idx)?));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    EdgeSubset::parse(g, &text).map(Some).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn require_subset(g: &Graph, opts: &SubsetOpts) -> Result<EdgeSubset, CliError> {
    resolve_subset(g, opts)?
        .ok_or_else(|| CliError::Usage("an edge subset is required: pass --all, --edges or --subset".into()))
}

fn spectrum(ctx: &Context, a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let g = read_graph(&a.input)?;
    let n = g.n();
    let result = if let Some((lo, hi)) = a.interval {
        let count = InertiaCounter::new(&g, &ctx.solver).interval(lo.value(), hi.value())?;
        for s in &count.slivers {
            eprintln!(
                "warning: {} eigenvalue(s) within {:e} of {} counted as on the endpoint",
                s.eigenvalues,
                count.shift_tolerance,
                fmt_value(s.endpoint)
            );
        }
        SpectrumResult::Interval { n, count }
    } else if a.k.is_some() || a.extremes || a.smallest {
        let ks = a.k.clone().unwrap_or_else(|| vec![1]);
        if let Some(&bad) = ks.iter().find(|&&k| k == 0 || k > n) {
            return Err(CliError::Usage(format!("k = {bad} must lie in 1..={n}")));
        }
        let side = if a.smallest { Side::Smallest } else { Side::Largest };
        let values = if a.extremes {
            let kmax = *ks.iter().max().expect("nonempty k list");
            let ext = extreme_eigenvalues(&g, kmax, side, &ctx.solver)?;
            ks.iter().map(|&k| ext[k - 1]).collect()
        } else {
            let sp = full_spectrum_with(&g, &ctx.solver)?;
            ks.iter()
                .map(|&k| match side {
                    Side::Largest => sp.largest(k),
                    Side::Smallest => sp.smallest(k),
                })
                .map(|v| v.expect("k checked against n"))
                .collect()
        };
        SpectrumResult::Selected {
            n,
            side,
            iterative: a.extremes,
            ks,
            values,
        }
    } else {
        let sp = full_spectrum_with(&g, &ctx.solver)?;
        SpectrumResult::Full {
            n,
            eigenvalues: sp.eigenvalues,
        }
    };
    ctx.emit(result, SpectrumResult::plain)?;
    Ok(Outcome::Success)
}

fn subdivide_cmd(ctx: &Context, a: &SubdivideArgs) -> Result<Outcome, CliError> {
    let g = read_graph(&a.input)?;
    let s = require_subset(&g, &a.subset)?;
    let h = if a.sever {
        build_h(&g, &s, a.t)?
    } else {
        subdivide(&g, &s, a.t)?
    };
    let text = format!("{}{}", provenance_lines(&ctx.config, &ctx.solver), h.to_edge_list());
    match ctx.out() {
        Some(path) => write_file(path, &text)?,
        None => write_stdout(&text)?,
    }
    Ok(Outcome::Success)
}

fn verify(ctx: &Context, a: &VerifyArgs) -> Result<Outcome, CliError> {
    let g = read_graph(&a.input)?;
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(CliError::Usage(format!(
            "--epsilon must lie in (0, 1), got {}",
            a.epsilon
        )));
    }
    let selector = match a.lemma {
        LemmaArg::Decay => LemmaSelector::Decay,
        LemmaArg::Unimodality => LemmaSelector::Unimodality,
        LemmaArg::Principal => LemmaSelector::Principal,
        LemmaArg::Prop61 => LemmaSelector::Prop61,
        LemmaArg::Prop62 => LemmaSelector::Prop62,
        LemmaArg::All => LemmaSelector::All,
    };
    let opts = SuiteOptions {
        epsilon: a.epsilon,
        subset: resolve_subset(&g, &a.subset)?,
        t: a.t,
        solver: ctx.solver,
        ..SuiteOptions::new(selector)
    };
    let report = run_suite(&g, &opts)?;
    let verdict = report.verdict;
    let summary = verify_summary(&report);
    let env = ctx.envelope(VerifyResult(report));
    match ctx.out() {
        Some(path) => {
            let format = format_of(ctx.cli.global.format, Some(path), Format::Json);
            write_file(path, &render(&env, format))?;
        }
        None => write_stdout(&render(&env, format_of(ctx.cli.global.format, None, Format::Json)))?,
    }
    eprintln!("{summary}");
    Ok(if verdict == Verdict::Fail {
        Outcome::ChecksFailed
    } else {
        Outcome::Success
    })
}

fn verify_summary(r: &subspec::lemmas::SuiteReport) -> String {
    let t = &r.tallies;
    let all = [
        t.partition_decay,
        t.path_decay,
        t.unimodality,
        t.principal,
        t.prop61,
        t.prop62,
    ];
    let (pass, fail, na) = all
        .iter()
        .fold((0, 0, 0), |(p, f, n), x| (p + x.pass, f + x.fail, n + x.not_applicable));
    let head = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "n/a",
    };
    let mut s = format!("verify: {head} ({pass} passed, {fail} failed, {na} not applicable)");
    if let Some(q) = &r.q_bound {
        let c = q.counts();
        s.push_str(&format!(
            "; t = {}: counts {}, {}, {}, {} against |Q| = {}",
            q.t, c[0], c[1], c[2], c[3], q.q
        ));
    }
    s
}

fn limits(ctx: &Context, a: &LimitsArgs) -> Result<Outcome, CliError> {
    let result = if let Some(d) = a.spider {
        let entry = match a.t {
            Some(t) => LimitEntry::SpiderAt {
                d,
                t,
                value: quotient_path_radius(d, t)?,
            },
            None => LimitEntry::Spider {
                d,
                value: spider_limit(d)?,
            },
        };
        LimitsResult {
            degrees: None,
            entries: vec![entry],
        }
    } else {
        let ds = match (&a.degrees, &a.graph) {
            (Some(d), _) => DegreeSequence::new(d.clone())?,
            (None, Some(p)) => DegreeSequence::from_graph(&read_graph(p)?)?,
            (None, None) => {
                return Err(CliError::Usage("pass --degrees, --graph or --spider".into()));
            }
        };
        let ks = a.k.clone().unwrap_or_else(|| (1..=ds.len() + 1).collect());
        let entries = ks
            .iter()
            .map(|&k| {
                Ok(LimitEntry::Degrees {
                    k,
                    value: subdivision_limit(&ds, k)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        LimitsResult {
            degrees: Some(ds.degrees().to_vec()),
            entries,
        }
    };
    ctx.emit(result, |r| {
        r.entries
            .iter()
            .map(|e| format!("{}\n", fmt_value(e.value())))
            .collect()
    })?;
    Ok(Outcome::Success)
}

fn sweep_config(ctx: &Context, sequential: bool) -> SweepConfig {
    SweepConfig {
        solver: ctx.solver,
        execution: if sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        timing: ctx.cli.global.timing,
    }
}

fn onset_text(o: &Onset) -> String {
    match o {
        Onset::Stabilized { t0, value } => format!("{value} from t = {t0}"),
        Onset::NotStabilizedInRange => "not stabilized in range".into(),
    }
}

fn sweep(ctx: &Context, a: &SweepArgs) -> Result<Outcome, CliError> {
    let g = read_graph(&a.input)?;
    let s = require_subset(&g, &a.subset)?;
    let cfg = sweep_config(ctx, a.sequential);
    let kind = match a.family {
        FamilyArg::G => FamilyKind::G,
        FamilyArg::H => FamilyKind::H,
    };
    let family = match a.family {
        FamilyArg::G => "g",
        FamilyArg::H => "h",
    };
    let base = stem(&a.input);
    match a.report {
        ReportArg::Convergence => {
            let trace = run_convergence(&g, &s, kind, &a.k, &a.t, &cfg)?;
            let mut summary = format!(
                "convergence: family {family}, {} of {} grid points",
                trace.points.len(),
                trace.t_grid.len()
            );
            if let Some(tr) = &trace.truncation {
                eprintln!("note: trace truncated at t = {}: {}", tr.t, tr.reason);
                summary.push_str(&format!(", truncated at t = {}", tr.t));
            }
            if let Some(c) = &trace.crosscheck {
                summary.push_str(&format!(
                    ", crosscheck at t = {} differs by {:e}",
                    c.t, c.max_difference
                ));
            }
            ctx.persist(
                trace,
                |f| format!("{base}_convergence_{family}.{}", extension(f)),
                Format::Csv,
                &summary,
            )?;
        }
        ReportArg::Stabilization => {
            let report = run_stabilization(&g, &s, &a.t, &cfg)?;
            let parts: Vec<String> = SequenceKind::ALL
                .iter()
                .map(|&k| format!("{} {}", k.label(), onset_text(&report.sequence(k).onset)))
                .collect();
            let summary = format!("stabilization: |Q| = {}; {}", report.q, parts.join("; "));
            ctx.persist(
                report,
                |f| format!("{base}_stabilization.{}", extension(f)),
                Format::Csv,
                &summary,
            )?;
        }
    }
    Ok(Outcome::Success)
}

fn scan(ctx: &Context, a: &ScanArgs) -> Result<Outcome, CliError> {
    let corpus = CorpusSpec {
        seed: ctx.solver.seed,
        instances: a.instances,
        n_min: a.n.0,
        n_max: a.n.1,
        edge_probability: a.p,
        subset: match a.subset {
            SubsetPolicyArg::All => SubsetPolicy::All,
            SubsetPolicyArg::Half => SubsetPolicy::RandomHalf,
        },
        require_connected: a.connected,
    };
    let report = scan_conjectures(&corpus, a.tmax, &sweep_config(ctx, a.sequential))?;
    let candidates = report.candidates().count();
    let summary = format!(
        "scanned {}: {} consistent in range, {} counterexample candidates, {} skipped",
        report.instances.len(),
        report.instances.len() - candidates,
        candidates,
        report.skipped.len()
    );
    let seed = ctx.solver.seed;
    ctx.persist(
        report,
        |f| format!("scan_seed{seed}.{}", extension(f)),
        Format::Json,
        &summary,
    )?;
    Ok(Outcome::Success)
}
