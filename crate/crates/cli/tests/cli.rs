use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use subspec::experiments::{load_json, ScanReport, StabilizationReport};
use subspec::graph::{subdivide, EdgeSubset, Graph};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn subspec() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subspec"));
    c.env_remove("SUBSPEC_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    subspec().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn csv_table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column<'a>(header: &[String], rows: &'a [Vec<String>], name: &str) -> Vec<&'a str> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].as_str()).collect()
}

#[test]
fn spectrum_of_path() {
    let o = run(&["spectrum", arg(&data("path3.el"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1.41421356 0 -1.41421356\n");
}

#[test]
fn interval_count_below_minus_two() {
    let o = run(&["spectrum", "--interval", "-inf,-2", arg(&data("fig1a.el"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn extremes_above_dense_cap() {
    let big = data("big.el");
    let o = run(&["spectrum", "--k", "1", "--extremes", arg(&big)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let v: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(v.len(), 1);
    assert!(v[0].starts_with("2.1213203"), "{}", v[0]);

    let o = run(&["spectrum", arg(&big)]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("--extremes"));
}

#[test]
fn selected_values_match_full_spectrum() {
    let k4 = data("k4.el");
    let o = run(&["spectrum", "--k", "1,2", arg(&k4)]);
    assert_eq!(stdout(&o), "3 -1\n");
    let o = run(&["spectrum", "--k", "1", "--smallest", "--extremes", arg(&k4)]);
    assert_eq!(stdout(&o), "-1\n");
    let o = run(&["spectrum", "--k", "5", arg(&k4)]);
    assert_eq!(code(&o), 2);
}

fn parse_output(o: &Output) -> Graph {
    assert_eq!(code(o), 0, "{}", stderr(o));
    Graph::parse_edge_list(&stdout(o)).expect("edge list parses")
}

#[test]
fn subdivide_triangle_gives_hexagon() {
    let g = parse_output(&run(&["subdivide", "--all", "--t", "2", arg(&data("k3.el"))]));
    assert_eq!((g.n(), g.edge_count()), (6, 6));
    assert!(g.degrees().iter().all(|&d| d == 2));
    assert!(g.is_connected());
}

#[test]
fn severed_triangle_is_three_paths() {
    let g = parse_output(&run(&[
        "subdivide",
        "--all",
        "--sever",
        "--t",
        "1",
        arg(&data("k3.el")),
    ]));
    assert_eq!((g.n(), g.edge_count()), (9, 6));
    let comps = g.components();
    assert_eq!(comps.len(), 3);
    for c in comps {
        assert_eq!(c.len(), 3);
        let mut d: Vec<usize> = c.iter().map(|&v| g.degree(v)).collect();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 2]);
    }
}

#[test]
fn subdivide_single_edge_matches_library() {
    let input = data("fig1a.el");
    let g = parse_output(&run(&["subdivide", "--edges", "0", "--t", "3", arg(&input)]));
    let base = Graph::parse_edge_list(&std::fs::read_to_string(&input).unwrap()).unwrap();
    let expected = subdivide(&base, &EdgeSubset::new(&base, [0]).unwrap(), 3).unwrap();
    assert_eq!(g, expected);
    assert_eq!(g.n(), 7);
}

#[test]
fn subdivide_output_carries_metadata() {
    let o = run(&["subdivide", "--all", "--t", "2", "--seed", "5", arg(&data("k3.el"))]);
    let text = stdout(&o);
    assert!(text.starts_with("# config: {"));
    assert!(text.contains("# seed: 5\n"));
    assert!(text.contains("# tolerances: {\"tau\":1e-9"));
}

#[test]
fn subset_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.txt");
    std::fs::write(&s, "0 # first edge\n").unwrap();
    let input = data("fig1a.el");
    let a = run(&["subdivide", "--subset", arg(&s), "--t", "3", arg(&input)]);
    let b = run(&["subdivide", "--edges", "0", "--t", "3", arg(&input)]);
    assert_eq!(parse_output(&a), parse_output(&b));
    let o = run(&["subdivide", "--t", "3", arg(&input)]);
    assert_eq!(code(&o), 2);
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("JSON on stdout")
}

#[test]
fn verify_decay_on_spider_passes() {
    let o = run(&["verify", "--lemma", "decay", arg(&data("spider3_40.el"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["kind"], "lemma_suite");
    assert_eq!(v["payload"]["verdict"], "pass");
    assert!(v["payload"]["tallies"]["path_decay"]["pass"].as_u64().unwrap() > 0);
    assert!(stderr(&o).starts_with("verify: pass"));
}

#[test]
fn verify_q_bound_on_k4() {
    let o = run(&[
        "verify",
        "--lemma",
        "prop62",
        "--subset",
        "all",
        "--t",
        "10",
        arg(&data("k4.el")),
    ]);
    assert_eq!(code(&o), 0);
    let q = &json(&o)["payload"]["q_bound"];
    assert_eq!(q["q"], 4);
    for key in ["g_above", "h_above", "g_below", "h_below"] {
        assert!(q[key]["count"].as_u64().unwrap() <= 4);
    }
}

#[test]
fn verify_unimodality_on_short_path_is_not_applicable() {
    let o = run(&["verify", "--lemma", "unimodality", arg(&data("p5.el"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["payload"]["verdict"], "not_applicable");
    assert!(stderr(&o).contains("n/a"));
}

#[test]
fn limits_values() {
    let cases: [(&[&str], f64, f64); 3] = [
        (&["--degrees", "3,3,3,3", "--k", "4"], 2.1213203, 5e-8),
        (&["--degrees", "3,3,3,3", "--k", "5"], 2.0, 0.0),
        (&["--spider", "4"], 2.3094011, 5e-8),
    ];
    for (extra, want, half_ulp) in cases {
        let mut a = vec!["limits"];
        a.extend_from_slice(extra);
        let o = run(&a);
        assert_eq!(code(&o), 0);
        let got = stdout(&o);
        assert_eq!(got.lines().count(), 1);
        let v: f64 = got.trim().parse().unwrap();
        assert!((v - want).abs() <= half_ulp, "{a:?}: {got}");
    }
    assert_eq!(stdout(&run(&["limits", "--degrees", "3,3,3,3", "--k", "5"])), "2\n");
    assert_eq!(stdout(&run(&["limits", "--spider", "4"])), "2.30940108\n");
}

#[test]
fn limits_from_graph_and_finite_spider() {
    let o = run(&["limits", "--graph", arg(&data("k4.el"))]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines, ["2.12132034", "2.12132034", "2.12132034", "2.12132034", "2"]);
    let o = run(&["limits", "--spider", "4", "--t", "10"]);
    let r: f64 = stdout(&o).trim().parse().unwrap();
    assert!(r < 2.3094011 && r > 2.3);
}

#[test]
fn malformed_degrees_exit_two() {
    for bad in ["3,x", "3,3,3", "0,2"] {
        let o = run(&["limits", "--degrees", bad]);
        assert_eq!(code(&o), 2, "{bad}");
    }
    assert_eq!(code(&run(&["limits"])), 2);
}

#[test]
fn sweep_trace_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k4.csv");
    let o = run(&[
        "sweep",
        "--all",
        "--t",
        "1..64",
        "--k",
        "1..5",
        arg(&data("k4.el")),
        "--out",
        arg(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("convergence: family g, 64 of 64 grid points"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# schema_version: 1\n# kind: convergence_trace\n# config: {"));
    let (header, rows) = csv_table(&text);
    assert_eq!(rows.len(), 64);
    for c in [
        "t",
        "n",
        "lambda_1",
        "lambda_5",
        "lambda_min_1",
        "m_above",
        "m_below",
        "gap_1",
    ] {
        assert!(header.iter().any(|h| h == c), "{c}");
    }
    let last: f64 = column(&header, &rows, "lambda_1")[63].parse().unwrap();
    assert!((last - 3.0 / 2f64.sqrt()).abs() < 1e-6);
    assert_eq!(column(&header, &rows, "m_above")[63], "4");
}

#[test]
fn sweep_counts_below_minus_two_alternate() {
    let o = run(&["sweep", "--t", "1..3", "--edges", "0", arg(&data("fig1a.el"))]);
    assert_eq!(code(&o), 0);
    let (header, rows) = csv_table(&stdout(&o));
    assert_eq!(column(&header, &rows, "m_below"), ["1", "0", "1"]);
    assert!(stderr(&o).starts_with("convergence:"));
}

#[test]
fn stabilization_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stab.json");
    let o = run(&[
        "sweep",
        "--all",
        "--t",
        "1..24",
        "--report",
        "stabilization",
        arg(&data("k4.el")),
        "--out",
        arg(&out),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("g_above 4 from t = "));
    let env = load_json::<StabilizationReport>(&out).unwrap();
    assert!(env.payload.onsets_consistent());
    assert!(env.payload.within_q_bound());
    assert_eq!(env.seed, 0);
    let config: serde_json::Value = serde_json::from_str(&env.config).unwrap();
    assert_eq!(config["command"]["sweep"]["report"], "stabilization");
}

#[test]
fn truncated_sweep_exits_zero_with_note() {
    let o = run(&[
        "sweep",
        "--all",
        "--t",
        "1..4",
        "--k",
        "1",
        "--dense-cap",
        "3",
        arg(&data("k4.el")),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("truncated at t = 1"));
}

#[test]
fn scan_report_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let args = [
        "scan",
        "--seed",
        "7",
        "--n",
        "8..12",
        "--p",
        "0.4",
        "--tmax",
        "20",
        "--out",
        arg(&out),
    ];
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let env = load_json::<ScanReport>(&out).unwrap();
    let r = &env.payload;
    assert_eq!(env.seed, 7);
    assert_eq!(r.corpus.seed, 7);
    assert_eq!(r.instances.len() + r.skipped.len(), 50);
    assert!(r.instances.iter().all(|i| (8..=12).contains(&i.n)));
    let cand = r.candidates().count();
    let summary = format!(
        "scanned {}: {} consistent in range, {} counterexample candidates, {} skipped",
        r.instances.len(),
        r.instances.len() - cand,
        cand,
        r.skipped.len()
    );
    assert_eq!(stdout(&o).lines().next().unwrap(), summary);

    let first = std::fs::read(&out).unwrap();
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn reruns_are_byte_identical() {
    let input = data("k4.el");
    let a = run(&["sweep", "--all", "--t", "1..20", "--k", "1..3", arg(&input)]);
    let b = run(&["sweep", "--all", "--t", "1..20", "--k", "1..3", arg(&input)]);
    assert_eq!(a.stdout, b.stdout);
    let s = run(&[
        "sweep",
        "--all",
        "--t",
        "1..20",
        "--k",
        "1..3",
        "--sequential",
        arg(&input),
    ]);
    let body = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("# config:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&a), body(&s));
}

#[test]
fn out_dir_variable_sets_default_destination() {
    let dir = tempfile::tempdir().unwrap();
    let o = subspec()
        .env("SUBSPEC_OUT_DIR", dir.path())
        .args([
            "sweep",
            "--all",
            "--t",
            "1..8",
            "--report",
            "stabilization",
            arg(&data("k4.el")),
        ])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let written = dir.path().join("k4_stabilization.csv");
    assert!(written.exists());
    assert!(stdout(&o).contains(&format!("wrote {}", written.display())));

    let explicit = dir.path().join("sub/explicit.json");
    let o = subspec()
        .env("SUBSPEC_OUT_DIR", dir.path())
        .args(["scan", "--instances", "3", "--tmax", "4", "--out", arg(&explicit)])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(explicit.exists());
    assert!(!dir.path().join("scan_seed0.json").exists());
}

#[test]
fn persisted_spectrum_embeds_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spec.csv");
    let o = run(&["spectrum", arg(&data("path3.el")), "--out", arg(&out), "--seed", "9"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# kind: spectrum\n"));
    assert!(text.contains("# seed: 9\n"));
    assert!(text.contains("\"seed\":9"));
    let (header, rows) = csv_table(&text);
    assert_eq!(header, ["index", "value"]);
    assert_eq!(rows.len(), 3);
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "3 2\n0 1\n1 x\n").unwrap();
    let o = run(&["spectrum", arg(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3, column 3"), "{}", stderr(&o));
}

#[test]
fn usage_and_io_exit_codes() {
    assert_eq!(code(&run(&["spectrum"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["spectrum", "--interval", "2,1", arg(&data("k4.el"))])), 2);
    assert_eq!(code(&run(&["spectrum", "/nonexistent/graph.el"])), 4);
    let o = run(&["spectrum", arg(&data("k4.el")), "--out", "/proc/nonexistent/x.json"]);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&run(&["--help"])), 0);
}
