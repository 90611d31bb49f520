use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn hodos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodos"))
        .args(args)
        .output()
        .expect("run hodos")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_file(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_product_complex_passes() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "verify",
        "--complex",
        arg(&data("prod2x2.json")),
        "--graph",
        "cycle:2",
        "--ell",
        "1",
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc = json_file(&out.path().join("verify.json"));
    assert_eq!(doc["passed"], true);
    let rows = doc["rows"].as_array().unwrap();
    let claims: Vec<&str> = rows.iter().map(|r| r["check"].as_str().unwrap()).collect();
    for needle in [
        "lambda(H) >=",
        "Gap(Papx)",
        "Gap(Paqx)",
        "localizes",
        "chain rule",
        "EC(Qdo)",
    ] {
        assert!(
            claims.iter().any(|c| c.contains(needle)),
            "missing {needle}"
        );
    }
    assert!(out.path().join("verify.csv").exists());
}

#[test]
fn spectra_writes_eigenvalue_csv() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "spectra",
        "--complex",
        arg(&data("k3col.json")),
        "--walk",
        "down-up",
        "--ell",
        "1",
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.path().join("eigenvalues.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "index,eigenvalue");
    assert_eq!(lines.len(), 7);
    let doc = json_file(&out.path().join("spectra.json"));
    assert_eq!(doc["states"], 6);
    assert!(doc["report"]["gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn spectra_of_expanderized_walk_needs_graph() {
    let o = hodos(&[
        "spectra",
        "--complex",
        arg(&data("prod2x2.json")),
        "--walk",
        "expanderized-down-up",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = hodos(&[
        "spectra",
        "--complex",
        arg(&data("prod2x2.json")),
        "--walk",
        "expanderized-down-up",
        "--graph",
        "cycle",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn mix_reports_exact_down_up_time() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "mix",
        "--ising",
        arg(&data("j0h0_n2.json")),
        "--epsilon",
        "0.25",
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_file(&out.path().join("mix.json"));
    let walks = doc["walks"].as_array().unwrap();
    let du = walks.iter().find(|w| w["walk"] == "down-up").unwrap();
    // Two free spins, one resampled per step: the worst start is at TV 3/4 and
    // one step leaves mass 1/2, 1/4, 1/4, 0, at TV 1/4.
    assert_eq!(du["tmix"], 1);
    assert_eq!(du["within_bound"], true);
    let curve = std::fs::read_to_string(out.path().join("tv_curve_down-up.csv")).unwrap();
    assert!(curve.starts_with("t,tv,bits\n0,0.75,0\n"));
}

#[test]
fn sample_is_deterministic() {
    let run = |dir: &Path| {
        let o = hodos(&[
            "sample",
            "--complex",
            arg(&data("k3col.json")),
            "--walk",
            "expanderized-down-up",
            "--ell",
            "2",
            "--graph",
            "cycle",
            "--steps",
            "50",
            "--seed",
            "9",
            "--out",
            arg(dir),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        std::fs::read(dir.join("trajectory.csv")).unwrap()
    };
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ta = run(a.path());
    assert_eq!(ta, run(b.path()));
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with("step,state_id,subset_id,bits_used\n0,0,0,0\n"));
    assert_eq!(text.lines().count(), 52);
}

#[test]
fn sample_accepts_walk_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"kind": "down-up", "ell": 1}"#).unwrap();
    let o = hodos(&[
        "sample",
        "--complex",
        arg(&data("prod2x2.json")),
        "--walk-spec",
        arg(&spec),
        "--steps",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["walk"], "down-up");
    assert_eq!(doc["steps"], 5);
}

#[test]
fn expander_certifies_random_regular() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "expander",
        "--graph",
        "rr:k=4,lam=0.9",
        "--vertices",
        "12",
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_file(&out.path().join("expander.json"));
    assert!(doc["spectrum"]["lambda"].as_f64().unwrap() <= 0.9);
    let text = std::fs::read_to_string(out.path().join("graph.txt")).unwrap();
    assert!(text.starts_with("12 4\n"));
}

#[test]
fn build_round_trips_through_complex_input() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "build",
        "--ising",
        arg(&data("j0h0_n2.json")),
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let complex = out.path().join("complex.json");
    let a = hodos(&["spectra", "--complex", arg(&complex)]);
    let b = hodos(&["spectra", "--ising", arg(&data("j0h0_n2.json"))]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_one() {
    let o = hodos(&["verify", "--complex", arg(&data("prod2x2.json")), "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hodos(&["verify", "--complex", "/no/such/file.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hodos(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hodos(&[
        "mix",
        "--ising",
        arg(&data("j0h0_n2.json")),
        "--epsilon",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = hodos(&[
        "verify",
        "--complex",
        arg(&data("prod2x2.json")),
        "--graph",
        "cycle:5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"n\": 2,\n  \"facets\": [\n    {\"assignment\": [\"a\"], \"weight\": }\n",
    )
    .unwrap();
    let o = hodos(&["verify", "--complex", arg(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn failed_assertion_exits_two_and_still_writes() {
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&[
        "verify",
        "--ising",
        arg(&data("mean_field_n6.json")),
        "--out",
        arg(out.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let doc = json_file(&out.path().join("verify.json"));
    assert_eq!(doc["passed"], false);
    let failed: Vec<&str> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["min link marginal >= exp(-4|h|_inf - 1)/2"]);
}

#[test]
fn empty_corpus_is_an_empty_report() {
    let corpus = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let o = hodos(&["suite", arg(corpus.path()), "--out", arg(out.path())]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_file(&out.path().join("suite.json"));
    assert!(doc["rows"].as_array().unwrap().is_empty());
    let csv = std::fs::read_to_string(out.path().join("suite.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn non_partite_rows_are_skipped() {
    let corpus = tempfile::tempdir().unwrap();
    for f in ["nonpartite.json", "prod2x2.json"] {
        std::fs::copy(data(f), corpus.path().join(f)).unwrap();
    }
    std::fs::write(corpus.path().join("notes.txt"), "ignored").unwrap();
    let o = hodos(&["suite", arg(corpus.path()), "--graph", "complete"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        doc["instances"],
        serde_json::json!(["nonpartite", "prod2x2"])
    );
    let rows = doc["rows"].as_array().unwrap();
    let skipped: Vec<_> = rows
        .iter()
        .filter(|r| r["status"] == "skipped: requires partite")
        .collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|r| r["instance"] == "nonpartite"));
    assert!(rows.iter().any(
        |r| r["instance"] == "prod2x2" && r["check"].as_str().unwrap().starts_with("Gap(Papx)")
    ));
}

#[test]
fn unreadable_corpus_file_is_an_error_row() {
    let corpus = tempfile::tempdir().unwrap();
    std::fs::write(corpus.path().join("broken.json"), "{").unwrap();
    std::fs::copy(data("prod2x2.json"), corpus.path().join("ok.json")).unwrap();
    let o = hodos(&["suite", arg(corpus.path())]);
    assert_eq!(o.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows[0]["status"].as_str().unwrap().starts_with("error"));
    assert!(rows.iter().skip(1).all(|r| r["status"] == "pass"));
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hodos"))
            .args(["suite", "--random", "3", "--seed", "4"])
            .env("HODOS_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run("4").stdout);
}
