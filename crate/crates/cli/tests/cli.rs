use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn llab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llab"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .env_remove("LLAB_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn table_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let golden = include_str!("golden/table_n12.txt");
    let cold = llab(dir.path(), &["table", "--n", "12"]);
    assert_eq!(code(&cold), 0);
    assert_eq!(stdout(&cold), golden);
    // second run reads the cache written by the first
    assert!(dir.path().join("N=12.json").exists());
    assert_eq!(stdout(&llab(dir.path(), &["table", "--n", "12"])), golden);
    assert_eq!(
        stdout(&llab(dir.path(), &["table", "--n", "12", "--method", "structured"])),
        golden
    );
}

#[test]
fn table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&llab(dir.path(), &["table", "--n", "12", "--no-cache"]));
    let row = |signs: &str| {
        out.lines()
            .find(|l| l.starts_with(signs))
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>()
    };
    assert_eq!(
        row("++++----++++"),
        ["++++----++++", "4", "Φ2Φ4Φ24", "(1,1,1,0)→(0,0,0,1)", "2"]
    );
    assert_eq!(row("++++++++++++"), ["++++++++++++", "-", "Φ2Φ4Φ3Φ6Φ12", "∅"]);
    assert_eq!(row("++++++------")[1], "6");
    assert_eq!(row("++++++------").last(), Some(&"1"));
}

#[test]
fn enumerate_counts_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&llab(dir.path(), &["enumerate", "--n", "12"]));
    assert!(text.starts_with("N=12 method=naive count=8\n"));
    assert_eq!(text.lines().count(), 10);
    let json: Value =
        serde_json::from_str(&stdout(&llab(dir.path(), &["enumerate", "--n", "3", "--out", "json"]))).unwrap();
    assert_eq!(json[0]["members"].as_array().unwrap().len(), 1);
    assert_eq!(json[0]["members"][0]["signs"], "+++");
    let csv = stdout(&llab(dir.path(), &["enumerate", "--n", "2..4", "--out", "csv"]));
    assert_eq!(csv.lines().next(), Some("N,signs,i,factorization"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&llab(d, &["enumerate", "--n", "40", "--method", "naive"])), 2);
    assert_eq!(
        code(&llab(
            d,
            &["enumerate", "--n", "40", "--method", "naive", "--allow-large"]
        )),
        2
    );
    assert_eq!(code(&llab(d, &["verify", "--n", "20..30", "--which", "c12"])), 2);
    assert_eq!(code(&llab(d, &["enumerate", "--n", "1"])), 3);
    assert_eq!(code(&llab(d, &["enumerate", "--n", "abc"])), 3);
    assert_eq!(code(&llab(d, &["verify", "--n", "12", "--which", "c99"])), 3);
    assert_eq!(code(&llab(d, &["--naive-cap", "35", "enumerate", "--n", "3"])), 3);
    assert_eq!(code(&llab(d, &["factor", "--poly", "++x"])), 3);
    assert_eq!(code(&llab(d, &["factor"])), 3);
    assert_eq!(code(&llab(d, &["factor", "--poly", "++-+"])), 1);
    assert_eq!(code(&llab(d, &["check-form11", "--poly", "++-+"])), 1);
    assert_eq!(code(&llab(d, &["epath", "--poly", "++-+"])), 3);
    assert_eq!(code(&llab(d, &["--help"])), 0);
    assert_eq!(code(&llab(d, &["--version"])), 0);
}

#[test]
fn workers_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_llab"))
            .args(["enumerate", "--n", "10", "--no-cache"])
            .args(extra)
            .env("LLAB_WORKERS", env)
            .current_dir(dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2", &[])), 0);
    assert_eq!(code(&run("0", &[])), 3);
    // the flag wins over the environment
    assert_eq!(code(&run("0", &["--workers", "1"])), 0);
    assert!(!dir.path().join("lc_cache").exists());
}

#[test]
fn verify_writes_reports_and_finds_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let out = llab(dir.path(), &["verify", "--n", "12", "--which", "c43", "--out", "json"]);
    assert_eq!(code(&out), 0);
    let reports: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = reports[0]["entries"].as_array().unwrap();
    let witnesses = |signs: &str| {
        entries.iter().find(|e| e["signs"] == signs).unwrap()["witness"]["witnesses"]
            .as_array()
            .unwrap()
            .clone()
    };
    assert!(witnesses("++----++++--")
        .iter()
        .any(|w| w["signs"] == "++--++--++--" && w["t"] == 2));
    assert!(witnesses("+++------+++")
        .iter()
        .any(|w| w["signs"] == "+++---+++---" && w["t"] == 1));
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report-c43-N=12.json")).unwrap()).unwrap();
    assert_eq!(saved, reports[0]);

    let bound = llab(
        dir.path(),
        &["verify", "--n", "12", "--which", "bound", "--out", "json"],
    );
    assert_eq!(code(&bound), 0);
    let b: Value = serde_json::from_str(&stdout(&bound)).unwrap();
    assert!(b[0]["bound"]["min_ratio"].as_f64().unwrap() >= 2.375);

    let sweep = llab(dir.path(), &["verify", "--n", "2..12", "--which", "t39"]);
    assert_eq!(code(&sweep), 0);
    assert!(stdout(&sweep).ends_with("t39 over N=2..12: 11 passed, 0 failed\n"));
}

#[test]
fn polynomial_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        stdout(&llab(d, &["factor", "--poly", "++----++++--"])),
        "++----++++--\n= -Φ1Φ2^2Φ24\n"
    );
    assert_eq!(
        stdout(&llab(d, &["factor", "--factors", "2:1,4:1,24:1"])),
        "++++----++++\n= Φ2Φ4Φ24\n"
    );
    assert_eq!(
        stdout(&llab(d, &["check-form11", "--poly", "++++++++++++"])),
        "++++++++++++\n= Φ2(x)Φ2(x^2)Φ3(x^4)\n"
    );
    let path = stdout(&llab(d, &["epath", "--factors", "2:1,4:1,12:2"]));
    assert!(path.contains("d=3  (1,1,1,0)→(0,0,2,0)"), "{path}");
    assert!(path.ends_with("levels: {1}\n"));
    let norms = stdout(&llab(d, &["norms", "--max-r", "3"]));
    assert!(norms.lines().nth(4).unwrap().starts_with("3  152"));
    let one: Value = serde_json::from_str(&stdout(&llab(d, &["norms", "--poly", "++--", "--out", "json"]))).unwrap();
    assert_eq!(one["l4_fourth"], "28");
    assert_eq!(one["bound_holds"], true);
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["enumerate", "--n", "8..14", "--out", "json"],
        &["table", "--n", "18", "--out", "csv"],
        &["verify", "--n", "16", "--which", "c12"],
        &["epath", "--poly", "+++------+++", "--out", "json"],
        &["norms", "--max-r", "20", "--out", "csv"],
        &["check-form11", "--poly", "++--++--++--", "--out", "json"],
    ];
    for args in cases {
        let a = llab(dir.path(), args);
        let b = llab(dir.path(), args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}
