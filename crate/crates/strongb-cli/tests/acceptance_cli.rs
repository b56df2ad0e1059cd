//! Acceptance checks for the command-line contract: byte-identical reruns,
//! the documented example invocations, and the exit-code convention.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strongb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> Vec<u8> {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("strongb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

#[test]
fn reruns_with_same_seed_are_byte_identical() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["findim", "--algebra", "ck:2", "--degree", "1", "--samples", "100", "--seed", "42"],
        vec!["findim", "--task", "strongb", "--algebra", "l1z:3", "--samples", "16", "--seed", "9"],
        vec!["cvp", "--group", "cyclic:3", "--p", "2", "--samples", "20", "--seed", "5"],
        vec!["witness", "--epsilon", "0.6", "--delta", "0.006", "--truncation", "2000"],
        vec!["constants", "--n", "1", "--M", "1", "--C", "1"],
        vec!["cvp", "--samples", "10", "--seed", "3", "--format", "csv"],
    ];
    for args in &cases {
        let first = stdout_of(args);
        let second = stdout_of(args);
        assert_eq!(first, second, "rerun differed for {args:?}");
        assert!(!first.is_empty(), "no output for {args:?}");
    }
    println!("acceptance cli determinism: pass ({} invocations doubled)", cases.len());
}

#[test]
fn file_output_matches_stdout_and_reruns() {
    let p1 = temp_path("det-a.json");
    let p2 = temp_path("det-b.json");
    let args = ["findim", "--algebra", "m2", "--samples", "10", "--seed", "4"];
    let via_stdout = stdout_of(&args);
    for p in [&p1, &p2] {
        let out = bin().args(args).arg("--output").arg(p).output().expect("binary runs");
        assert!(out.status.success());
        assert!(out.stdout.is_empty(), "file mode should not print the report");
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, via_stdout, "file content must equal stdout content");
    println!("acceptance cli file output: pass");
}

#[test]
fn constants_example_reports_pipeline_value() {
    let out = stdout_of(&["constants", "--n", "1", "--M", "1", "--C", "1"]);
    let doc: serde_json::Value = serde_json::from_slice(&out).expect("valid JSON");
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["tool"], "strongb");
    assert_eq!(doc["command"], "constants");
    assert_eq!(doc["seed"], 0);
    let entries = doc["entries"].as_array().unwrap();
    let hyperref = entries
        .iter()
        .find(|e| e["name"] == "hyperref_bound")
        .expect("hyperref_bound entry present");
    let value = hyperref["bound"].as_f64().unwrap();
    assert!(
        (value - 4.78878e6).abs() <= 1e2,
        "hyperref_bound off: {value}"
    );
    assert!(hyperref["formula"].as_str().unwrap().contains("2^(n-1)"));
    assert!(doc["config"]["r"].is_string(), "config echo must list r");
    println!("acceptance cli constants example: pass (hyperref_bound={value})");
}

#[test]
fn witness_example_yields_twelve_pass_entries() {
    let out = stdout_of(&[
        "witness",
        "--epsilon",
        "0.6",
        "--delta",
        "0.006",
        "--truncation",
        "100000",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out).expect("valid JSON");
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12, "expected 12 checks");
    assert!(entries.iter().all(|e| e["status"] == "pass"));
    assert_eq!(doc["summary"]["pass"], 12);
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["summary"]["inconclusive"], 0);
    println!("acceptance cli witness example: pass (12 entries)");
}

#[test]
fn csv_format_keeps_fixed_columns() {
    let out = stdout_of(&["constants", "--format", "csv", "--seed", "8"]);
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        lines.next(),
        Some("name,bound,bracket_lo,bracket_hi,status,formula"),
        "fixed header line"
    );
    assert!(lines.next().unwrap().starts_with("circle_lemma_bound,"));
    assert!(text.lines().any(|l| l == "# seed: 8"), "seed recorded in CSV preamble");
    println!("acceptance cli csv columns: pass");
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: clean run.
    assert_eq!(run(&["constants"]).status.code(), Some(0));

    // 2: invalid configuration, with a diagnostic on stderr.
    let bad_key = temp_path("bad-key.cfg");
    std::fs::write(&bad_key, "command = witness\nepsilom = 0.5\n").unwrap();
    let out = bin().arg("--config").arg(&bad_key).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilom"));

    assert_eq!(run(&["witness", "--epsilon", "5.0"]).status.code(), Some(2));
    assert_eq!(run(&["findim", "--task", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["findim", "--algebra", "bogus:1"]).status.code(), Some(2));
    assert_eq!(run(&["cvp", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--seed", "1"]).status.code(), Some(2), "missing command");
    assert_eq!(run(&["witness", "--bogus", "1"]).status.code(), Some(2), "unknown flag");

    // 3: numeric size guard.
    let out = run(&["cvp", "--group", "cyclic:70", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));

    println!("acceptance cli exit codes: pass");
}

#[test]
fn config_file_and_flags_resolve_identically() {
    let cfg = temp_path("equiv.cfg");
    std::fs::write(
        &cfg,
        "command = findim\ntask = cochain\nalgebra = m2\ndegree = 1\nsamples = 10\nseed = 5\n",
    )
    .unwrap();
    let from_file = {
        let out = bin().arg("--config").arg(&cfg).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let from_flags = stdout_of(&[
        "findim", "--task", "cochain", "--algebra", "m2", "--degree", "1", "--samples", "10",
        "--seed", "5",
    ]);
    assert_eq!(from_file, from_flags, "config file and flags must resolve to the same run");

    // A flag overrides the file value and shows up in the echoed config.
    let overridden = {
        let out = bin().args(["--config"]).arg(&cfg).args(["--seed", "6"]).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let doc: serde_json::Value = serde_json::from_slice(&overridden).unwrap();
    assert_eq!(doc["seed"], 6);
    println!("acceptance cli config file: pass");
}
