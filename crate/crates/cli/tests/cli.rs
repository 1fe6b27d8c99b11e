//! End-to-end tests of the `cycdep` binary: exit-status contract, JSONL
//! certificate output, and checkpoint-based resume.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_cycdep");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process must not be signalled")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be UTF-8")
}

/// Parse a JSONL byte stream and zero the timing field, the only part of
/// a certificate that is allowed to vary between identical runs.
fn parse_normalized(data: &str) -> Vec<Value> {
    data.lines()
        .map(|line| {
            let mut v: Value = serde_json::from_str(line).expect("each line must be JSON");
            v["elapsed_ms"] = Value::from(0u64);
            v
        })
        .collect()
}

fn read_normalized(path: &Path) -> Vec<Value> {
    parse_normalized(&std::fs::read_to_string(path).expect("output file must exist"))
}

#[test]
fn pair_exit_codes() {
    // alpha = -(-1) + i = 1 + i and beta = -1 + i satisfy alpha^4 = beta^4
    let dependent = run(&["pair", "-m", "-1", "-n", "1", "-k", "4"]);
    assert_eq!(exit_code(&dependent), 10);
    assert!(stdout_str(&dependent).contains("dependent"));

    let independent = run(&["pair", "-m", "1", "-n", "3", "-k", "5"]);
    assert_eq!(exit_code(&independent), 0);
    assert!(stdout_str(&independent).contains("independent"));

    // m = 0 makes alpha = zeta_k itself, a root of unity
    let torsion = run(&["pair", "-m", "0", "-n", "5", "-k", "7"]);
    assert_eq!(exit_code(&torsion), 11);
    assert!(stdout_str(&torsion).contains("torsion"));

    // k = 2 mod 4 reduces to the negated pair at k/2 with the same
    // verdict; this one maps onto (-2 + zeta_3)^3 = (1 + zeta_3)^3
    let reduced = run(&["pair", "-m", "2", "-n", "-1", "-k", "6"]);
    assert_eq!(exit_code(&reduced), 10);
    assert!(stdout_str(&reduced).contains("k = 3"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(exit_code(&run(&["pair", "-m", "1", "-n", "1", "-k", "4"])), 64);
    assert_eq!(exit_code(&run(&["pair", "-m", "1", "-n", "2", "-k", "2"])), 64);
    assert_eq!(exit_code(&run(&["verify"])), 64);
    assert_eq!(exit_code(&run(&["verify", "--range", "5:1"])), 64);
    assert_eq!(exit_code(&run(&["verify", "-a", "3", "--range", "1:5"])), 64);
    assert_eq!(exit_code(&run(&["no-such-command"])), 64);
    assert_eq!(exit_code(&run(&["--help"])), 0);
}

#[test]
fn phi_prints_exact_values() {
    let out = run(&["phi", "-k", "12", "-x", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), "13");

    let out = run(&["phi", "-k", "9", "-x", "-2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), "57");
}

#[test]
fn candidates_json_is_one_object_per_subset() {
    let out = run(&["candidates", "-a", "6", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let rows: Vec<Value> = stdout_str(&out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON per subset"))
        .collect();
    // a = 6 has nonempty subsets {2}, {3}, {2, 3}
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert!(row["m_bound"].as_u64().is_some());
        assert!(row["candidates"].is_array());
    }
}

#[test]
fn verify_streams_jsonl_to_stdout() {
    let out = run(&["verify", "--range", "1:30", "--jobs", "2"]);
    assert_eq!(exit_code(&out), 10, "a = 2, 3, 21 all lie in the range");
    let certs = parse_normalized(&stdout_str(&out));
    assert_eq!(certs.len(), 30);
    let exceptional: Vec<u64> = certs
        .iter()
        .filter(|c| !c["exceptions"].as_array().unwrap().is_empty())
        .map(|c| c["a"].as_u64().unwrap())
        .collect();
    assert_eq!(exceptional, vec![2, 3, 21]);
    // the summary goes to stderr so stdout stays pure JSONL
    assert!(String::from_utf8_lossy(&out.stderr).contains("verified 30 gaps"));
}

#[test]
fn verify_clean_range_exits_zero() {
    let out = run(&["verify", "--range", "4:20", "--jobs", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(parse_normalized(&stdout_str(&out)).len(), 17);
}

#[test]
fn checkpoint_resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("done.ckpt");
    let out_path = dir.path().join("certs.jsonl");
    let ckpt_s = ckpt.to_str().unwrap();
    let out_s = out_path.to_str().unwrap();

    // first run covers a prefix of the range and journals it
    let first = run(&[
        "verify", "--range", "1:6", "--jobs", "2", "--checkpoint", ckpt_s, "--out", out_s,
    ]);
    assert_eq!(exit_code(&first), 10);
    assert_eq!(read_normalized(&out_path).len(), 6);

    // second run over the full range appends only the missing gaps
    let second = run(&[
        "verify", "--range", "1:12", "--jobs", "2", "--checkpoint", ckpt_s, "--out", out_s,
    ]);
    assert_eq!(exit_code(&second), 0, "a = 7..12 holds no dependent pairs");
    assert!(
        stdout_str(&second).contains("6 skipped via checkpoint"),
        "summary must report the journal hits"
    );
    let merged = read_normalized(&out_path);

    let uninterrupted = run(&["verify", "--range", "1:12", "--jobs", "2"]);
    assert_eq!(merged, parse_normalized(&stdout_str(&uninterrupted)));
}
