use std::process::{Command, Output};

use polyspace::catalog::{entry_from_json, read_jsonl};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyspace"))
        .args(args)
        .env_remove("POLYSPACE_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_torus_code() {
    let o = run(&["analyze", "--code", "7:[4321]"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("orientable: true"));
    assert!(s.contains("parallelizable: Yes"));
}

#[test]
fn analyze_lengths() {
    let o = run(&["analyze", "--lengths", "1/6,1/6,1/6,1,1,1,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("code: 8:[6321]"));
    assert!(stdout(&o).contains("parallelizable: Unknown"));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["analyze", "--lengths", "1,1,1,1"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--code", "6:[42]"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--code", "7:[1]", "--lengths", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--code", "7:[x]"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "12"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--paper", "table1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn json_analysis_reads_back_as_catalog_line() {
    let o = run(&["--json", "analyze", "--code", "7:[421|51]"]);
    assert_eq!(o.status.code(), Some(0));
    let entry = entry_from_json(stdout(&o).trim()).unwrap();
    assert_eq!(entry.code.to_string(), "7:[421|51]");
    assert_eq!(entry.report.unwrap().d_vector, vec![1, 5, 6, 2]);
}

#[test]
fn enumerate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("codes6.jsonl");
    let p = path.to_str().unwrap();
    let o = run(&["enumerate", "--n", "6", "--out", p, "--with-reports"]);
    assert_eq!(o.status.code(), Some(0));
    let entries = read_jsonl(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(entries.len(), 20);
    assert!(entries.iter().all(|e| e.report.is_some()));

    let o = run(&["verify", "--paper", "table1", "--catalog", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "20 codes: PASS\n");
    let o = run(&["verify", "--paper", "r2thm", "--catalog", p]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn enumeration_is_byte_identical() {
    let a = run(&["enumerate", "--n", "7"]);
    let b = Command::new(env!("CARGO_BIN_EXE_polyspace"))
        .args(["enumerate", "--n", "7"])
        .env("POLYSPACE_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 134);
}

#[test]
fn verify_table_one() {
    let o = run(&["verify", "--paper", "table1", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "134 codes: PASS\n");
    let o = run(&["verify", "--paper", "r2thm", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn heptagon_statistics_report_differences() {
    let o = run(&["verify", "--paper", "section3"]);
    // Two reference counts disagree with the computation; see the README.
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("Euler characteristic 0 codes: expected 30 codes, found 30 codes: PASS"));
    assert!(s.contains("null cobordant: expected 72, found 70: FAIL"));
    assert!(s.contains("unexpected: 7:[321|53]"));
}

#[test]
fn identity_suite() {
    let o = run(&["identities", "--max-m", "12", "--max-k", "12", "--wz"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 5);
    assert!(s.lines().all(|l| l.ends_with("PASS")));
    let o = run(&["--json", "identities"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}
