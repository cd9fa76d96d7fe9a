use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ssent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssent")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HALF_TWO: &str = r#"{"forms": [[0,0],[1,0],[0,1]], "lambda": {"rational": "1/2"}, "tau": {"rational": "2"}}"#;

#[test]
fn entropy_at_exact_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", HALF_TWO);
    let o = ssent(&["entropy", "--spec", spec.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want = 2.0 * 3f64.ln() - (4.0 / 9.0) * 2f64.ln();
    assert!((v["garsia_entropy"].as_f64().unwrap() - want).abs() < 1e-12);
    assert_eq!(v["overlap"]["n"], 2);
    assert!(v["dim_upper_bound"].as_f64().unwrap() <= 1.0);
}

#[test]
fn entropy_of_free_system() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "free.json",
        r#"{"forms": [[0,0],[1,0],[0,1]], "lambda": {"transcendental": "l"}, "tau": {"transcendental": "t"}}"#,
    );
    let o = ssent(&["entropy", "--spec", spec.to_str().unwrap(), "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["garsia_entropy"].as_f64().unwrap() - 3.0 * 3f64.ln()).abs() < 1e-12);
    assert!(v["overlap"].is_null());
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "bad.json", "{\"forms\": [[0,0],");
    let o = ssent(&["entropy", "--spec", spec.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(ssent(&["entropy", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn guardrail_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", HALF_TWO);
    let o = ssent(&["entropy", "--spec", spec.to_str().unwrap(), "--n", "5", "--raw-limit", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn scan_single_overlap_cell() {
    let o = ssent(&["scan", "--n", "2", "--grid", "1/2:1/2:1,2:2:1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# ssentropy-scan v1");
    assert_eq!(lines[1], "lambda,tau,rate_upper,overlap_n,dim_upper");
    assert_eq!(lines.len(), 3);
    let row: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&row[..2], &["1/2", "2/1"]);
    assert_eq!(row[3], "2");
}

#[test]
fn scan_grid_avoiding_overlaps() {
    // λ = a/7 for a = 1, 2, 3 and τ = b/11 for b = 3, 4, 5
    let o = ssent(&["scan", "--n", "2", "--grid", "1/7:3/7:3,3/11:5/11:3", "--mode", "overlap-flag"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 9);
    for (i, row) in rows.iter().enumerate() {
        let (a, b) = (1 + i as i64 / 3, 3 + i as i64 % 3);
        // 77·(d₀ + d₁λ) with digit values 11·{0, 1, τ} = {0, 11, b}
        let digits = [0, 11, b];
        let values: BTreeSet<i64> = digits.iter().flat_map(|&d0| digits.iter().map(move |&d1| 7 * d0 + a * d1)).collect();
        assert_eq!(values.len(), 9, "oracle found an overlap at a = {a}, b = {b}");
        assert!(row.ends_with(",-1"), "{row}");
        assert!(row.starts_with(&format!("{a}/7,{b}/11,")), "{row}");
    }
}

#[test]
fn scan_empty_range_is_header_only() {
    let o = ssent(&["scan", "--n", "2", "--grid", "1/2:1/2:0,0:1:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# ssentropy-scan v1\nlambda,tau,rate_upper,overlap_n,dim_upper\n");
}

#[test]
fn scan_rejects_bad_grid() {
    assert_eq!(ssent(&["scan", "--n", "2", "--grid", "0:1/2:2,0:1:2"]).status.code(), Some(2));
    assert_eq!(ssent(&["scan", "--n", "2", "--grid", "nonsense"]).status.code(), Some(2));
}

#[test]
fn scan_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let grid = "1/10:9/10:5,-1:2:4";
    for (out, jobs) in [(&a, "1"), (&b, "4")] {
        let o = ssent(&["scan", "--n", "4", "--grid", grid, "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn separation_suite_passes() {
    let o = ssent(&["lemmas", "--suite", "separation", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violations"], 0);
    assert_eq!(v["detail"]["polynomials"], 40);
}

#[test]
fn recursion_oracle_suite_passes() {
    let o = ssent(&["lemmas", "--suite", "recursion-oracle", "--count", "200", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checked"], 200);
    assert_eq!(v["certified"], 200);
}

#[test]
fn remaining_suites_pass() {
    for suite in ["jensen", "value-bound", "dimitrov", "turan", "power-sum", "kv", "scale-entropy", "monotone-ff"] {
        let o = ssent(&["lemmas", "--suite", suite, "--count", "30", "--seed", "1"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["violations"], 0, "{suite}");
    }
}

#[test]
fn lemmas_are_deterministic() {
    let run = || stdout(&ssent(&["lemmas", "--suite", "power-sum", "--count", "50", "--seed", "9", "--jobs", "3"]));
    assert_eq!(run(), run());
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(ssent(&["lemmas", "--suite", "nope"]).status.code(), Some(2));
}
