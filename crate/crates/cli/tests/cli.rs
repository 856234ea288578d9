//! End-to-end tests of the binary: exit codes, certificate files, and
//! parameter validation.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zunits"))
}

#[test]
fn theorem_p5_writes_certificate_and_exits_zero() {
    let dir = std::env::temp_dir().join(format!("zunits-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let out = bin()
        .args(["theorem", "--p", "5", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&path).unwrap();
    // Round trip is byte-identical.
    let cert = zunits::Certificate::from_json_str(&body).unwrap();
    assert_eq!(cert.to_json_string().unwrap(), body);
    let parsed: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed["p"], 5);
    assert_eq!(parsed["conclusion"]["kind"], "NoHeisenbergSubgroup");
    assert_eq!(parsed["steps"].as_array().unwrap().len(), 9);
    // Text output carries the same step names.
    let text = String::from_utf8_lossy(&out.stdout);
    for step in parsed["steps"].as_array().unwrap() {
        assert!(text.contains(step["name"].as_str().unwrap()));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn theorem_with_oracle_p3() {
    let out = bin().args(["theorem", "--p", "3", "--oracle"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle"));
}

#[test]
fn theorem_oracle_out_of_range_is_usage_error() {
    let out = bin().args(["theorem", "--p", "11", "--oracle"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_p2_is_literature_case() {
    let out = bin().args(["theorem", "--p", "2"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("LiteratureCase"));
}

#[test]
fn theorem_composite_p_is_usage_error() {
    let out = bin().args(["theorem", "--p", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_cap_and_override_flag() {
    let out = bin().args(["theorem", "--p", "211"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--unsafe-no-cap"));
}

#[test]
fn lemma_even_m_is_a_counterexample() {
    let out = bin().args(["lemma", "--m", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterexample"));
}

#[test]
fn lemma_odd_m_verifies() {
    let out = bin().args(["lemma", "--m", "201"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("rank = 200"));
}

#[test]
fn lemma_cap() {
    assert_eq!(bin().args(["lemma", "--m", "2001"]).output().unwrap().status.code(), Some(2));
    let out = bin().args(["lemma", "--m", "1002", "--unsafe-no-cap"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1)); // even m: counterexample, not usage error
}

#[test]
fn gauss_p2_is_usage_error() {
    let out = bin().args(["gauss", "--p", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gauss_p13_verifies() {
    let out = bin().args(["gauss", "--p", "13"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));
}

#[test]
fn tables_p3_dumps_both_tables() {
    let out = bin().args(["tables", "--p", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PSL(2, 3^3)"));
    assert!(text.contains("eta"));
}

#[test]
fn lp_sanity_and_validation() {
    let out = bin().args(["lp", "--q", "27", "--order", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[4, 6, 3]") || text.contains("[4, 3, 6]"));
    assert_eq!(bin().args(["lp", "--q", "25", "--order", "5"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["lp", "--q", "27", "--order", "9"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = bin().args(["theorem", "--prime", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
