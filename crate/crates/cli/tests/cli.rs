use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-cox"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn grading_file(columns: &[Vec<i64>]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let body = serde_json::json!({
        "picRank": columns[0].len(),
        "numGens": columns.len(),
        "columns": columns,
        "labels": (0..columns.len()).map(|i| format!("x{i}")).collect::<Vec<_>>(),
    });
    write!(f, "{body}").unwrap();
    f
}

#[test]
fn fan_certifications_for_builtins() {
    let v = json(&["fan", "--dataset", "delpezzo4", "--degree", "11,-5,-3,-2,-1"]);
    assert_eq!(v["numMaximalCones"], 42);
    for key in ["valid", "simplicial", "complete", "projective"] {
        assert_eq!(v[key], true, "{key}");
    }
    let v = json(&["fan", "--dataset", "delpezzo4", "--degree", "3,-1,-1,-1,-1"]);
    assert_eq!(v["numMaximalCones"], 22);
    assert_eq!(v["simplicial"], false);
    assert_eq!(v["projective"], true);
    let v = json(&["fan", "data/p1xp1.json", "--degree", "1,1"]);
    assert_eq!(v["numMaximalCones"], 4);
}

#[test]
fn gale_matches_reference() {
    let out = run(&["gale", "--dataset", "delpezzo4", "--reference", "paper-AT"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["fan", "data/rank_deficient.json", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("full rank"));
    assert_eq!(run(&["fan", "--dataset", "p2"]).status.code(), Some(2));
    assert_eq!(run(&["fan", "no/such/file.json", "--degree", "1"]).status.code(), Some(2));
}

#[test]
fn guard_exceeded_exits_three() {
    let f = grading_file(&vec![vec![1]; 17]);
    let out = run(&["chamber", f.path().to_str().unwrap(), "--degree", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn chamber_comparison() {
    let v = json(&["chamber", "--dataset", "delpezzo4", "--degree", "11,-5,-3,-2,-1", "--compare", "22,-10,-6,-4,-2"]);
    assert_eq!(v["sameChamber"], true);
    let out = run(&["chamber", "--dataset", "delpezzo4", "--degree", "11,-5,-3,-2,-1", "--compare", "3,-1,-1,-1,-1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reproduce_is_stable_and_passes() {
    let a = run(&["--json", "reproduce-paper"]);
    let b = run(&["--json", "reproduce-paper"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_grading_fails_at_gale_dual() {
    let out = run(&["--json", "reproduce-paper", "data/delpezzo4_swapped.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["overall"], "fail");
    let first = v["checks"].as_array().unwrap().iter().find(|c| c["verdict"] == "fail").unwrap();
    assert_eq!(first["name"], "gale-dual");
}

#[test]
fn transversal_search_is_deterministic() {
    let a = run(&["--json", "incidence", "search", "--seed", "1", "--max-tries", "100"]);
    let b = run(&["--json", "incidence", "search", "--seed", "1", "--max-tries", "100"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
