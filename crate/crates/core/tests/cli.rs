use std::fs;
use std::process::{Command, Output};

use kempe3k1::harness::read_records_file;

fn kempe3k1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kempe3k1")).args(args).output().unwrap()
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_writes_one_line_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("seven.g6");
    let o = kempe3k1(&["enumerate", "--n", "7", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 107);

    let o = kempe3k1(&["enumerate", "--n", "8", "--min-delta", "7", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let lines = fs::read_to_string(&out).unwrap().lines().count();
    assert!(lines > 0 && lines < 410);
}

#[test]
fn verify_enumeration_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");
    let o = kempe3k1(&["verify", "--n", "8", "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_records_file(&report).unwrap();
    assert_eq!(records.len(), 410);

    let o = kempe3k1(&["stats", "--report", path_str(&report), "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("section,key,value\n"));
    assert!(csv.contains("summary,graphs,410\n"));
}

#[test]
fn verify_file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.jsonl");

    let empty = dir.path().join("empty.g6");
    fs::write(&empty, "").unwrap();
    let o = kempe3k1(&["verify", "--in", path_str(&empty), "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("graphs                 0"));

    // K_{1,3}
    let claw = dir.path().join("claw.g6");
    fs::write(&claw, "Cs\n").unwrap();
    let o = kempe3k1(&["verify", "--in", path_str(&claw), "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(0));
    let records = read_records_file(&report).unwrap();
    assert_eq!(records.len(), 1);
    assert!(!records[0].three_k1_free && !records[0].mr2_applicable);

    let bad = dir.path().join("bad.g6");
    fs::write(&bad, "A_\nB!\n").unwrap();
    let o = kempe3k1(&["verify", "--in", path_str(&bad), "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
}

#[test]
fn violation_sets_exit_code() {
    // pentagon with each vertex blown up into a triangle: Δ = 8, ω = 6, χ = 8
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c5k3.g6");
    fs::write(&input, "N~~ww{^?wF_^wFwF{Bw\n").unwrap();
    let report = dir.path().join("r.jsonl");
    let o = kempe3k1(&["verify", "--in", path_str(&input), "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    let records = read_records_file(&report).unwrap();
    assert!(text.contains(&records[0].id));
    assert!(!records[0].mr2_pass);

    let o = kempe3k1(&["stats", "--report", path_str(&report)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn color_methods() {
    for (method, used) in [("exact", 3), ("dsatur", 3), ("brooks", 3), ("extend", 3)] {
        let o = kempe3k1(&["color", "--graph6", "Dhc", "--method", method]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["colors_used"], used, "{method}");
        assert_eq!(v["coloring"].as_array().unwrap().len(), 5);
    }
    // Petersen graph: Brooks gives 3 colors
    let o = kempe3k1(&["color", "--graph6", "IheA@GUAo", "--method", "brooks"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["colors_used"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kempe3k1(&["color", "--graph6", "Dhc", "--method", "magic"]).status.code(), Some(2));
    assert_eq!(kempe3k1(&["color", "--graph6", "D!c", "--method", "exact"]).status.code(), Some(2));
    assert_eq!(kempe3k1(&["verify", "--report", "x"]).status.code(), Some(2));
    assert_eq!(kempe3k1(&["verify", "--n", "3", "--in", "f", "--report", "x"]).status.code(), Some(2));
    assert_eq!(kempe3k1(&["stats", "--report", "/nonexistent/r.jsonl"]).status.code(), Some(2));
    assert_eq!(kempe3k1(&[]).status.code(), Some(2));
}
