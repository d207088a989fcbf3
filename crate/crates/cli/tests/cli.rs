use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use ttile_cli::commands;
use ttile_cli::report::to_json;
use ttile_core::generators::gen_h_ext;
use ttile_core::AvoidanceGraph;

fn ttile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttile")).args(args).env_remove("TTILE_FORMAT").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const H_EXT_10: &str = r#"{"kind":"h_ext","n":10}"#;
const K5: &str = r#"{"kind":"complete","n":5}"#;

#[test]
fn copies_count_on_k5() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.json", K5);
    let out = ttile(&["copies", "--count", "--input", &k5]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["outcome"]["count"], 30);
    assert_eq!(report["summary"], "30");
}

#[test]
fn perfect_tile_on_h_ext_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "h.json", H_EXT_10);
    let out = ttile(&["tile", "--perfect", "--input", &g]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["status"], "infeasible");
    assert_eq!(report["outcome"]["result"], "infeasible");
    let max = json(&ttile(&["tile", "--max", "--input", &g]));
    assert_eq!(max["outcome"]["size"], 1);
    assert_eq!(max["verified"], true);
}

#[test]
fn frac_certificate_round_trips_through_certify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "h.json", H_EXT_10);
    let cert = dir.path().join("cert.json").display().to_string();
    let out = ttile(&["frac", "--input", &g, "--output", &cert]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(report["outcome"]["result"], "certificate");
    assert_eq!(report["outcome"]["value"]["verified"], true);
    assert_eq!(report["verified"], true);
    assert_eq!(ttile(&["certify", "--input", &g, "--certificate", &cert]).status.code(), Some(0));
    let forged = write(dir.path(), "forged.json", r#"{"a":["-1/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1","0/1"],"avoiding":[]}"#);
    let out = ttile(&["certify", "--input", &g, "--certificate", &forged]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["outcome"]["verified"], false);
}

#[test]
fn frac_output_matches_direct_call() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "h.json", H_EXT_10);
    let out = ttile(&["frac", "--input", &g]);
    let direct = commands::frac_report(&gen_h_ext(10).unwrap().graph, &AvoidanceGraph::empty(10)).unwrap().input("input", &g);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), to_json(&direct).unwrap());
}

#[test]
fn generated_files_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt").display().to_string();
    assert_eq!(ttile(&["gen", "--kind", "h-ext", "--n", "10", "--output", &file]).status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("# kind=h_ext\n"));
    let spec = write(dir.path(), "h.json", H_EXT_10);
    let a = json(&ttile(&["copies", "--input", &file]));
    let b = json(&ttile(&["copies", "--input", &spec]));
    assert_eq!(a["outcome"], b["outcome"]);
    let random = ttile(&["gen", "--kind", "random-codegree", "--n", "10", "--delta-floor", "2", "--seed", "4"]);
    assert!(String::from_utf8(random.stdout).unwrap().contains("rng=chacha8/seed_from_u64"));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "5\n0 1\n");
    let out = ttile(&["copies", "--input", &bad]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(ttile(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(ttile(&["copies", "--input", "/nonexistent/file"]).status.code(), Some(64));
    assert_eq!(ttile(&["gen", "--kind", "random-codegree", "--n", "10"]).status.code(), Some(64));
    let k = write(dir.path(), "k.json", r#"{"kind":"complete","n":12}"#);
    assert_eq!(ttile(&["linked", "--input", &k, "--u", "0", "--v", "1", "--r", "3"]).status.code(), Some(64));
    assert_eq!(ttile(&["extremal", "--input", &k, "--gamma", "1/2", "--heuristic"]).status.code(), Some(64));
    assert_eq!(ttile(&["--help"]).status.code(), Some(0));
}

#[test]
fn node_budget_reports_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.json", r#"{"kind":"complete","n":10}"#);
    let out = ttile(&["tile", "--input", &k, "--budget-nodes", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "unknown");
    assert_eq!(ttile(&["tile", "--input", &k]).status.code(), Some(0));
}

#[test]
fn env_overrides_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.json", K5);
    let out = Command::new(env!("CARGO_BIN_EXE_ttile"))
        .args(["copies", "--count"])
        .env("TTILE_INPUT", &k5)
        .env("TTILE_FORMAT", "csv")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("command,inputs,status,summary,nodes,verified,wall_ms"));
    assert!(lines.next().unwrap().starts_with("copies,"));
    let timed = json(&ttile(&["copies", "--count", "--input", &k5, "--timing"]));
    assert!(timed["wall_ms"].is_number());
}

#[test]
fn analysis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "h.json", H_EXT_10);
    let ext = json(&ttile(&["extremal", "--input", &g, "--gamma", "0"]));
    assert_eq!(ext["outcome"]["min_edges"], 0);
    assert_eq!(ext["outcome"]["exact"], true);
    let pairs = json(&ttile(&["pairs", "--input", &g, "--subset", "3,4,5,6,7,8", "--gamma", "1/100", "--pipeline"]));
    assert_eq!(pairs["outcome"]["good_pairs"], 15);
    let linked = json(&ttile(&["linked", "--input", &g, "--u", "3", "--v", "4"]));
    assert_eq!(linked["outcome"]["exact"], true);
    let lattice = json(&ttile(&["lattice", "--generators", "3,2;2,3", "--query", "1,-1", "--query", "1,0"]));
    assert_eq!(lattice["outcome"]["queries"][0]["member"], true);
    assert_eq!(lattice["outcome"]["queries"][1]["member"], false);
    let abundant = json(&ttile(&["lattice", "--input", &g, "--split", "3", "--mu", "1/100", "--psi", "1/100000"]));
    assert!(abundant["outcome"]["abundance"]["buckets"].is_array());
    let minimax = json(&ttile(&["frac", "--minimax", "--input", &write(dir.path(), "k5.json", K5)]));
    assert_eq!(minimax["outcome"]["w"], "1/1");
}

#[test]
fn rainbow_modes() {
    let dir = tempfile::tempdir().unwrap();
    let family = serde_json::json!({"kind": "rainbow_family", "n": 10, "members": vec![serde_json::json!({"kind": "h_ext", "n": 10}); 6]});
    let f = write(dir.path(), "family.json", &family.to_string());
    assert_eq!(ttile(&["rainbow", "--input", &f]).status.code(), Some(1));
    let text = dir.path().join("family.txt").display().to_string();
    assert_eq!(ttile(&["gen", "--spec", &f, "--output", &text]).status.code(), Some(0));
    assert_eq!(ttile(&["rainbow", "--input", &text]).status.code(), Some(1));
    let k = write(dir.path(), "k.json", r#"{"kind":"complete","n":6}"#);
    let out = ttile(&["rainbow", "--covering", "--first", &k, "--second", &k]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);
}

#[test]
fn experiment_csv() {
    let out = ttile(&["experiment", "--scenario", "copy-count", "--scenario", "linked", "--seed", "0", "--format", "csv", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 50 + 23);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}
