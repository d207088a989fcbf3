//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always print.

use std::process::Command;
use std::time::{Duration, Instant};

use ttile_cli::experiment::{run_scenarios, Scenario, ScenarioReport};

const SEED: u64 = 0;
/// Per-instance limit for the tightness construction.
const TIGHTNESS_LIMIT: Duration = Duration::from_secs(60);
/// Whole-criterion limit for the fractional alternative.
const FRACTIONAL_LIMIT: Duration = Duration::from_secs(30);

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn failures(report: &ScenarioReport) -> Vec<String> {
    report
        .instances
        .iter()
        .filter(|r| !r.pass)
        .map(|r| match &r.error {
            Some(e) => format!("{}: error {e}", r.instance),
            None => format!("{}: {}", r.instance, r.value),
        })
        .collect()
}

fn ttile(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_ttile")).args(args).env_remove("TTILE_TIMING").output().expect("binary runs");
    [out.stdout, format!("exit {:?}", out.status.code()).into_bytes()].concat()
}

/// Identical invocations of the binary must print identical bytes.
fn binary_determinism() -> Vec<String> {
    let dir = tempfile::tempdir().expect("temp dir");
    let graph = dir.path().join("g.txt");
    let graph = graph.to_str().expect("utf-8 path");
    let spec = r#"{"kind":"random_codegree","n":10,"delta_floor":3,"seed":11,"p":0.5}"#;
    std::fs::write(graph, spec).expect("write spec");
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "--kind", "random-codegree", "--n", "15", "--delta-floor", "2", "--seed", "9"],
        vec!["tile", "--input", graph],
        vec!["frac", "--input", graph],
        vec!["frac", "--minimax", "--input", graph],
        vec!["extremal", "--input", graph, "--gamma", "1/4", "--heuristic", "--seed", "5"],
        vec!["lattice", "--input", graph, "--split", "4", "--mu", "1/100", "--query", "1,-1"],
        vec!["experiment", "--scenario", "copy-count", "--scenario", "lattice", "--seed", "3"],
    ];
    runs.iter()
        .filter(|args| ttile(args) != ttile(args))
        .map(|args| format!("`ttile {}` differs between runs", args.join(" ")))
        .collect()
}

fn main() {
    let mut failed = 0;
    for scenario in Scenario::ALL {
        let started = Instant::now();
        let report = run_scenarios(&[scenario], SEED, jobs(), true).expect("scenario runs");
        let elapsed = started.elapsed();
        let scenario_report = &report.scenarios[0];
        let mut problems = failures(scenario_report);
        match scenario {
            Scenario::Tightness => {
                for r in &scenario_report.instances {
                    let ms = r.wall_ms.unwrap_or(f64::INFINITY);
                    if ms > TIGHTNESS_LIMIT.as_secs_f64() * 1e3 {
                        problems.push(format!("{} took {ms:.0} ms", r.instance));
                    }
                }
            }
            Scenario::FractionalAlternative if elapsed > FRACTIONAL_LIMIT => {
                problems.push(format!("took {elapsed:?}"));
            }
            Scenario::Determinism => problems.extend(binary_determinism()),
            _ => {}
        }
        let count = scenario_report.instances.len();
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {:>2} {:<22} {}/{count} instances in {:.2}s",
            scenario.criterion(),
            format!("{scenario:?}"),
            count - failures(scenario_report).len(),
            elapsed.as_secs_f64()
        );
        for p in &problems {
            println!("    {p}");
        }
        failed += !problems.is_empty() as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
