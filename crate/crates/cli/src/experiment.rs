//! Named scenarios behind the acceptance suite. A scenario expands into
//! independent instances that run on a worker pool; rows come back in
//! instance order whatever the pool size.

use std::time::Instant;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use ttile_core::copies::count_copies;
use ttile_core::fractional::{frac_min_pair_weight, frac_perfect, verify_certificate, FarkasCertificate};
use ttile_core::generators::{gen_complete, gen_h_ext, gen_random_codegree, GenSpec};
use ttile_core::lattice::{IndexLattice, Partition};
use ttile_core::oracles;
use ttile_core::rational::{binomial, int, ratio};
use ttile_core::structure::{linked_count, LinkedOptions, SearchMode};
use ttile_core::tiling::{max_tiling, perfect_tiling, rainbow_perfect_tiling};
use ttile_core::{AvoidanceGraph, Outcome, RainbowInstance, Rational, ThreeGraph};

use crate::commands;
use crate::report::{csv_rows, to_json, Format, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Tightness,
    FractionalAlternative,
    CopyCount,
    ExactCover,
    Minimax,
    Lattice,
    Linked,
    ColourCovering,
    Implication,
    Determinism,
    /// Diagnostic only: random graphs at codegree `⌈2n/5⌉` that fail to tile.
    SmallN,
}

impl Scenario {
    pub const ALL: [Scenario; 10] = [
        Scenario::Tightness,
        Scenario::FractionalAlternative,
        Scenario::CopyCount,
        Scenario::ExactCover,
        Scenario::Minimax,
        Scenario::Lattice,
        Scenario::Linked,
        Scenario::ColourCovering,
        Scenario::Implication,
        Scenario::Determinism,
    ];

    /// Position in the acceptance list, from 1; 0 for diagnostics.
    pub fn criterion(self) -> usize {
        Scenario::ALL.iter().position(|&s| s == self).map_or(0, |i| i + 1)
    }

    fn instances(self, seed: u64) -> Vec<Instance> {
        match self {
            Scenario::Tightness => tightness(),
            Scenario::FractionalAlternative => fractional_alternative(),
            Scenario::CopyCount => copy_count(seed),
            Scenario::ExactCover => exact_cover(seed),
            Scenario::Minimax => minimax(seed),
            Scenario::Lattice => lattice(seed),
            Scenario::Linked => linked(seed),
            Scenario::ColourCovering => colour_covering(seed),
            Scenario::Implication => implication(seed),
            Scenario::Determinism => determinism(seed),
            Scenario::SmallN => small_n(seed),
        }
    }
}

/// What one instance found, and whether it met the scenario's check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub pass: bool,
    pub status: Option<Status>,
    pub value: String,
    pub nodes: Option<u64>,
    pub verified: Option<bool>,
}

impl Check {
    fn new(pass: bool, value: impl Into<String>) -> Check {
        Check { pass, status: None, value: value.into(), nodes: None, verified: None }
    }

    fn from_report(report: &Report, pass: bool) -> Check {
        Check {
            pass,
            status: Some(report.status),
            value: report.summary.clone(),
            nodes: report.nodes,
            verified: report.verified,
        }
    }
}

type Job = Box<dyn Fn() -> Result<Check> + Send + Sync>;

struct Instance {
    label: String,
    run: Job,
}

fn instance(label: impl Into<String>, run: impl Fn() -> Result<Check> + Send + Sync + 'static) -> Instance {
    Instance { label: label.into(), run: Box::new(run) }
}

/// One CSV row: `scenario,criterion,instance,pass,status,value,nodes,verified,wall_ms,error`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub scenario: Scenario,
    pub criterion: usize,
    pub instance: String,
    pub pass: bool,
    pub status: Option<Status>,
    pub value: String,
    pub nodes: Option<u64>,
    pub verified: Option<bool>,
    pub wall_ms: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub criterion: usize,
    pub pass: bool,
    pub instances: Vec<InstanceReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    pub scenarios: Vec<ScenarioReport>,
}

impl ExperimentReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => csv_rows(self.scenarios.iter().flat_map(|s| &s.instances)),
        }
    }
}

fn run_instance(scenario: Scenario, inst: &Instance, timing: bool) -> InstanceReport {
    let started = Instant::now();
    let result = (inst.run)();
    let wall_ms = timing.then(|| started.elapsed().as_secs_f64() * 1e3);
    let mut row = InstanceReport {
        scenario,
        criterion: scenario.criterion(),
        instance: inst.label.clone(),
        pass: false,
        status: None,
        value: String::new(),
        nodes: None,
        verified: None,
        wall_ms,
        error: None,
    };
    match result {
        Ok(c) => {
            row.pass = c.pass;
            row.status = c.status;
            row.value = c.value;
            row.nodes = c.nodes;
            row.verified = c.verified;
        }
        Err(e) => row.error = Some(format!("{e:#}")),
    }
    row
}

pub fn run_scenarios(scenarios: &[Scenario], seed: u64, jobs: usize, timing: bool) -> Result<ExperimentReport> {
    let work: Vec<(Scenario, Instance)> =
        scenarios.iter().flat_map(|&s| s.instances(seed).into_iter().map(move |i| (s, i))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let rows: Vec<InstanceReport> =
        pool.install(|| work.par_iter().map(|(s, inst)| run_instance(*s, inst, timing)).collect());
    let mut rows = rows.into_iter();
    let mut out = Vec::new();
    let mut i = 0;
    while i < work.len() {
        let scenario = work[i].0;
        let mut instances = Vec::new();
        while i < work.len() && work[i].0 == scenario {
            instances.push(rows.next().expect("one row per instance"));
            i += 1;
        }
        let pass = instances.iter().all(|r| r.pass);
        out.push(ScenarioReport { scenario, criterion: scenario.criterion(), pass, instances });
    }
    let pass = out.iter().all(|s| s.pass);
    Ok(ExperimentReport { command: "experiment".into(), seed, pass, scenarios: out })
}

/// The random corpus graph for `seed`: size and edge probability drawn first.
pub fn corpus_graph(seed: u64, sizes: std::ops::RangeInclusive<usize>) -> Result<ThreeGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.random_range(sizes);
    let p = rng.random_range(0.2..0.9);
    Ok(gen_random_codegree(n, 0, p, seed)?)
}

const COPY_COUNT_SEEDS: u64 = 50;
const EXACT_COVER_SEEDS: u64 = 50;
const EXACT_COVER_OFFSET: u64 = 1000;
const DENSE_OFFSET: u64 = 2000;

fn tightness() -> Vec<Instance> {
    [10, 15, 20]
        .into_iter()
        .map(|n| {
            instance(format!("h_ext({n})"), move || {
                let g = gen_h_ext(n)?.graph;
                let a = 2 * n / 5 - 1;
                let delta = g.min_codegree()?;
                let perfect = commands::perfect_tile_report(&g, None)?;
                let max = max_tiling(&g, None)?;
                let bound = a / 2;
                let verified = max.tiling.verify(&g);
                let pass = delta == a
                    && perfect.status == Status::Infeasible
                    && max.optimal
                    && verified
                    && max.tiling.size() <= bound;
                Ok(Check {
                    pass,
                    status: Some(perfect.status),
                    value: format!("delta={delta} max={} bound={bound}", max.tiling.size()),
                    nodes: Some(perfect.nodes.unwrap_or(0) + max.nodes),
                    verified: Some(verified),
                })
            })
        })
        .collect()
}

/// `3` on `A`, `−2` on `B`.
pub fn hand_certificate(n: usize) -> Result<FarkasCertificate> {
    let ext = gen_h_ext(n)?;
    let a = (0..n).map(|v| if ext.a.contains(&v) { int(3) } else { int(-2) }).collect();
    Ok(FarkasCertificate { a, avoiding: Vec::new(), verified: false })
}

fn fractional_alternative() -> Vec<Instance> {
    let mut out = vec![
        instance("h_ext(10) lp", || {
            let g = gen_h_ext(10)?.graph;
            let r = commands::frac_report(&g, &AvoidanceGraph::empty(10))?;
            Ok(Check::from_report(&r, r.status == Status::Infeasible && r.verified == Some(true)))
        }),
        instance("h_ext(10) hand", || {
            let g = gen_h_ext(10)?.graph;
            let cert = hand_certificate(10)?;
            let ok = verify_certificate(&g, &AvoidanceGraph::empty(10), &cert)?;
            let total = cert.total();
            let mut c = Check::new(ok && total == int(-5), format!("a.1 = {total}"));
            c.verified = Some(ok);
            Ok(c)
        }),
    ];
    for n in [5, 10] {
        out.push(instance(format!("complete({n})"), move || {
            let g = gen_complete(n)?;
            let r = commands::frac_report(&g, &AvoidanceGraph::empty(n))?;
            let total = frac_perfect(&g, &AvoidanceGraph::empty(n))?.tiling().map(|w| w.total());
            let pass = r.status == Status::Solved && r.verified == Some(true) && total == Some(ratio(n as i64, 5));
            Ok(Check::from_report(&r, pass))
        }));
    }
    out
}

fn copy_count(seed: u64) -> Vec<Instance> {
    (0..COPY_COUNT_SEEDS)
        .map(|i| {
            let s = seed.wrapping_add(i);
            instance(format!("seed {s}"), move || {
                let g = corpus_graph(s, 5..=10)?;
                let labeled = oracles::labeled_embeddings(&g);
                let count = count_copies(&g) as u64;
                Ok(Check::new(labeled.is_multiple_of(4) && count == labeled / 4, format!("n={} copies={count} labeled={labeled}", g.n())))
            })
        })
        .collect()
}

fn exact_cover(seed: u64) -> Vec<Instance> {
    (0..EXACT_COVER_SEEDS)
        .map(|i| {
            let s = seed.wrapping_add(EXACT_COVER_OFFSET + i);
            instance(format!("seed {s}"), move || {
                let g = corpus_graph(s, 5..=12)?;
                let perfect = perfect_tiling(&g, None)?;
                let max = max_tiling(&g, None)?;
                let brute_perfect = oracles::brute_force_perfect_tiling(&g);
                let brute_max = oracles::brute_force_max_tiling(&g);
                let pass = perfect.outcome.found().is_some() == brute_perfect
                    && !matches!(perfect.outcome, Outcome::Unknown)
                    && max.optimal
                    && max.tiling.size() == brute_max;
                let mut c = Check::new(pass, format!("n={} perfect={brute_perfect} max={brute_max}", g.n()));
                c.nodes = Some(perfect.nodes + max.nodes);
                c.verified = Some(max.tiling.verify(&g));
                Ok(c)
            })
        })
        .collect()
}

fn minimax_agreement(g: &ThreeGraph, expected: Option<Rational>) -> Result<Check> {
    let by_sets = frac_min_pair_weight(g)?.value().cloned();
    let by_copies = oracles::min_pair_weight_over_copies(g);
    let pass = by_sets == by_copies && expected.as_ref().is_none_or(|e| by_sets.as_ref() == Some(e));
    let shown = by_sets.map_or("infeasible".to_string(), |w| w.to_string());
    Ok(Check::new(pass, format!("W={shown}")))
}

fn minimax(seed: u64) -> Vec<Instance> {
    let mut out = vec![
        instance("complete(5)", || minimax_agreement(&gen_complete(5)?, Some(int(1)))),
        instance("complete(10)", || minimax_agreement(&gen_complete(10)?, None)),
        instance("h_ext(10)", || minimax_agreement(&gen_h_ext(10)?.graph, None)),
    ];
    for i in 0..4 {
        let s = seed.wrapping_add(i);
        out.push(instance(format!("random(10) seed {s}"), move || minimax_agreement(&gen_random_codegree(10, 4, 0.5, s)?, None)));
    }
    out
}

pub const LATTICE_SETS: u64 = 100;
/// Generator entries and query targets are drawn from these ranges.
pub const LATTICE_ENTRY: i64 = 3;
pub const LATTICE_TARGET: i64 = 2;
/// Coefficient range for the one-sided coefficient search.
pub const LATTICE_COEFFICIENTS: i64 = 10;

fn lattice(seed: u64) -> Vec<Instance> {
    let mut out = vec![instance("(3,2),(2,3)", || {
        let l = IndexLattice::new(2, vec![vec![3, 2], vec![2, 3]])?;
        let (a, b) = (l.contains(&[1, -1])?, l.contains(&[1, 0])?);
        Ok(Check::new(a && !b, format!("(1,-1):{a} (1,0):{b}")))
    })];
    for i in 0..LATTICE_SETS {
        let s = seed.wrapping_add(i);
        out.push(instance(format!("seed {s}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let dim = rng.random_range(1..=3);
            let count = rng.random_range(1..=3);
            let generators: Vec<Vec<i64>> = (0..count)
                .map(|_| (0..dim).map(|_| rng.random_range(-LATTICE_ENTRY..=LATTICE_ENTRY)).collect())
                .collect();
            let l = IndexLattice::new(dim, generators.clone())?;
            let radius = LATTICE_TARGET + dim as i64 * LATTICE_ENTRY;
            let points = oracles::lattice_points_in_box(dim, &generators, radius);
            let mut pass = true;
            let mut members = 0;
            for _ in 0..5 {
                let t: Vec<i64> = (0..dim).map(|_| rng.random_range(-LATTICE_TARGET..=LATTICE_TARGET)).collect();
                let member = l.contains(&t)?;
                members += member as usize;
                pass &= member == points.contains(&t);
                pass &= !oracles::brute_force_lattice_member(&generators, &t, LATTICE_COEFFICIENTS) || member;
            }
            pass &= generators.iter().all(|g| l.contains(g).unwrap_or(false));
            Ok(Check::new(pass, format!("dim={dim} rank={} members={members}/5", l.rank())))
        }));
    }
    out
}

fn linked(seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in [7u64, 8, 9] {
        out.push(instance(format!("complete({n})"), move || {
            let g = gen_complete(n as usize)?;
            let r = linked_count(&g, 0, 1, 1, &LinkedOptions::default())?;
            let expected = binomial(n - 2, 4);
            let pass = r.count == Rational::from_integer(expected.clone()) && oracles::pascal(n - 2, 4) == expected;
            Ok(Check::new(pass, format!("count={}", r.count)))
        }));
    }
    for i in 0..20u64 {
        let s = seed.wrapping_add(300 + i);
        out.push(instance(format!("random(9) seed {s}"), move || {
            let g = gen_random_codegree(9, 0, 0.6, s)?;
            let (u, v) = ((i % 9) as usize, ((i + 4) % 9) as usize);
            let r = linked_count(&g, u, v, 1, &LinkedOptions::default())?;
            let naive = oracles::naive_linked_count(&g, u, v);
            Ok(Check::new(r.count == Rational::from_integer(naive.into()), format!("count={} naive={naive}", r.count)))
        }));
    }
    out
}

pub const COVERING_PAIRS: u64 = 100;
pub const COVERING_DELTA: usize = 3;

fn colour_covering(seed: u64) -> Vec<Instance> {
    let mut out: Vec<Instance> = (0..COVERING_PAIRS)
        .map(|i| {
            let s = seed.wrapping_add(i);
            instance(format!("seed {s}"), move || {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0xc0);
                let n = rng.random_range(5..=12);
                let (p1, p2) = (rng.random_range(0.2..0.8), rng.random_range(0.2..0.8));
                let (s1, s2) = (rng.random::<u64>(), rng.random::<u64>());
                let first = gen_random_codegree(n, COVERING_DELTA, p1, s1)?;
                let second = gen_random_codegree(n, COVERING_DELTA, p2, s2)?;
                let pass = first.min_codegree()? >= COVERING_DELTA && second.min_codegree()? >= COVERING_DELTA;
                let r = commands::covering_report(&first, &second)?;
                Ok(Check::from_report(&r, pass && r.status == Status::Solved && r.verified == Some(true)))
            })
        })
        .collect();
    out.push(instance("rainbow h_ext(10)", || {
        let family = vec![gen_h_ext(10)?.graph; 6];
        let inst = RainbowInstance::new(10, family)?;
        let solve = rainbow_perfect_tiling(&inst, None)?;
        let mut c = Check::new(solve.outcome.is_infeasible(), if solve.outcome.is_infeasible() { "infeasible" } else { "not infeasible" });
        c.nodes = Some(solve.nodes);
        Ok(c)
    }));
    out
}

/// Every graph the other scenarios touch, plus denser random graphs that
/// often do tile.
fn implication_corpus(seed: u64) -> Vec<(String, GenSource)> {
    let mut out: Vec<(String, GenSource)> = vec![
        ("h_ext(10)".into(), GenSource::Spec(GenSpec::HExt { n: 10 })),
        ("h_ext(15)".into(), GenSource::Spec(GenSpec::HExt { n: 15 })),
        ("complete(5)".into(), GenSource::Spec(GenSpec::Complete { n: 5 })),
        ("complete(10)".into(), GenSource::Spec(GenSpec::Complete { n: 10 })),
        ("tripartite(5,5,5)".into(), GenSource::Spec(GenSpec::Tripartite { sizes: [5, 5, 5] })),
    ];
    for i in 0..COPY_COUNT_SEEDS {
        let s = seed.wrapping_add(i);
        out.push((format!("copy-count seed {s}"), GenSource::Corpus(s, 10)));
    }
    for i in 0..EXACT_COVER_SEEDS {
        let s = seed.wrapping_add(EXACT_COVER_OFFSET + i);
        out.push((format!("exact-cover seed {s}"), GenSource::Corpus(s, 12)));
    }
    for i in 0..20 {
        let s = seed.wrapping_add(DENSE_OFFSET + i);
        out.push((format!("dense(10) seed {s}"), GenSource::Spec(GenSpec::RandomCodegree { n: 10, delta_floor: 3, seed: s, p: 0.5 })));
    }
    out
}

#[derive(Clone)]
enum GenSource {
    Spec(GenSpec),
    Corpus(u64, usize),
}

impl GenSource {
    fn build(&self) -> Result<ThreeGraph> {
        match self {
            GenSource::Spec(spec) => Ok(spec.build_three()?),
            GenSource::Corpus(s, max) => corpus_graph(*s, 5..=*max),
        }
    }
}

fn implication(seed: u64) -> Vec<Instance> {
    implication_corpus(seed)
        .into_iter()
        .map(|(label, source)| {
            instance(label, move || {
                let g = source.build()?;
                let perfect = perfect_tiling(&g, None)?;
                let frac = frac_perfect(&g, &AvoidanceGraph::empty(g.n()))?;
                let tiles = perfect.outcome.found().is_some();
                let certified = frac.certificate().is_some();
                let pass = !matches!(perfect.outcome, Outcome::Unknown)
                    && (!tiles || frac.is_feasible())
                    && (!certified || perfect.outcome.is_infeasible());
                let mut c = Check::new(pass, format!("n={} tiles={tiles} certificate={certified}", g.n()));
                c.nodes = Some(perfect.nodes);
                Ok(c)
            })
        })
        .collect()
}

fn twice(label: &str, build: impl Fn() -> Result<String> + Send + Sync + 'static) -> Instance {
    instance(label, move || {
        let (a, b) = (build()?, build()?);
        Ok(Check::new(a == b && !a.is_empty(), format!("{} bytes", a.len())))
    })
}

fn json_of(report: Result<Report>) -> Result<String> {
    to_json(&report?)
}

fn determinism(seed: u64) -> Vec<Instance> {
    vec![
        twice("gen random_codegree", move || {
            let spec = GenSpec::RandomCodegree { n: 15, delta_floor: 2, seed, p: 0.4 };
            Ok(spec.build_three()?.to_text(&spec.metadata()))
        }),
        twice("tile", move || json_of(commands::perfect_tile_report(&gen_random_codegree(10, 3, 0.5, seed)?, None))),
        twice("frac h_ext(10)", || json_of(commands::frac_report(&gen_h_ext(10)?.graph, &AvoidanceGraph::empty(10)))),
        twice("frac minimax", move || json_of(commands::minimax_report(&gen_random_codegree(10, 4, 0.5, seed)?))),
        twice("extremal heuristic", move || {
            let g = gen_random_codegree(15, 1, 0.3, seed)?;
            json_of(commands::extremal_report(&g, &ratio(1, 4), SearchMode::Heuristic { seed, restarts: 5 }))
        }),
        twice("linked sampled", move || {
            let g = gen_random_codegree(16, 8, 0.8, seed)?;
            let options = LinkedOptions { samples: 30, seed, eta: Some(ratio(1, 2)) };
            json_of(commands::linked_report(&g, 0, 1, 3, &options))
        }),
        twice("lattice", move || {
            let g = gen_random_codegree(10, 2, 0.5, seed)?;
            let p = Partition::split(10, 4)?;
            json_of(commands::graph_lattice_report(&g, &p, &ratio(1, 100), &[vec![1, -1]], Some(&ratio(1, 100_000))))
        }),
        instance("experiment rows, 1 vs 4 workers", move || {
            let one = run_scenarios(&[Scenario::CopyCount], seed, 1, false)?.render(Format::Json)?;
            let four = run_scenarios(&[Scenario::CopyCount], seed, 4, false)?.render(Format::Json)?;
            Ok(Check::new(one == four, format!("{} bytes", one.len())))
        }),
    ]
}

pub const SMALL_N_SEEDS: u64 = 20;

/// Records whether each graph tiles; never fails.
fn small_n(seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in [5usize, 10, 15] {
        let floor = (2 * n).div_ceil(5);
        for i in 0..SMALL_N_SEEDS {
            let s = seed.wrapping_add(i);
            out.push(instance(format!("random({n}) codegree>={floor} seed {s}"), move || {
                let g = gen_random_codegree(n, floor, 0.3, s)?;
                let r = commands::perfect_tile_report(&g, None)?;
                Ok(Check::from_report(&r, true))
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        assert_eq!(Scenario::Tightness.criterion(), 1);
        assert_eq!(Scenario::Determinism.criterion(), 10);
        assert_eq!(Scenario::SmallN.criterion(), 0);
    }

    #[test]
    fn hand_certificate_totals_minus_five() {
        assert_eq!(hand_certificate(10).unwrap().total(), int(-5));
        assert!(hand_certificate(12).is_err());
    }

    #[test]
    fn rows_keep_order_across_pool_sizes() {
        let a = run_scenarios(&[Scenario::Minimax, Scenario::Linked], 3, 1, false).unwrap();
        let b = run_scenarios(&[Scenario::Minimax, Scenario::Linked], 3, 3, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.scenarios.len(), 2);
        assert!(a.pass);
        let csv = a.render(Format::Csv).unwrap();
        assert!(csv.starts_with("scenario,criterion,instance,pass,status,value,nodes,verified,wall_ms,error\n"));
        assert!(csv.contains("minimax,5,complete(5),true"));
    }
}
