//! Command-line front-end and experiment harness for `ttile-core`.

pub mod args;
pub mod commands;
pub mod experiment;
pub mod io;
pub mod report;

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use ttile_core::generators::{GenSpec, Generated};
use ttile_core::lattice::Partition;
use ttile_core::structure::{default_pipeline_constant, LinkedOptions, SearchMode};

use crate::args::{Cli, Command, GenArgs, GenKind, LatticeArgs};
use crate::io::{load_three, parse_int_rows, parse_ints, parse_list, parse_parts, parse_rat};
use crate::report::{render, Report};

pub const USAGE_EXIT: i32 = 64;

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("ttile: {err:#}");
            exit_code_for(&err)
        }
    }
}

/// Budget-like failures map to 2; everything else is a usage or input error.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<ttile_core::Error>() {
        Some(ttile_core::Error::Unsupported(_)) => 2,
        _ => USAGE_EXIT,
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let started = Instant::now();
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Gen(args) => {
            emit(&generate(args)?, output)?;
            Ok(0)
        }
        Command::Experiment(args) => {
            let scenarios = if args.scenario.is_empty() { experiment::Scenario::ALL.to_vec() } else { args.scenario.clone() };
            let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let report = experiment::run_scenarios(&scenarios, args.seed, jobs, cli.timing)?;
            emit(&report.render(cli.format)?, output)?;
            Ok(if report.pass { 0 } else { 2 })
        }
        command => {
            let mut report = build_report(command)?;
            if cli.timing {
                report.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            emit(&render(&report, cli.format)?, output)?;
            Ok(report.status.exit_code())
        }
    }
}

fn input_label(path: &Path) -> String {
    path.display().to_string()
}

fn build_report(command: &Command) -> Result<Report> {
    let report = match command {
        Command::Copies(a) => commands::copies_report(&load_three(&a.input.input)?, a.count)?.input("input", input_label(&a.input.input)),
        Command::Tile(a) => {
            let path = &a.input.input;
            let budget = a.budget.budget_nodes;
            let report = if a.five {
                let parts = a.parts.as_deref().map(parse_parts).transpose()?;
                commands::five_report(&io::load_five(path)?, parts.as_deref(), budget)?
            } else if a.max {
                commands::max_tile_report(&load_three(path)?, budget)?
            } else {
                commands::perfect_tile_report(&load_three(path)?, budget)?
            };
            let report = report.input("input", input_label(path));
            match budget {
                Some(b) => report.input("budget_nodes", b),
                None => report,
            }
        }
        Command::Frac(a) => {
            let graph = load_three(&a.input.input)?;
            let report = if a.minimax {
                commands::minimax_report(&graph)?
            } else {
                let avoid = io::load_avoidance(a.avoid.as_deref(), graph.n())?;
                commands::frac_report(&graph, &avoid)?
            };
            report.input("input", input_label(&a.input.input))
        }
        Command::Certify(a) => {
            let graph = load_three(&a.input.input)?;
            let cert = commands::parse_certificate(&io::read_source(&a.certificate)?)
                .with_context(|| format!("in {}", a.certificate.display()))?;
            commands::certify_report(&graph, &cert)?
                .input("input", input_label(&a.input.input))
                .input("certificate", input_label(&a.certificate))
        }
        Command::Extremal(a) => {
            let mode = match (a.heuristic, a.seed) {
                (true, Some(seed)) => SearchMode::Heuristic { seed, restarts: a.restarts },
                (true, None) => bail!("--heuristic needs --seed"),
                (false, _) => SearchMode::Exact,
            };
            commands::extremal_report(&load_three(&a.input.input)?, &parse_rat(&a.gamma)?, mode)?
                .input("input", input_label(&a.input.input))
        }
        Command::Pairs(a) => {
            let graph = load_three(&a.input.input)?;
            let subset = parse_list(&a.subset)?;
            let gamma = parse_rat(&a.gamma)?;
            let report = if a.pipeline {
                let constant = a.constant.as_deref().map(parse_rat).transpose()?.unwrap_or_else(default_pipeline_constant);
                commands::pipeline_report(&graph, &subset, &gamma, &constant)?
            } else {
                commands::pairs_report(&graph, &subset, &gamma)?
            };
            report.input("input", input_label(&a.input.input))
        }
        Command::Linked(a) => {
            if a.r > 2 && a.seed.is_none() {
                bail!("--r above 2 samples and needs --seed");
            }
            let options = LinkedOptions {
                samples: a.samples,
                seed: a.seed.unwrap_or(0),
                eta: a.eta.as_deref().map(parse_rat).transpose()?,
            };
            commands::linked_report(&load_three(&a.input.input)?, a.u, a.v, a.r, &options)?
                .input("input", input_label(&a.input.input))
        }
        Command::Lattice(a) => lattice(a)?,
        Command::Rainbow(a) => {
            if a.covering {
                let (first, second) = (a.first.as_ref().expect("clap requires"), a.second.as_ref().expect("clap requires"));
                commands::covering_report(&load_three(first)?, &load_three(second)?)?
                    .input("first", input_label(first))
                    .input("second", input_label(second))
            } else {
                let path = a.input.as_ref().ok_or_else(|| anyhow!("--input is required"))?;
                commands::rainbow_report(&io::load_rainbow(path)?, a.budget.budget_nodes)?.input("input", input_label(path))
            }
        }
        Command::Gen(_) | Command::Experiment(_) => unreachable!("handled by execute"),
    };
    Ok(report)
}

fn lattice(a: &LatticeArgs) -> Result<Report> {
    let queries = a.query.iter().map(|q| parse_ints(q)).collect::<Result<Vec<_>>>()?;
    if let Some(text) = &a.generators {
        let generators = parse_int_rows(text)?;
        let dim = generators.first().map(Vec::len).ok_or_else(|| anyhow!("--generators is empty"))?;
        return Ok(commands::lattice_report(dim, generators, &queries)?.input("generators", text));
    }
    let path = a.input.as_ref().ok_or_else(|| anyhow!("give --input or --generators"))?;
    let graph = load_three(path)?;
    let partition = match (&a.parts, a.split) {
        (Some(p), _) => Partition::new(graph.n(), parse_parts(p)?)?,
        (None, Some(k)) => Partition::split(graph.n(), k)?,
        (None, None) => bail!("give --parts or --split"),
    };
    let mu = parse_rat(a.mu.as_deref().ok_or_else(|| anyhow!("--mu is required with --input"))?)?;
    let psi = a.psi.as_deref().map(parse_rat).transpose()?;
    Ok(commands::graph_lattice_report(&graph, &partition, &mu, &queries, psi.as_ref())?.input("input", input_label(path)))
}

pub fn gen_spec(args: &GenArgs) -> Result<GenSpec> {
    if let Some(spec) = &args.spec {
        return io::parse_spec_arg(spec);
    }
    let n = || args.n.ok_or_else(|| anyhow!("--n is required"));
    Ok(match args.kind.expect("clap requires kind or spec") {
        GenKind::HExt => GenSpec::HExt { n: n()? },
        GenKind::Complete => GenSpec::Complete { n: n()? },
        GenKind::Tripartite => {
            let sizes = parse_list(args.sizes.as_deref().ok_or_else(|| anyhow!("--sizes is required"))?)?;
            let sizes: [usize; 3] = sizes.try_into().map_err(|_| anyhow!("--sizes needs three entries"))?;
            GenSpec::Tripartite { sizes }
        }
        GenKind::RandomCodegree => GenSpec::RandomCodegree {
            n: n()?,
            delta_floor: args.delta_floor,
            seed: args.seed.ok_or_else(|| anyhow!("random-codegree needs --seed"))?,
            p: args.p,
        },
    })
}

pub fn generate(args: &GenArgs) -> Result<String> {
    let spec = gen_spec(args)?;
    let meta = spec.metadata();
    Ok(match spec.build()? {
        Generated::Three(g) => g.to_text(&meta),
        Generated::Five(g) => g.to_text(&meta),
        Generated::Rainbow(inst) => io::rainbow_to_text(&inst, &meta),
    })
}
