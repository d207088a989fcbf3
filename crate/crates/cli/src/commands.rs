//! Report builders, one per subcommand. Each takes already-loaded inputs and
//! wraps the module result unchanged in a [`Report`].

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;
use ttile_core::copies::enumerate_copies;
use ttile_core::fractional::{frac_min_pair_weight, frac_perfect, verify_certificate, FarkasCertificate, FracOutcome, Minimax};
use ttile_core::lattice::{abundant_vectors, transferral_witness, AbundanceReport, IndexLattice, Partition, Transferral};
use ttile_core::rational::to_pq;
use ttile_core::structure::{
    classify_pairs, extremality, linked_count, pipeline_quantities, LinkedOptions, SearchMode,
};
use ttile_core::tiling::{
    colour_covering_hom, dh_condition_check, max_tiling, perfect_matching_5graph, perfect_tiling,
    rainbow_perfect_tiling, ColourCovering, InfeasibleReason,
};
use ttile_core::{AvoidanceGraph, FiveGraph, Outcome, RainbowInstance, Rational, ThreeGraph, Vertex};

use crate::report::{Report, Status};

#[derive(Serialize)]
struct Found<'a, T: Serialize> {
    result: &'static str,
    reason: Option<InfeasibleReason>,
    value: Option<&'a T>,
}

fn outcome_parts<T: Serialize>(outcome: &Outcome<T>) -> (Status, Found<'_, T>) {
    match outcome {
        Outcome::Found(t) => (Status::Solved, Found { result: "found", reason: None, value: Some(t) }),
        Outcome::Infeasible(r) => (Status::Infeasible, Found { result: "infeasible", reason: Some(*r), value: None }),
        Outcome::Unknown => (Status::Unknown, Found { result: "unknown", reason: None, value: None }),
    }
}

pub fn copies_report(graph: &ThreeGraph, count_only: bool) -> Result<Report> {
    let copies = enumerate_copies(graph);
    let count = copies.len();
    let outcome = if count_only { json!({ "count": count }) } else { json!({ "count": count, "copies": copies }) };
    Ok(Report::new("copies", Status::Solved, count.to_string(), outcome)?.verified(copies.iter().all(|t| t.is_in(graph))))
}

pub fn perfect_tile_report(graph: &ThreeGraph, budget: Option<u64>) -> Result<Report> {
    let solve = perfect_tiling(graph, budget)?;
    let (status, found) = outcome_parts(&solve.outcome);
    let verified = solve.outcome.found().map(|t| t.verify(graph) && t.perfect);
    let summary = match &solve.outcome {
        Outcome::Found(t) => format!("{} copies", t.size()),
        _ => found.result.to_string(),
    };
    let mut report = Report::new("tile", status, summary, found)?.input("mode", "perfect").nodes(solve.nodes);
    report.verified = verified;
    Ok(report)
}

pub fn max_tile_report(graph: &ThreeGraph, budget: Option<u64>) -> Result<Report> {
    let max = max_tiling(graph, budget)?;
    let status = if max.optimal { Status::Solved } else { Status::Unknown };
    let outcome = json!({ "optimal": max.optimal, "size": max.tiling.size(), "tiling": max.tiling });
    Ok(Report::new("tile", status, max.tiling.size().to_string(), outcome)?
        .input("mode", "max")
        .nodes(max.nodes)
        .verified(max.tiling.verify(graph)))
}

pub fn five_report(graph: &FiveGraph, parts: Option<&[Vec<Vertex>]>, budget: Option<u64>) -> Result<Report> {
    let solve = perfect_matching_5graph(graph, budget)?;
    let (status, found) = outcome_parts(&solve.outcome);
    let verified = solve.outcome.found().map(|m| {
        let mut seen = vec![false; graph.n()];
        m.iter().all(|e| graph.edges().binary_search(e).is_ok() && e.iter().all(|&v| !std::mem::replace(&mut seen[v], true)))
            && seen.iter().all(|&s| s)
    });
    let degree = parts.map(|p| dh_condition_check(graph, p));
    let outcome = json!({ "matching": found, "degree_condition": degree });
    let mut report = Report::new("tile", status, found_summary(&solve.outcome), outcome)?.input("mode", "five").nodes(solve.nodes);
    report.verified = verified;
    Ok(report)
}

fn found_summary<T>(outcome: &Outcome<T>) -> String {
    match outcome {
        Outcome::Found(_) => "found",
        Outcome::Infeasible(_) => "infeasible",
        Outcome::Unknown => "unknown",
    }
    .to_string()
}

pub fn frac_report(graph: &ThreeGraph, avoid: &AvoidanceGraph) -> Result<Report> {
    let out = frac_perfect(graph, avoid)?;
    let (status, summary, verified) = match &out {
        FracOutcome::Feasible(w) => (Status::Solved, format!("total {}", to_pq(&w.total())), w.is_perfect_in(graph, avoid)),
        FracOutcome::Certificate(c) => {
            (Status::Infeasible, format!("a.1 = {}", to_pq(&c.total())), c.verified && verify_certificate(graph, avoid, c)?)
        }
    };
    Ok(Report::new("frac", status, summary, &out)?.input("mode", "perfect").input("avoiding", avoid.len()).verified(verified))
}

pub fn minimax_report(graph: &ThreeGraph) -> Result<Report> {
    let out = frac_min_pair_weight(graph)?;
    let none = AvoidanceGraph::empty(graph.n());
    let (status, summary, verified) = match &out {
        Minimax::Optimal { w, tiling } => {
            (Status::Solved, format!("W = {}", to_pq(w)), tiling.is_perfect_in(graph, &none) && tiling.psi(graph.n()) == *w)
        }
        Minimax::Infeasible { certificate } => {
            (Status::Infeasible, "infeasible".to_string(), verify_certificate(graph, &none, certificate)?)
        }
    };
    Ok(Report::new("frac", status, summary, &out)?.input("mode", "minimax").verified(verified))
}

/// Accepts a bare certificate or a `frac` report carrying one.
pub fn parse_certificate(text: &str) -> Result<FarkasCertificate> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let inner = match value.pointer("/outcome") {
        Some(o) if o.get("result").and_then(|r| r.as_str()) == Some("certificate") => o["value"].clone(),
        Some(o) if o.get("certificate").is_some() => o["certificate"].clone(),
        Some(_) => bail!("report does not carry a certificate"),
        None => value,
    };
    Ok(serde_json::from_value(inner)?)
}

pub fn certify_report(graph: &ThreeGraph, cert: &FarkasCertificate) -> Result<Report> {
    let avoid = AvoidanceGraph::new(graph.n(), cert.avoiding.iter().copied())?;
    let ok = verify_certificate(graph, &avoid, cert)?;
    let status = if ok { Status::Solved } else { Status::Unknown };
    let outcome = json!({ "verified": ok, "total": to_pq(&cert.total()), "avoiding": cert.avoiding.len() });
    Ok(Report::new("certify", status, if ok { "verified" } else { "rejected" }, outcome)?.verified(ok))
}

pub fn extremal_report(graph: &ThreeGraph, gamma: &Rational, mode: SearchMode) -> Result<Report> {
    let out = extremality(graph, gamma, mode)?;
    let verified = match &out.witness {
        Some(w) => w.len() == out.subset_size && graph.edges_within(w) == out.min_edges,
        None => true,
    };
    let summary = format!("extremal={} density={}", out.is_extremal(), to_pq(&out.min_density_found));
    let mut report = Report::new("extremal", Status::Solved, summary, &out)?.input("gamma", to_pq(gamma)).verified(verified);
    if let SearchMode::Heuristic { seed, restarts } = mode {
        report = report.input("seed", seed).input("restarts", restarts);
    }
    Ok(report)
}

fn subset_label(subset: &[Vertex]) -> String {
    subset.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn pairs_report(graph: &ThreeGraph, subset: &[Vertex], gamma: &Rational) -> Result<Report> {
    let out = classify_pairs(graph, subset, gamma)?;
    let summary = format!("good={} bad={}", out.good.len(), out.bad.len());
    Ok(Report::new("pairs", Status::Solved, summary, &out)?.input("subset", subset_label(subset)).input("gamma", to_pq(gamma)))
}

pub fn pipeline_report(graph: &ThreeGraph, subset: &[Vertex], gamma: &Rational, constant: &Rational) -> Result<Report> {
    let out = pipeline_quantities(graph, subset, gamma, constant)?;
    let status = if out.matching_complete { Status::Solved } else { Status::Unknown };
    let summary = format!("|X|={} matched={}", out.x.len(), out.matching.len());
    Ok(Report::new("pairs", status, summary, &out)?
        .input("subset", subset_label(subset))
        .input("gamma", to_pq(gamma))
        .input("constant", to_pq(constant)))
}

pub fn linked_report(graph: &ThreeGraph, u: Vertex, v: Vertex, r: usize, options: &LinkedOptions) -> Result<Report> {
    let out = linked_count(graph, u, v, r, options)?;
    let summary = format!("count={}", to_pq(&out.count));
    let mut report =
        Report::new("linked", Status::Solved, summary, &out)?.input("u", u).input("v", v).input("r", r);
    if !out.exact {
        report = report.input("seed", options.seed).input("samples", options.samples);
    }
    if let Some(eta) = &options.eta {
        report = report.input("eta", to_pq(eta));
    }
    Ok(report)
}

#[derive(Serialize)]
struct LatticeOutcome<'a> {
    abundance: Option<&'a AbundanceReport>,
    lattice: &'a IndexLattice,
    basis: Vec<Vec<String>>,
    rank: usize,
    queries: Vec<Query>,
    transferral: Option<Option<Transferral>>,
}

#[derive(Serialize)]
struct Query {
    vector: Vec<i64>,
    member: bool,
}

/// Membership queries against the lattice generated by `generators`.
pub fn lattice_report(dim: usize, generators: Vec<Vec<i64>>, queries: &[Vec<i64>]) -> Result<Report> {
    let lattice = IndexLattice::new(dim, generators)?;
    lattice_from(None, lattice, queries, None)
}

/// Abundant index vectors of `graph` over `partition`, the lattice they
/// generate, membership queries and optionally a transferral witness.
pub fn graph_lattice_report(
    graph: &ThreeGraph,
    partition: &Partition,
    mu: &Rational,
    queries: &[Vec<i64>],
    psi: Option<&Rational>,
) -> Result<Report> {
    let abundance = abundant_vectors(graph, partition, mu)?;
    let lattice = IndexLattice::new(partition.len(), abundance.abundant.iter().map(|i| i.as_integers()).collect())?;
    let transferral = psi.map(|p| transferral_witness(graph, partition, p)).transpose()?;
    let mut report = lattice_from(Some(&abundance), lattice, queries, transferral)?.input("mu", to_pq(mu));
    if let Some(p) = psi {
        report = report.input("psi", to_pq(p));
    }
    Ok(report.input("parts", partition.len()))
}

fn lattice_from(
    abundance: Option<&AbundanceReport>,
    lattice: IndexLattice,
    queries: &[Vec<i64>],
    transferral: Option<Option<Transferral>>,
) -> Result<Report> {
    let queries = queries
        .iter()
        .map(|q| Ok(Query { vector: q.clone(), member: lattice.contains(q)? }))
        .collect::<Result<Vec<_>>>()?;
    let verified = lattice.generators().iter().all(|g| lattice.contains(g).unwrap_or(false));
    let summary = format!("rank={} members={}/{}", lattice.rank(), queries.iter().filter(|q| q.member).count(), queries.len());
    let outcome = LatticeOutcome { abundance, basis: lattice.basis(), rank: lattice.rank(), lattice: &lattice, queries, transferral };
    Ok(Report::new("lattice", Status::Solved, summary, outcome)?.verified(verified))
}

pub fn rainbow_report(inst: &RainbowInstance, budget: Option<u64>) -> Result<Report> {
    let solve = rainbow_perfect_tiling(inst, budget)?;
    let (status, found) = outcome_parts(&solve.outcome);
    let mut report = Report::new("rainbow", status, found_summary(&solve.outcome), found)?
        .input("mode", "tiling")
        .input("colours", inst.family().len())
        .nodes(solve.nodes);
    report.verified = solve.outcome.found().map(|t| t.verify(inst));
    Ok(report)
}

pub fn covering_report(first: &ThreeGraph, second: &ThreeGraph) -> Result<Report> {
    let out: Option<ColourCovering> = colour_covering_hom(first, second)?;
    let (status, summary) = match &out {
        Some(_) => (Status::Solved, "found"),
        None => (Status::Infeasible, "none"),
    };
    let mut report = Report::new("rainbow", status, summary, json!({ "covering": out }))?.input("mode", "covering");
    report.verified = out.map(|c| c.verify(first, second));
    Ok(report)
}
