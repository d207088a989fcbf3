//! Exact T-tilings: perfect and maximum tilings through exact cover over the
//! supporting 5-sets, perfect matchings of 5-graphs, colour covering
//! homomorphisms and perfect rainbow tilings.

use serde::{Deserialize, Serialize};

use crate::copies::{copies_on, supporting_sets, TCopy};
use crate::cover::{exact_cover, max_packing, CoverResult, MAX_VERTICES};
use crate::error::{invalid, Result};
use crate::hypergraph::{FiveGraph, ThreeGraph, Vertex};
use crate::rational::Rational;

/// Vertex-disjoint copies of T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub n: usize,
    pub copies: Vec<TCopy>,
    pub perfect: bool,
}

impl Tiling {
    pub fn new(n: usize, mut copies: Vec<TCopy>) -> Self {
        copies.sort_unstable();
        let perfect = 5 * copies.len() == n;
        Tiling { n, copies, perfect }
    }

    pub fn size(&self) -> usize {
        self.copies.len()
    }

    pub fn covered(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.copies.iter().flat_map(|t| t.roles()).collect();
        v.sort_unstable();
        v
    }

    /// Disjointness, edge membership and the `perfect` flag, checked from scratch.
    pub fn verify(&self, graph: &ThreeGraph) -> bool {
        if self.n != graph.n() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for t in &self.copies {
            if !t.is_in(graph) {
                return false;
            }
            for v in t.roles() {
                if v >= self.n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        self.perfect == seen.iter().all(|&s| s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfeasibleReason {
    /// `5 ∤ n`, or a 5-graph bipartition without the 3:2 shape.
    Divisibility,
    Shape,
    /// The search tree was exhausted.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Infeasible(InfeasibleReason),
    /// The node budget ran out before the search finished.
    Unknown,
}

impl<T> Outcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Outcome::Infeasible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solve<T> {
    pub outcome: Outcome<T>,
    pub nodes: u64,
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return invalid(format!("exact search supports at most {MAX_VERTICES} vertices, got {n}"));
    }
    Ok(())
}

fn set_mask(set: &[Vertex]) -> u128 {
    set.iter().fold(0u128, |m, &v| m | 1 << v)
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Perfect T-tiling by exact cover over supporting 5-sets, branching on the
/// uncovered vertex in fewest remaining sets. `node_limit` bounds the search.
pub fn perfect_tiling(graph: &ThreeGraph, node_limit: Option<u64>) -> Result<Solve<Tiling>> {
    let n = graph.n();
    if !n.is_multiple_of(5) {
        return Ok(Solve { outcome: Outcome::Infeasible(InfeasibleReason::Divisibility), nodes: 0 });
    }
    check_capacity(n)?;
    let sets = supporting_sets(graph);
    let masks: Vec<u128> = sets.iter().map(|(s, _)| set_mask(s)).collect();
    let (result, nodes) = exact_cover(&masks, full_mask(n), node_limit);
    let outcome = match result {
        CoverResult::Found(chosen) => {
            let tiling = Tiling::new(n, chosen.iter().map(|&i| sets[i].1).collect());
            assert!(tiling.verify(graph) && tiling.perfect, "exact cover produced an invalid tiling");
            Outcome::Found(tiling)
        }
        CoverResult::Exhausted => Outcome::Infeasible(InfeasibleReason::Exhausted),
        CoverResult::BudgetExceeded => Outcome::Unknown,
    };
    Ok(Solve { outcome, nodes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxTiling {
    pub tiling: Tiling,
    /// False when the node limit was hit; `tiling` is then the best found.
    pub optimal: bool,
    pub nodes: u64,
}

/// Maximum T-tiling by branch and bound.
pub fn max_tiling(graph: &ThreeGraph, node_limit: Option<u64>) -> Result<MaxTiling> {
    check_capacity(graph.n())?;
    let sets = supporting_sets(graph);
    let masks: Vec<u128> = sets.iter().map(|(s, _)| set_mask(s)).collect();
    let packing = max_packing(&masks, 5, node_limit);
    let tiling = Tiling::new(graph.n(), packing.chosen.iter().map(|&i| sets[i].1).collect());
    assert!(tiling.verify(graph), "packing produced an invalid tiling");
    Ok(MaxTiling { tiling, optimal: packing.optimal, nodes: packing.nodes })
}

/// Perfect matching of a 5-graph. With a bipartition the sides must have the
/// 3:2 shape `|A| = 3|V|/5`.
pub fn perfect_matching_5graph(graph: &FiveGraph, node_limit: Option<u64>) -> Result<Solve<Vec<[Vertex; 5]>>> {
    let n = graph.n();
    check_capacity(n)?;
    if !n.is_multiple_of(5) {
        return Ok(Solve { outcome: Outcome::Infeasible(InfeasibleReason::Divisibility), nodes: 0 });
    }
    if let Some(p) = graph.bipartition() {
        if p.a.len() != 3 * n / 5 || p.b.len() != 2 * n / 5 {
            return Ok(Solve { outcome: Outcome::Infeasible(InfeasibleReason::Shape), nodes: 0 });
        }
    }
    let masks: Vec<u128> = graph.edges().iter().map(|e| set_mask(e)).collect();
    let (result, nodes) = exact_cover(&masks, full_mask(n), node_limit);
    let outcome = match result {
        CoverResult::Found(chosen) => {
            let mut m: Vec<[Vertex; 5]> = chosen.iter().map(|&i| graph.edges()[i]).collect();
            m.sort_unstable();
            let union = m.iter().fold(0u128, |acc, e| {
                assert_eq!(acc & set_mask(e), 0, "matching edges overlap");
                acc | set_mask(e)
            });
            assert_eq!(union, full_mask(n), "matching is not perfect");
            Outcome::Found(m)
        }
        CoverResult::Exhausted => Outcome::Infeasible(InfeasibleReason::Exhausted),
        CoverResult::BudgetExceeded => Outcome::Unknown,
    };
    Ok(Solve { outcome, nodes })
}

/// Degree test for a perfect matching in a k-partite k-graph with classes of
/// equal size m: every vertex in at least `(k-1) m^(k-1) / k` edges.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeConditionReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub part_size: usize,
    #[serde(serialize_with = "crate::rational::serialize_pq")]
    pub threshold: Rational,
    pub degrees: Vec<usize>,
    pub failing: Vec<Vertex>,
    pub holds: bool,
}

pub fn dh_condition_check(graph: &FiveGraph, parts: &[Vec<Vertex>]) -> DegreeConditionReport {
    const K: usize = 5;
    let degrees = graph.degrees();
    let not_applicable = |reason: String| DegreeConditionReport {
        applicable: false,
        reason: Some(reason),
        part_size: 0,
        threshold: Rational::from_integer(0.into()),
        degrees: degrees.clone(),
        failing: Vec::new(),
        holds: false,
    };
    if parts.len() != K {
        return not_applicable(format!("expected {K} parts, got {}", parts.len()));
    }
    let m = parts[0].len();
    if parts.iter().any(|p| p.len() != m) {
        return not_applicable("parts have unequal sizes".into());
    }
    let mut part_of = vec![usize::MAX; graph.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if v >= graph.n() || part_of[v] != usize::MAX {
                return not_applicable("parts do not partition the vertex set".into());
            }
            part_of[v] = i;
        }
    }
    if part_of.contains(&usize::MAX) {
        return not_applicable("parts do not partition the vertex set".into());
    }
    for e in graph.edges() {
        let mut hit = [false; K];
        for &v in e {
            hit[part_of[v]] = true;
        }
        if !hit.iter().all(|&h| h) {
            return not_applicable(format!("edge {e:?} is not transversal"));
        }
    }
    let threshold = Rational::new(((K - 1) * m.pow(K as u32 - 1)).into(), K.into());
    let failing: Vec<Vertex> = (0..graph.n())
        .filter(|&v| Rational::from_integer(degrees[v].into()) < threshold)
        .collect();
    DegreeConditionReport {
        applicable: true,
        reason: None,
        part_size: m,
        holds: failing.is_empty(),
        threshold,
        degrees,
        failing,
    }
}

/// Which edge of T is mapped into the first graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Abc,
    Abd,
    Cde,
}

/// An injective map of T's roles into the common vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourCovering {
    /// Images of `a, b, c, d, e`.
    pub roles: [Vertex; 5],
    pub first_graph_edge: Role,
}

impl ColourCovering {
    pub fn verify(&self, first: &ThreeGraph, second: &ThreeGraph) -> bool {
        let [a, b, c, d, e] = self.roles;
        let mut sorted = self.roles;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let edges = [(Role::Abc, [a, b, c]), (Role::Abd, [a, b, d]), (Role::Cde, [c, d, e])];
        edges.iter().all(|(role, [x, y, z])| {
            let host = if *role == self.first_graph_edge { first } else { second };
            host.has_edge(*x, *y, *z)
        })
    }
}

/// Colour covering homomorphism from T to `(first, second)`.
///
/// Search order: an edge `xyz` of `first` (each vertex in turn as `z`), then
/// `u` with `xyu` in `second`, then `v` with `uvz` in `second`; this places
/// `abc` in `first`. Since `abd` is symmetric to `abc`, the only other case is
/// `cde` in `first`, tried afterwards so that `NotFound` is exhaustive.
pub fn colour_covering_hom(first: &ThreeGraph, second: &ThreeGraph) -> Result<Option<ColourCovering>> {
    if first.n() != second.n() {
        return invalid(format!("graphs have {} and {} vertices", first.n(), second.n()));
    }
    if first.n() < 5 {
        return invalid(format!("colour covering needs at least 5 vertices, got {}", first.n()));
    }
    for &[p, q, r] in first.edges() {
        for (x, y, z) in [(p, q, r), (p, r, q), (q, r, p)] {
            for u in second.neighbours_unchecked(x, y) {
                if u == z {
                    continue;
                }
                for v in second.neighbours_unchecked(u, z) {
                    if v != x && v != y {
                        return Ok(Some(ColourCovering { roles: [x, y, z, u, v], first_graph_edge: Role::Abc }));
                    }
                }
            }
        }
    }
    // cde in first: c, d, e from the edge, then a, b with abc and abd in second.
    for &[p, q, r] in first.edges() {
        for (c, d, e) in [(p, q, r), (p, r, q), (q, r, p)] {
            for a in (0..first.n()).filter(|&a| a != c && a != d && a != e) {
                for b in second.neighbours_unchecked(a, c) {
                    if b != d && b != e && second.has_edge(a, b, d) {
                        return Ok(Some(ColourCovering { roles: [a, b, c, d, e], first_graph_edge: Role::Cde }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `3n/5` colour graphs on a common vertex set of size `n`, `5 | n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowInstance {
    n: usize,
    family: Vec<ThreeGraph>,
}

impl RainbowInstance {
    pub fn new(n: usize, family: Vec<ThreeGraph>) -> Result<Self> {
        if !n.is_multiple_of(5) {
            return invalid(format!("rainbow instance needs 5 | n, got {n}"));
        }
        if family.len() != 3 * n / 5 {
            return invalid(format!("expected {} colour graphs, got {}", 3 * n / 5, family.len()));
        }
        if let Some(g) = family.iter().find(|g| g.n() != n) {
            return invalid(format!("colour graph has {} vertices, expected {n}", g.n()));
        }
        Ok(RainbowInstance { n, family })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[ThreeGraph] {
        &self.family
    }
}

/// A perfect tiling whose flattened edge list (`abc, abd, cde` per copy) is
/// matched to distinct colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowTiling {
    pub copies: Vec<TCopy>,
    pub perfect: bool,
    pub edges: Vec<[Vertex; 3]>,
    pub colours: Vec<usize>,
}

impl RainbowTiling {
    pub fn verify(&self, inst: &RainbowInstance) -> bool {
        let tiling = Tiling::new(inst.n, self.copies.clone());
        let mut union = ThreeGraph::empty(inst.n);
        for g in &inst.family {
            union = union.union(g).expect("common vertex set");
        }
        if !tiling.verify(&union) || !tiling.perfect || self.copies != tiling.copies {
            return false;
        }
        let expected: Vec<[Vertex; 3]> = self.copies.iter().flat_map(|t| t.edges()).collect();
        if expected != self.edges || self.colours.len() != self.edges.len() {
            return false;
        }
        let mut used = vec![false; inst.family.len()];
        for (e, &c) in self.edges.iter().zip(&self.colours) {
            if c >= used.len() || used[c] || !inst.family[c].has_edge(e[0], e[1], e[2]) {
                return false;
            }
            used[c] = true;
        }
        true
    }
}

/// Bipartite matching of tiling edges to colours, grown one edge at a time.
#[derive(Clone)]
struct ColourMatching {
    // colour -> index into `edges`
    owner: Vec<Option<usize>>,
    options: Vec<Vec<usize>>,
}

impl ColourMatching {
    fn augment(&mut self, edge: usize, visited: &mut [bool]) -> bool {
        for i in 0..self.options[edge].len() {
            let c = self.options[edge][i];
            if visited[c] {
                continue;
            }
            visited[c] = true;
            match self.owner[c] {
                None => {
                    self.owner[c] = Some(edge);
                    return true;
                }
                Some(other) => {
                    if self.augment(other, visited) {
                        self.owner[c] = Some(edge);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn push(&mut self, colours: Vec<usize>) -> bool {
        self.options.push(colours);
        let edge = self.options.len() - 1;
        let mut visited = vec![false; self.owner.len()];
        self.augment(edge, &mut visited)
    }
}

struct RainbowSearch<'a> {
    inst: &'a RainbowInstance,
    sets: Vec<u128>,
    per_set: Vec<Vec<TCopy>>,
    chosen: Vec<TCopy>,
    nodes: u64,
    limit: Option<u64>,
}

impl RainbowSearch<'_> {
    fn colours_of(&self, e: &[Vertex; 3]) -> Vec<usize> {
        (0..self.inst.family.len())
            .filter(|&i| self.inst.family[i].has_edge(e[0], e[1], e[2]))
            .collect()
    }

    fn run(&mut self, uncovered: u128, live: &[usize], matching: &ColourMatching) -> std::result::Result<Option<ColourMatching>, ()> {
        if uncovered == 0 {
            return Ok(Some(matching.clone()));
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Err(());
        }
        let mut best: Option<(usize, usize)> = None;
        let mut m = uncovered;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let count = live.iter().filter(|&&s| self.sets[s] >> v & 1 == 1).count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((v, count));
            }
        }
        let (v, count) = best.expect("uncovered is non-empty");
        if count == 0 {
            return Ok(None);
        }
        let options: Vec<usize> = live.iter().copied().filter(|&s| self.sets[s] >> v & 1 == 1).collect();
        for s in options {
            let rest = uncovered & !self.sets[s];
            let child: Vec<usize> = live.iter().copied().filter(|&t| self.sets[t] & !rest == 0).collect();
            for ci in 0..self.per_set[s].len() {
                let copy = self.per_set[s][ci];
                let mut next = matching.clone();
                if !copy.edges().iter().all(|e| next.push(self.colours_of(e))) {
                    continue;
                }
                self.chosen.push(copy);
                if let Some(done) = self.run(rest, &child, &next)? {
                    return Ok(Some(done));
                }
                self.chosen.pop();
            }
        }
        Ok(None)
    }
}

/// Exhaustive search for a perfect rainbow T-tiling: exact cover over sets
/// supporting T in the union graph, with the edge-to-colour matching kept
/// maximum as copies are added so dead branches are cut immediately.
pub fn rainbow_perfect_tiling(inst: &RainbowInstance, node_limit: Option<u64>) -> Result<Solve<RainbowTiling>> {
    let n = inst.n;
    check_capacity(n)?;
    let mut union = ThreeGraph::empty(n);
    for g in &inst.family {
        union = union.union(g)?;
    }
    let sets = supporting_sets(&union);
    let masks: Vec<u128> = sets.iter().map(|(s, _)| set_mask(s)).collect();
    let per_set: Vec<Vec<TCopy>> = sets.iter().map(|(s, _)| copies_on(&union, s)).collect();
    let mut search = RainbowSearch { inst, sets: masks, per_set, chosen: Vec::new(), nodes: 0, limit: node_limit };
    let live: Vec<usize> = (0..search.sets.len()).collect();
    let start = ColourMatching { owner: vec![None; inst.family.len()], options: Vec::new() };
    let outcome = match search.run(full_mask(n), &live, &start) {
        Ok(Some(matching)) => {
            // `options` order follows `chosen` order; re-key edges by that order.
            let order_edges: Vec<[Vertex; 3]> = search.chosen.iter().flat_map(|t| t.edges()).collect();
            let mut colour_of_edge = vec![usize::MAX; order_edges.len()];
            for (c, owner) in matching.owner.iter().enumerate() {
                if let Some(e) = owner {
                    colour_of_edge[*e] = c;
                }
            }
            let mut paired: Vec<(TCopy, [usize; 3])> = search
                .chosen
                .iter()
                .enumerate()
                .map(|(i, &t)| (t, [colour_of_edge[3 * i], colour_of_edge[3 * i + 1], colour_of_edge[3 * i + 2]]))
                .collect();
            paired.sort_unstable();
            let copies: Vec<TCopy> = paired.iter().map(|p| p.0).collect();
            let edges = copies.iter().flat_map(|t| t.edges()).collect();
            let colours = paired.iter().flat_map(|p| p.1).collect();
            let tiling = RainbowTiling { copies, perfect: true, edges, colours };
            assert!(tiling.verify(inst), "rainbow search produced an invalid tiling");
            Outcome::Found(tiling)
        }
        Ok(None) => Outcome::Infeasible(InfeasibleReason::Exhausted),
        Err(()) => Outcome::Unknown,
    };
    Ok(Solve { outcome, nodes: search.nodes })
}
