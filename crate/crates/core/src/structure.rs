//! Structural statistics: extremality search, good and bad pairs, the
//! quantities of the extremal-case pipeline, and linkedness counts.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::copies::supporting_sets;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{ThreeGraph, Vertex};
use crate::rational::{binomial, ratio, serialize_pq, serialize_pq_opt, Rational};
use crate::tiling::perfect_tiling;

pub const HEURISTIC_RESTARTS: usize = 20;
const EXACT_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Exhaustive branch and bound over all `⌊3n/5⌋`-subsets.
    Exact,
    /// Steepest-descent swaps from seeded random starts.
    Heuristic { seed: u64, restarts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalityReport {
    #[serde(serialize_with = "serialize_pq")]
    pub gamma: Rational,
    pub subset_size: usize,
    pub min_edges: usize,
    #[serde(serialize_with = "serialize_pq")]
    pub min_density_found: Rational,
    pub witness: Option<Vec<Vertex>>,
    pub exact: bool,
}

impl ExtremalityReport {
    pub fn is_extremal(&self) -> bool {
        self.witness.is_some()
    }
}

fn check_subset(graph: &ThreeGraph, subset: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return invalid("vertex set repeats a vertex");
    }
    if let Some(&v) = s.last().filter(|&&v| v >= graph.n()) {
        return invalid(format!("vertex {v} outside 0..{}", graph.n()));
    }
    Ok(s)
}

/// Edges `vxy` with `x, y` in `subset` (as a membership table).
fn pair_degree(graph: &ThreeGraph, v: Vertex, members: &[Vertex]) -> usize {
    let mut count = 0;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if x != v && y != v && graph.has_edge(v, x, y) {
                count += 1;
            }
        }
    }
    count
}

struct ExactSearch<'a> {
    graph: &'a ThreeGraph,
    size: usize,
    chosen: Vec<Vertex>,
    best: Option<(usize, Vec<Vertex>)>,
}

impl ExactSearch<'_> {
    fn run(&mut self, next: Vertex, edges: usize) {
        if self.best.as_ref().is_some_and(|(b, _)| edges >= *b) {
            return;
        }
        if self.chosen.len() == self.size {
            self.best = Some((edges, self.chosen.clone()));
            return;
        }
        let n = self.graph.n();
        if self.chosen.len() + (n - next) < self.size {
            return;
        }
        let added = pair_degree(self.graph, next, &self.chosen);
        self.chosen.push(next);
        self.run(next + 1, edges + added);
        self.chosen.pop();
        self.run(next + 1, edges);
    }
}

fn descend(graph: &ThreeGraph, mut set: Vec<Vertex>) -> (usize, Vec<Vertex>) {
    let n = graph.n();
    loop {
        let mut inside = vec![false; n];
        for &v in &set {
            inside[v] = true;
        }
        let degree: Vec<usize> = (0..n).map(|v| pair_degree(graph, v, &set)).collect();
        let mut best: Option<(i64, usize, Vertex)> = None;
        for (slot, &u) in set.iter().enumerate() {
            for w in (0..n).filter(|&w| !inside[w]) {
                let shared = graph.neighbours_unchecked(u, w).filter(|&x| inside[x]).count();
                let delta = degree[w] as i64 - shared as i64 - degree[u] as i64;
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, slot, w));
                }
            }
        }
        match best {
            Some((_, slot, w)) => set[slot] = w,
            None => {
                set.sort_unstable();
                return (graph.edges_within(&set), set);
            }
        }
    }
}

/// Smallest density of an induced subgraph on `⌊3n/5⌋` vertices, with a
/// witness when that density is at most `gamma`.
pub fn extremality(graph: &ThreeGraph, gamma: &Rational, mode: SearchMode) -> Result<ExtremalityReport> {
    let n = graph.n();
    if n < 5 {
        return invalid(format!("extremality needs n >= 5, got {n}"));
    }
    let size = 3 * n / 5;
    let (min_edges, set, exact) = match mode {
        SearchMode::Exact => {
            if n > EXACT_LIMIT {
                return Err(Error::Unsupported(format!("exact extremality search is limited to n <= {EXACT_LIMIT}")));
            }
            let mut search = ExactSearch { graph, size, chosen: Vec::new(), best: None };
            search.run(0, 0);
            let (edges, set) = search.best.expect("at least one subset exists");
            (edges, set, true)
        }
        SearchMode::Heuristic { seed, restarts } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(usize, Vec<Vertex>)> = None;
            for _ in 0..restarts.max(1) {
                let start = sample(&mut rng, n, size).into_vec();
                let (edges, set) = descend(graph, start);
                if best.as_ref().is_none_or(|(b, _)| edges < *b) {
                    best = Some((edges, set));
                }
            }
            let (edges, set) = best.expect("at least one restart");
            (edges, set, false)
        }
    };
    let min_density_found = Rational::new(BigInt::from(min_edges), binomial(size as u64, 3));
    let witness = (min_density_found <= *gamma).then_some(set);
    Ok(ExtremalityReport { gamma: gamma.clone(), subset_size: size, min_edges, min_density_found, witness, exact })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub good: Vec<(Vertex, Vertex)>,
    pub bad: Vec<(Vertex, Vertex)>,
}

fn is_bad(graph: &ThreeGraph, x: Vertex, y: Vertex, inside: &[bool], gamma: &Rational) -> bool {
    let k = graph.neighbours_unchecked(x, y).filter(|&z| inside[z]).count();
    let n = graph.n();
    Rational::from_integer(BigInt::from(k * k)) > gamma * Rational::from_integer(BigInt::from(n * n))
}

/// A pair inside `subset` is bad when `|N(xy) ∩ S| > √γ·n`, compared as
/// `|N(xy) ∩ S|² > γ·n²`; otherwise good.
pub fn classify_pairs(graph: &ThreeGraph, subset: &[Vertex], gamma: &Rational) -> Result<PairClassification> {
    let s = check_subset(graph, subset)?;
    let mut inside = vec![false; graph.n()];
    for &v in &s {
        inside[v] = true;
    }
    let mut out = PairClassification { good: Vec::new(), bad: Vec::new() };
    for (i, &x) in s.iter().enumerate() {
        for &y in &s[i + 1..] {
            if is_bad(graph, x, y, &inside, gamma) {
                out.bad.push((x, y));
            } else {
                out.good.push((x, y));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedEdge {
    pub edge: [Vertex; 3],
    pub good_pair: (Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    #[serde(serialize_with = "serialize_pq")]
    pub constant: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub threshold: Rational,
    /// The threshold `c·n²` is below 1, so `X` is just the vertices with no
    /// edge having two vertices in `S`.
    pub degenerate: bool,
    pub x: Vec<Vertex>,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub good_pairs: usize,
    pub bad_pairs: usize,
    pub matching: Vec<MatchedEdge>,
    pub replacements: usize,
    pub matching_complete: bool,
}

pub fn default_pipeline_constant() -> Rational {
    ratio(1, 50)
}

struct MatchingBuilder<'a> {
    graph: &'a ThreeGraph,
    in_a: Vec<bool>,
    used: Vec<bool>,
    good: Vec<(Vertex, Vertex)>,
    matching: Vec<MatchedEdge>,
}

impl MatchingBuilder<'_> {
    fn add(&mut self, pair: (Vertex, Vertex), z: Vertex) {
        let mut edge = [pair.0, pair.1, z];
        edge.sort_unstable();
        for v in edge {
            self.used[v] = true;
        }
        self.matching.push(MatchedEdge { edge, good_pair: pair });
    }

    fn free_pair(&self, (x, y): (Vertex, Vertex)) -> bool {
        !self.used[x] && !self.used[y]
    }

    fn extend(&mut self, target: usize) {
        for idx in 0..self.good.len() {
            if self.matching.len() >= target {
                return;
            }
            let pair = self.good[idx];
            if !self.free_pair(pair) {
                continue;
            }
            let z = self.graph.neighbours_unchecked(pair.0, pair.1).find(|&z| self.in_a[z] && !self.used[z]);
            if let Some(z) = z {
                self.add(pair, z);
            }
        }
    }

    /// Replaces some `e ∈ M` by `p ∪ {x}` and `q ∪ {y}` for disjoint free good
    /// pairs `p`, `q` and distinct `x, y ∈ e`.
    fn replace(&mut self) -> bool {
        let free: Vec<(Vertex, Vertex)> = self.good.iter().copied().filter(|&p| self.free_pair(p)).collect();
        for (i, &p) in free.iter().enumerate() {
            for &q in &free[i + 1..] {
                if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
                    continue;
                }
                for slot in 0..self.matching.len() {
                    let e = self.matching[slot].edge;
                    for &x in &e {
                        for &y in &e {
                            if x == y || !self.graph.has_edge(p.0, p.1, x) || !self.graph.has_edge(q.0, q.1, y) {
                                continue;
                            }
                            self.matching.remove(slot);
                            for v in e {
                                self.used[v] = false;
                            }
                            self.add(p, x);
                            self.add(q, y);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// `X`, `A = S ∪ X`, `B` and a matching in `H[A]` of size `|X|` whose edges
/// each contain a good pair, built greedily and grown by the replacement step.
pub fn pipeline_quantities(
    graph: &ThreeGraph,
    subset: &[Vertex],
    gamma: &Rational,
    constant: &Rational,
) -> Result<PipelineReport> {
    let n = graph.n();
    let s = check_subset(graph, subset)?;
    if s.len() != 3 * n / 5 {
        return invalid(format!("|S| = {} but the pipeline needs |S| = {}", s.len(), 3 * n / 5));
    }
    let mut inside = vec![false; n];
    for &v in &s {
        inside[v] = true;
    }
    let threshold = constant * Rational::from_integer(BigInt::from(n * n));
    let degenerate = threshold < Rational::from_integer(BigInt::from(1));
    let x: Vec<Vertex> = (0..n)
        .filter(|&v| !inside[v])
        .filter(|&v| Rational::from_integer(BigInt::from(pair_degree(graph, v, &s))) < threshold)
        .collect();
    let mut in_a = inside.clone();
    for &v in &x {
        in_a[v] = true;
    }
    let a: Vec<Vertex> = (0..n).filter(|&v| in_a[v]).collect();
    let b: Vec<Vertex> = (0..n).filter(|&v| !in_a[v]).collect();
    let classes = classify_pairs(graph, &s, gamma)?;
    let mut builder = MatchingBuilder {
        graph,
        in_a,
        used: vec![false; n],
        good: classes.good.clone(),
        matching: Vec::new(),
    };
    let target = x.len();
    let mut replacements = 0;
    builder.extend(target);
    while builder.matching.len() < target && builder.replace() {
        replacements += 1;
        builder.extend(target);
    }
    let mut matching = builder.matching;
    matching.sort_by_key(|m| m.edge);
    Ok(PipelineReport {
        constant: constant.clone(),
        threshold,
        degenerate,
        matching_complete: matching.len() == target,
        x,
        a,
        b,
        good_pairs: classes.good.len(),
        bad_pairs: classes.bad.len(),
        matching,
        replacements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedOptions {
    /// Samples drawn when `r > 2`.
    pub samples: usize,
    pub seed: u64,
    /// When set, the report decides whether the count reaches `η·C(n, 5r−1)`.
    pub eta: Option<Rational>,
}

impl Default for LinkedOptions {
    fn default() -> Self {
        LinkedOptions { samples: 2000, seed: 0, eta: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkedReport {
    pub u: Vertex,
    pub v: Vertex,
    pub r: usize,
    pub exact: bool,
    /// Exact count, or the sampling estimate `hits / samples · C(n−2, 5r−1)`.
    #[serde(serialize_with = "serialize_pq")]
    pub count: Rational,
    pub hits: u64,
    pub samples: u64,
    pub candidates: String,
    #[serde(serialize_with = "serialize_pq_opt")]
    pub threshold: Option<Rational>,
    pub linked: Option<bool>,
}

fn tiles_small(supported: &HashSet<u128>, vertices: &[Vertex]) -> bool {
    match vertices.len() {
        5 => supported.contains(&vertices.iter().fold(0u128, |m, &v| m | 1 << v)),
        10 => {
            let first = vertices[0];
            let rest = &vertices[1..];
            let full = vertices.iter().fold(0u128, |m, &v| m | 1 << v);
            // choose the four partners of the smallest vertex
            for a in 0..9 {
                for b in a + 1..9 {
                    for c in b + 1..9 {
                        for d in c + 1..9 {
                            let half = 1u128 << first | 1 << rest[a] | 1 << rest[b] | 1 << rest[c] | 1 << rest[d];
                            if supported.contains(&half) && supported.contains(&(full & !half)) {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        }
        _ => unreachable!("only 5- and 10-vertex sets are tested directly"),
    }
}

fn for_each_subset(pool: &[Vertex], k: usize, f: &mut dyn FnMut(&[Vertex])) {
    fn go(pool: &[Vertex], k: usize, start: usize, current: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
        if current.len() == k {
            f(current);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - current.len() {
                break;
            }
            current.push(pool[i]);
            go(pool, k, i + 1, current, f);
            current.pop();
        }
    }
    go(pool, k, 0, &mut Vec::with_capacity(k), f);
}

fn with(set: &[Vertex], extra: Vertex) -> Vec<Vertex> {
    let mut out = set.to_vec();
    out.push(extra);
    out.sort_unstable();
    out
}

/// Number of `(5r−1)`-sets `S ⊆ V ∖ {u, v}` for which both `H[S ∪ {u}]` and
/// `H[S ∪ {v}]` have perfect T-tilings. Exhaustive for `r <= 2`, sampled above.
pub fn linked_count(graph: &ThreeGraph, u: Vertex, v: Vertex, r: usize, options: &LinkedOptions) -> Result<LinkedReport> {
    let n = graph.n();
    if u >= n || v >= n || u == v {
        return invalid(format!("({u}, {v}) is not a pair of distinct vertices in 0..{n}"));
    }
    if r == 0 {
        return invalid("r must be positive");
    }
    if n > 128 {
        return Err(Error::Unsupported(format!("linked counts support at most 128 vertices, got {n}")));
    }
    let k = 5 * r - 1;
    let pool: Vec<Vertex> = (0..n).filter(|&w| w != u && w != v).collect();
    let candidates = binomial(pool.len() as u64, k as u64);
    let (count, hits, samples, exact) = if r <= 2 {
        let supported: HashSet<u128> =
            supporting_sets(graph).iter().map(|(s, _)| s.iter().fold(0u128, |m, &x| m | 1 << x)).collect();
        let mut hits = 0u64;
        let mut total = 0u64;
        for_each_subset(&pool, k, &mut |s| {
            total += 1;
            if tiles_small(&supported, &with(s, u)) && tiles_small(&supported, &with(s, v)) {
                hits += 1;
            }
        });
        (Rational::from_integer(BigInt::from(hits)), hits, total, true)
    } else {
        let mut hits = 0u64;
        if pool.len() >= k {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            for _ in 0..options.samples {
                let s: Vec<Vertex> = sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
                let tiles = |extra: Vertex| -> Result<bool> {
                    let (h, _) = graph.induced(&with(&s, extra))?;
                    Ok(perfect_tiling(&h, None)?.outcome.found().is_some())
                };
                if tiles(u)? && tiles(v)? {
                    hits += 1;
                }
            }
        }
        let samples = options.samples as u64;
        let estimate = if samples == 0 || pool.len() < k {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(hits) * &candidates, BigInt::from(samples))
        };
        (estimate, hits, samples, false)
    };
    let threshold = options
        .eta
        .as_ref()
        .map(|eta| eta * Rational::from_integer(binomial(n as u64, k as u64)));
    let linked = threshold.as_ref().map(|t| count >= *t);
    Ok(LinkedReport { u, v, r, exact, count, hits, samples, candidates: candidates.to_string(), threshold, linked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_h_ext, gen_random_codegree};
    use crate::rational::int;

    #[test]
    fn h_ext_is_extremal() {
        let ext = gen_h_ext(10).unwrap();
        let report = extremality(&ext.graph, &int(0), SearchMode::Exact).unwrap();
        assert_eq!(report.min_edges, 0);
        let witness = report.witness.unwrap();
        assert_eq!(witness.len(), 6);
        assert!(witness.iter().all(|v| ext.b.contains(v)));
        let heuristic =
            extremality(&ext.graph, &int(0), SearchMode::Heuristic { seed: 1, restarts: HEURISTIC_RESTARTS }).unwrap();
        assert_eq!(heuristic.min_edges, 0);
        assert!(!heuristic.exact);
    }

    #[test]
    fn complete_is_not_extremal() {
        let k10 = gen_complete(10).unwrap();
        let report = extremality(&k10, &ratio(99, 100), SearchMode::Exact).unwrap();
        assert_eq!(report.min_density_found, int(1));
        assert!(report.witness.is_none());
        assert!(extremality(&ThreeGraph::empty(4), &int(0), SearchMode::Exact).is_err());
    }

    #[test]
    fn heuristic_never_beats_exact() {
        for seed in 0..5 {
            let g = gen_random_codegree(12, 2, 0.3, seed).unwrap();
            let exact = extremality(&g, &int(0), SearchMode::Exact).unwrap();
            let heur = extremality(&g, &int(0), SearchMode::Heuristic { seed, restarts: 5 }).unwrap();
            assert!(exact.min_density_found <= heur.min_density_found);
        }
    }

    #[test]
    fn pair_classes() {
        let ext = gen_h_ext(10).unwrap();
        let s = &ext.b[..6];
        let classes = classify_pairs(&ext.graph, s, &ratio(1, 100)).unwrap();
        assert_eq!((classes.good.len(), classes.bad.len()), (15, 0));
        let k10 = gen_complete(10).unwrap();
        let classes = classify_pairs(&k10, &[0, 1, 2, 3, 4, 5], &ratio(1, 100)).unwrap();
        assert_eq!((classes.good.len(), classes.bad.len()), (0, 15));
        let classes = classify_pairs(&k10, &[0, 1, 2, 3, 4, 5], &int(1)).unwrap();
        assert!(classes.bad.is_empty());
    }

    #[test]
    fn pipeline_complete_graph() {
        let k10 = gen_complete(10).unwrap();
        let report = pipeline_quantities(&k10, &[0, 1, 2, 3, 4, 5], &ratio(1, 100), &default_pipeline_constant()).unwrap();
        assert_eq!(report.threshold, int(2));
        assert!(report.x.is_empty() && report.matching.is_empty() && report.matching_complete);
        assert_eq!(report.b, vec![6, 7, 8, 9]);
    }

    #[test]
    fn pipeline_h_ext() {
        let ext = gen_h_ext(10).unwrap();
        let s: Vec<Vertex> = ext.b[..6].to_vec();
        let report = pipeline_quantities(&ext.graph, &s, &ratio(1, 100), &default_pipeline_constant()).unwrap();
        // the seventh vertex of B meets S in no edge at all
        assert_eq!(report.x, vec![ext.b[6]]);
        assert_eq!(report.a, ext.b);
        assert!(!report.matching_complete);
        assert!(pipeline_quantities(&ext.graph, &s[..5], &ratio(1, 100), &default_pipeline_constant()).is_err());
    }

    #[test]
    fn pipeline_degenerate_constant() {
        let empty = ThreeGraph::empty(5);
        let report = pipeline_quantities(&empty, &[0, 1, 2], &int(0), &default_pipeline_constant()).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.x, vec![3, 4]);
    }

    #[test]
    fn replacement_step_grows_matching() {
        // S = {0..5}; X = {6, 7}. Edges: 0 1 6 and the pairs 23, 45 see only 0 and 1.
        let g = ThreeGraph::new(10, [[0, 1, 6], [2, 3, 0], [4, 5, 1]]).unwrap();
        let report = pipeline_quantities(&g, &[0, 1, 2, 3, 4, 5], &int(1), &default_pipeline_constant()).unwrap();
        assert!(report.x.contains(&6));
        assert!(report.replacements >= 1);
        assert_eq!(report.matching.len(), 2);
        for m in &report.matching {
            assert!(g.has_edge(m.edge[0], m.edge[1], m.edge[2]));
        }
    }

    #[test]
    fn linked_complete_seven() {
        let k7 = gen_complete(7).unwrap();
        let report = linked_count(&k7, 0, 1, 1, &LinkedOptions::default()).unwrap();
        assert_eq!(report.count, int(5));
        assert!(report.exact);
        let empty = linked_count(&ThreeGraph::empty(7), 0, 1, 1, &LinkedOptions::default()).unwrap();
        assert_eq!(empty.count, int(0));
        assert!(linked_count(&k7, 2, 2, 1, &LinkedOptions::default()).is_err());
    }

    #[test]
    fn linked_r2_complete() {
        // every 10-set of K11 splits into two 5-sets
        let k11 = gen_complete(11).unwrap();
        let report = linked_count(&k11, 0, 1, 2, &LinkedOptions::default()).unwrap();
        assert_eq!(report.count, int(1));
    }

    #[test]
    fn linked_sampled() {
        let k16 = gen_complete(16).unwrap();
        let opts = LinkedOptions { samples: 3, seed: 4, eta: Some(ratio(1, 120)) };
        let report = linked_count(&k16, 0, 1, 3, &opts).unwrap();
        assert!(!report.exact);
        assert_eq!(report.hits, 3);
        assert_eq!(report.candidates, "1");
        assert_eq!(report.linked, Some(true));
    }
}
