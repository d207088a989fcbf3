//! 3-graphs, auxiliary 5-graphs and the forbidden-pair graphs used by the
//! avoiding variants of the fractional problems.
//!
//! Vertices are dense integers `0..n`. A [`ThreeGraph`] keeps its edges as a
//! sorted list of sorted triples together with a neighbour bitset for every
//! ordered pair, so that `has_edge` and `codegree` are constant-time lookups.
//! The index is built eagerly in the constructor; the graph is immutable and
//! `Sync` afterwards.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::rational::{binomial, Rational};

pub type Vertex = usize;

#[derive(Clone, Debug)]
pub struct ThreeGraph {
    n: usize,
    edges: Vec<[Vertex; 3]>,
    words: usize,
    // `neighbours[(u * n + v) * words ..]` is the bitset N(uv); symmetric in u, v.
    neighbours: Vec<u64>,
}

impl PartialEq for ThreeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for ThreeGraph {}

/// The neighbourhood `N(uv)` of an unordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairNeighborhood {
    pub pair: (Vertex, Vertex),
    pub neighbors: Vec<Vertex>,
}

fn sort3(mut e: [Vertex; 3]) -> [Vertex; 3] {
    e.sort_unstable();
    e
}

impl ThreeGraph {
    /// Builds a graph from arbitrary-order triples. Duplicate triples collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [Vertex; 3]>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            let e = sort3(e);
            if e[2] >= n {
                return invalid(format!("edge {e:?} has a vertex outside 0..{n}"));
            }
            if e[0] == e[1] || e[1] == e[2] {
                return invalid(format!("edge {e:?} repeats a vertex"));
            }
            set.insert(e);
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<[Vertex; 3]>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut neighbours = vec![0u64; n * n * words];
        let mut mark = |x: Vertex, y: Vertex, z: Vertex| {
            let base = (x * n + y) * words;
            neighbours[base + z / 64] |= 1 << (z % 64);
        };
        for &[a, b, c] in &edges {
            mark(a, b, c);
            mark(b, a, c);
            mark(a, c, b);
            mark(c, a, b);
            mark(b, c, a);
            mark(c, b, a);
        }
        ThreeGraph { n, edges, words, neighbours }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted triples in lexicographic order.
    pub fn edges(&self) -> &[[Vertex; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn bits(&self, u: Vertex, v: Vertex) -> &[u64] {
        let base = (u * self.n + v) * self.words;
        &self.neighbours[base..base + self.words]
    }

    /// Membership test; any vertex order, out-of-range or repeated vertices give `false`.
    pub fn has_edge(&self, u: Vertex, v: Vertex, w: Vertex) -> bool {
        if u >= self.n || v >= self.n || w >= self.n || u == v {
            return false;
        }
        self.bits(u, v)[w / 64] >> (w % 64) & 1 == 1
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!("pair ({u}, {v}) outside 0..{}", self.n));
        }
        if u == v {
            return invalid(format!("pair ({u}, {v}) is not two distinct vertices"));
        }
        Ok(())
    }

    /// Iterates `N(uv)` in increasing order without range checks.
    pub(crate) fn neighbours_unchecked(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.bits(u, v).iter().enumerate().flat_map(|(i, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn neighbourhood(&self, u: Vertex, v: Vertex) -> Result<PairNeighborhood> {
        self.check_pair(u, v)?;
        Ok(PairNeighborhood {
            pair: (u.min(v), u.max(v)),
            neighbors: self.neighbours_unchecked(u, v).collect(),
        })
    }

    /// Number of edges containing both `u` and `v`.
    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_pair(u, v)?;
        Ok(self.codegree_unchecked(u, v))
    }

    pub(crate) fn codegree_unchecked(&self, u: Vertex, v: Vertex) -> usize {
        self.bits(u, v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `δ(H)`: the minimum codegree over all unordered pairs.
    pub fn min_codegree(&self) -> Result<usize> {
        if self.n < 2 {
            return invalid(format!("minimum codegree needs at least 2 vertices, got {}", self.n));
        }
        let mut best = usize::MAX;
        for u in 0..self.n {
            for v in u + 1..self.n {
                best = best.min(self.codegree_unchecked(u, v));
            }
        }
        Ok(best)
    }

    /// `e(H) / C(n, 3)` as an exact rational.
    pub fn density(&self) -> Result<Rational> {
        if self.n < 3 {
            return invalid(format!("density needs at least 3 vertices, got {}", self.n));
        }
        Ok(Rational::new(
            BigInt::from(self.edges.len()),
            binomial(self.n as u64, 3),
        ))
    }

    /// Sub-graph induced by `subset`, relabelled `0..|subset|` in increasing
    /// original order. The returned map sends new labels to original ones.
    pub fn induced(&self, subset: &[Vertex]) -> Result<(ThreeGraph, Vec<Vertex>)> {
        let mut map: Vec<Vertex> = subset.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&bad) = map.iter().find(|&&v| v >= self.n) {
            return invalid(format!("vertex {bad} outside 0..{}", self.n));
        }
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&x| relabel[x] != usize::MAX))
            .map(|e| [relabel[e[0]], relabel[e[1]], relabel[e[2]]])
            .collect();
        Ok((ThreeGraph::from_sorted(map.len(), edges), map))
    }

    /// Number of edges lying entirely inside `subset` (no relabelling).
    pub fn edges_within(&self, subset: &[Vertex]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in subset {
            inside[v] = true;
        }
        self.edges.iter().filter(|e| e.iter().all(|&x| inside[x])).count()
    }

    /// Edge-set union on a common vertex set.
    pub fn union(&self, other: &ThreeGraph) -> Result<ThreeGraph> {
        if self.n != other.n {
            return invalid(format!("vertex counts differ: {} vs {}", self.n, other.n));
        }
        let set: BTreeSet<[Vertex; 3]> = self.edges.iter().chain(other.edges.iter()).copied().collect();
        Ok(ThreeGraph::from_sorted(self.n, set.into_iter().collect()))
    }

    /// Five-fold augmented blow-up. Vertex `u` becomes `5u..5u+5`. A triple of
    /// blown-up vertices is an edge when two of its vertices come from the same
    /// original vertex, or when its three classes form an edge of `self`.
    ///
    /// The returned pair graph holds every within-class pair together with all
    /// cross pairs `u_i v_j` for `uv` in `forbidden`.
    pub fn blow_up(&self, factor: usize, forbidden: Option<&AvoidanceGraph>) -> Result<(ThreeGraph, AvoidanceGraph)> {
        if factor != 5 {
            return Err(Error::Unsupported(format!("blow-up factor {factor}; only 5 is supported")));
        }
        if let Some(b) = forbidden {
            if b.n() != self.n {
                return invalid(format!("forbidden-pair graph has {} vertices, expected {}", b.n(), self.n));
            }
        }
        let big = 5 * self.n;
        let mut edges = Vec::new();
        for x in 0..big {
            for y in x + 1..big {
                for z in y + 1..big {
                    let (cx, cy, cz) = (x / 5, y / 5, z / 5);
                    if cx == cy || cy == cz || cx == cz || self.has_edge(cx, cy, cz) {
                        edges.push([x, y, z]);
                    }
                }
            }
        }
        let mut pairs = Vec::new();
        for x in 0..big {
            for y in x + 1..big {
                let (cx, cy) = (x / 5, y / 5);
                if cx == cy || forbidden.is_some_and(|b| b.contains(cx, cy)) {
                    pairs.push((x, y));
                }
            }
        }
        Ok((ThreeGraph::from_sorted(big, edges), AvoidanceGraph::new(big, pairs)?))
    }

    /// Text form: `n` on the first line then one `i j k` line per edge.
    /// `comments` are emitted as leading `#` lines.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.n);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e[0], e[1], e[2]);
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let fields = parse_fields(line, lineno)?;
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(parse_err(lineno, "expected the vertex count"));
                    }
                    n = Some(fields[0]);
                }
                Some(n) => {
                    let e: [Vertex; 3] = fields
                        .as_slice()
                        .try_into()
                        .map_err(|_| parse_err(lineno, "expected three vertex indices"))?;
                    if !(e[0] < e[1] && e[1] < e[2] && e[2] < n) {
                        return Err(parse_err(lineno, "indices must satisfy 0 <= i < j < k < n"));
                    }
                    edges.push(e);
                }
            }
        }
        let n = n.ok_or_else(|| parse_err(0, "missing vertex count"))?;
        ThreeGraph::new(n, edges)
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_string() }
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, &format!("not a vertex index: {t:?}"))))
        .collect()
}

/// A graph `B` of forbidden vertex pairs. A copy of T is `B`-avoiding when no
/// pair of `B` lies inside its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceGraph {
    n: usize,
    pairs: BTreeSet<(Vertex, Vertex)>,
    adjacency: Vec<bool>,
}

impl AvoidanceGraph {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adjacency = vec![false; n * n];
        for (u, v) in pairs {
            if u >= n || v >= n || u == v {
                return invalid(format!("forbidden pair ({u}, {v}) is not two distinct vertices in 0..{n}"));
            }
            set.insert((u.min(v), u.max(v)));
            adjacency[u * n + v] = true;
            adjacency[v * n + u] = true;
        }
        Ok(AvoidanceGraph { n, pairs: set, adjacency })
    }

    pub fn empty(n: usize) -> Self {
        AvoidanceGraph { n, pairs: BTreeSet::new(), adjacency: vec![false; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u * self.n + v]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        (0..self.n).filter(|&v| self.contains(u, v)).count()
    }

    /// `Δ(B)`.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// True when no forbidden pair lies inside `vertices`.
    pub fn avoids(&self, vertices: &[Vertex]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &x)| vertices[i + 1..].iter().all(|&y| !self.contains(x, y)))
    }
}

/// Bipartition `(A, B)` of a [`FiveGraph`]; every edge meets `A` in 3 vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveGraph {
    n: usize,
    edges: Vec<[Vertex; 5]>,
    bipartition: Option<Bipartition>,
}

impl FiveGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = [Vertex; 5]>,
        bipartition: Option<Bipartition>,
    ) -> Result<Self> {
        let bipartition = match bipartition {
            Some(Bipartition { mut a, mut b }) => {
                a.sort_unstable();
                b.sort_unstable();
                let mut seen = vec![false; n];
                for &v in a.iter().chain(b.iter()) {
                    if v >= n {
                        return invalid(format!("bipartition vertex {v} outside 0..{n}"));
                    }
                    if seen[v] {
                        return invalid(format!("vertex {v} appears twice in the bipartition"));
                    }
                    seen[v] = true;
                }
                if seen.iter().any(|s| !s) {
                    return invalid("bipartition does not cover every vertex");
                }
                Some(Bipartition { a, b })
            }
            None => None,
        };
        let in_a: Vec<bool> = match &bipartition {
            Some(p) => {
                let mut mask = vec![false; n];
                for &v in &p.a {
                    mask[v] = true;
                }
                mask
            }
            None => Vec::new(),
        };
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e[4] >= n {
                return invalid(format!("edge {e:?} has a vertex outside 0..{n}"));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("edge {e:?} repeats a vertex"));
            }
            if bipartition.is_some() && e.iter().filter(|&&v| in_a[v]).count() != 3 {
                return invalid(format!("edge {e:?} does not have exactly 3 vertices in A"));
            }
            set.insert(e);
        }
        Ok(FiveGraph { n, edges: set.into_iter().collect(), bipartition })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[Vertex; 5]] {
        &self.edges
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.n);
        if let Some(p) = &self.bipartition {
            let a: Vec<String> = p.a.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "A: {}", a.join(" "));
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {} {} {}", e[0], e[1], e[2], e[3], e[4]);
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut a: Option<Vec<usize>> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("A:") {
                if a.is_some() {
                    return Err(parse_err(lineno, "duplicate bipartition header"));
                }
                a = Some(parse_fields(rest, lineno)?);
                continue;
            }
            let fields = parse_fields(line, lineno)?;
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(parse_err(lineno, "expected the vertex count"));
                    }
                    n = Some(fields[0]);
                }
                Some(n) => {
                    let e: [Vertex; 5] = fields
                        .as_slice()
                        .try_into()
                        .map_err(|_| parse_err(lineno, "expected five vertex indices"))?;
                    if !(e.windows(2).all(|w| w[0] < w[1]) && e[4] < n) {
                        return Err(parse_err(lineno, "indices must be strictly increasing and below n"));
                    }
                    edges.push(e);
                }
            }
        }
        let n = n.ok_or_else(|| parse_err(0, "missing vertex count"))?;
        let bipartition = a.map(|a| {
            let mut in_a = vec![false; n];
            for &v in &a {
                if v < n {
                    in_a[v] = true;
                }
            }
            let b = (0..n).filter(|&v| !in_a[v]).collect();
            Bipartition { a, b }
        });
        FiveGraph::new(n, edges, bipartition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_h_ext, gen_tripartite};
    use crate::rational::{int, ratio};

    fn t_graph() -> ThreeGraph {
        // a=0 b=1 c=2 d=3 e=4
        ThreeGraph::new(5, [[0, 1, 2], [0, 1, 3], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(gen_complete(7).unwrap().codegree(2, 5).unwrap(), 5);
        let ext = gen_h_ext(10).unwrap();
        let (u, v) = (ext.b[0], ext.b[1]);
        assert_eq!(ext.graph.codegree(u, v).unwrap(), 3);
        assert_eq!(ThreeGraph::empty(6).codegree(0, 1).unwrap(), 0);
    }

    #[test]
    fn codegree_rejects_bad_pairs() {
        let h = gen_complete(5).unwrap();
        assert!(matches!(h.codegree(1, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(h.codegree(0, 5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn min_codegree_examples() {
        assert_eq!(gen_h_ext(10).unwrap().graph.min_codegree().unwrap(), 3);
        assert_eq!(gen_complete(5).unwrap().min_codegree().unwrap(), 3);
        assert_eq!(gen_tripartite([3, 3, 3]).unwrap().min_codegree().unwrap(), 0);
        assert!(ThreeGraph::empty(1).min_codegree().is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(gen_complete(5).unwrap().density().unwrap(), int(1));
        assert_eq!(ThreeGraph::empty(10).density().unwrap(), int(0));
        assert_eq!(gen_tripartite([3, 3, 3]).unwrap().density().unwrap(), ratio(27, 84));
        assert!(ThreeGraph::empty(2).density().is_err());
    }

    #[test]
    fn induced_examples() {
        let ext = gen_h_ext(10).unwrap();
        let (sub, map) = ext.graph.induced(&ext.b).unwrap();
        assert_eq!(sub.n(), 7);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(map, ext.b);

        let (k5, _) = gen_complete(6).unwrap().induced(&[0, 2, 3, 4, 5]).unwrap();
        assert_eq!(k5, gen_complete(5).unwrap());

        let (single, map) = t_graph().induced(&[0, 1, 2]).unwrap();
        assert_eq!(single.edges(), &[[0, 1, 2]]);
        assert_eq!(map, vec![0, 1, 2]);

        assert!(t_graph().induced(&[0, 9]).is_err());
    }

    #[test]
    fn neighbourhood_matches_edges() {
        let h = t_graph();
        let nb = h.neighbourhood(1, 0).unwrap();
        assert_eq!(nb.pair, (0, 1));
        assert_eq!(nb.neighbors, vec![2, 3]);
        assert!(!nb.neighbors.contains(&0) && !nb.neighbors.contains(&1));
    }

    #[test]
    fn constructor_validates() {
        assert!(ThreeGraph::new(3, [[0, 1, 3]]).is_err());
        assert!(ThreeGraph::new(3, [[0, 1, 1]]).is_err());
        let h = ThreeGraph::new(4, [[2, 1, 0], [0, 1, 2]]).unwrap();
        assert_eq!(h.edges(), &[[0, 1, 2]]);
    }

    #[test]
    fn blow_up_of_t_has_25_vertices() {
        let (big, pairs) = t_graph().blow_up(5, None).unwrap();
        assert_eq!(big.n(), 25);
        // only within-class pairs are forbidden: 5 classes * C(5,2)
        assert_eq!(pairs.len(), 50);
        assert_eq!(pairs.max_degree(), 4);
        assert!(big.min_codegree().unwrap() >= 5 * t_graph().min_codegree().unwrap());
    }

    #[test]
    fn blow_up_of_empty_pair_counts_by_enumeration() {
        let (big, _) = ThreeGraph::empty(2).blow_up(5, None).unwrap();
        // Oracle: apply the membership rule to every 3-subset of the 10 vertices.
        let mut expected = 0;
        for x in 0..10 {
            for y in x + 1..10 {
                for z in y + 1..10 {
                    let classes = [x / 5, y / 5, z / 5];
                    let repeated = classes[0] == classes[1] || classes[1] == classes[2] || classes[0] == classes[2];
                    if repeated {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(expected, 120);
        assert_eq!(big.edge_count(), expected);
    }

    #[test]
    fn blow_up_rejects_other_factors_and_lifts_forbidden_pairs() {
        assert!(matches!(t_graph().blow_up(3, None), Err(Error::Unsupported(_))));
        let b = AvoidanceGraph::new(5, [(0, 1)]).unwrap();
        let (_, pairs) = t_graph().blow_up(5, Some(&b)).unwrap();
        assert_eq!(pairs.len(), 50 + 25);
        assert!(pairs.contains(0, 5) && pairs.contains(9, 4));
        assert_eq!(pairs.max_degree(), 5 * b.max_degree() + 4);
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let h = gen_h_ext(10).unwrap().graph;
        let text = h.to_text(&["kind=h_ext".to_string()]);
        assert!(text.starts_with("# kind=h_ext\n10\n"));
        assert_eq!(ThreeGraph::parse_text(&text).unwrap(), h);
        assert!(matches!(ThreeGraph::parse_text("5\n0 2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(ThreeGraph::parse_text("5\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(ThreeGraph::parse_text("# nothing\n").is_err());
    }

    #[test]
    fn five_graph_format_and_shape() {
        let part = Bipartition { a: vec![0, 1, 2], b: vec![3, 4] };
        let j = FiveGraph::new(5, [[4, 3, 2, 1, 0]], Some(part)).unwrap();
        let text = j.to_text(&[]);
        assert_eq!(text, "5\nA: 0 1 2\n0 1 2 3 4\n");
        assert_eq!(FiveGraph::parse_text(&text).unwrap(), j);
        let bad = Bipartition { a: vec![0, 1], b: vec![2, 3, 4] };
        assert!(FiveGraph::new(5, [[0, 1, 2, 3, 4]], Some(bad)).is_err());
        assert_eq!(j.degrees(), vec![1; 5]);
    }

    #[test]
    fn avoidance_graph_basics() {
        let b = AvoidanceGraph::new(6, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(b.max_degree(), 2);
        assert!(!b.avoids(&[0, 1, 4]));
        assert!(b.avoids(&[0, 2, 3]));
        assert!(AvoidanceGraph::new(3, [(1, 1)]).is_err());
    }
}
