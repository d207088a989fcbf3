//! Copies of the generalised triangle T (edges `abc`, `abd`, `cde`).
//!
//! A copy is stored with its role assignment in canonical form `a < b`,
//! `c < d`, which quotients out the automorphism group of T (swap `a`/`b`,
//! swap `c`/`d`; order 4).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypergraph::{ThreeGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[Vertex; 5]", try_from = "[Vertex; 5]")]
pub struct TCopy {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
    pub e: Vertex,
}

impl From<TCopy> for [Vertex; 5] {
    fn from(t: TCopy) -> Self {
        t.roles()
    }
}

impl TryFrom<[Vertex; 5]> for TCopy {
    type Error = String;

    fn try_from(r: [Vertex; 5]) -> std::result::Result<Self, Self::Error> {
        TCopy::canonical(r[0], r[1], r[2], r[3], r[4])
            .ok_or_else(|| format!("{r:?} is not five distinct vertices"))
    }
}

impl fmt::Display for TCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {}", self.a, self.b, self.c, self.d, self.e)
    }
}

impl TCopy {
    /// Canonicalises an arbitrary role assignment; `None` if vertices repeat.
    pub fn canonical(a: Vertex, b: Vertex, c: Vertex, d: Vertex, e: Vertex) -> Option<TCopy> {
        let mut all = [a, b, c, d, e];
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(TCopy { a: a.min(b), b: a.max(b), c: c.min(d), d: c.max(d), e })
    }

    pub fn roles(&self) -> [Vertex; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    /// The three role-edges `abc`, `abd`, `cde`, each as a sorted triple.
    pub fn edges(&self) -> [[Vertex; 3]; 3] {
        let sorted = |mut t: [Vertex; 3]| {
            t.sort_unstable();
            t
        };
        [
            sorted([self.a, self.b, self.c]),
            sorted([self.a, self.b, self.d]),
            sorted([self.c, self.d, self.e]),
        ]
    }

    /// Vertex set in increasing order.
    pub fn vertex_set(&self) -> [Vertex; 5] {
        let mut v = self.roles();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.roles().contains(&v)
    }

    pub fn mask(&self) -> u128 {
        self.roles().iter().fold(0u128, |m, &v| m | 1 << v)
    }

    pub fn is_in(&self, graph: &ThreeGraph) -> bool {
        self.edges().iter().all(|e| graph.has_edge(e[0], e[1], e[2]))
    }
}

/// All copies of T in `graph`, canonical and in lexicographic order.
///
/// Each canonical copy is discovered exactly once: the edge `abc` fixes the
/// triple, the choice of `c` fixes the pair `ab`, and `d` ranges over
/// `N(ab)` above `c`.
pub fn enumerate_copies(graph: &ThreeGraph) -> Vec<TCopy> {
    let mut out = Vec::new();
    for &[x, y, z] in graph.edges() {
        for (a, b, c) in [(x, y, z), (x, z, y), (y, z, x)] {
            for d in graph.neighbours_unchecked(a, b) {
                if d <= c {
                    continue;
                }
                for e in graph.neighbours_unchecked(c, d) {
                    if e != a && e != b {
                        out.push(TCopy { a, b, c, d, e });
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn count_copies(graph: &ThreeGraph) -> usize {
    enumerate_copies(graph).len()
}

/// `T_u(H)`: copies containing `u`.
pub fn copies_through(graph: &ThreeGraph, u: Vertex) -> Result<Vec<TCopy>> {
    if u >= graph.n() {
        return invalid(format!("vertex {u} outside 0..{}", graph.n()));
    }
    Ok(enumerate_copies(graph).into_iter().filter(|t| t.contains(u)).collect())
}

/// `T_uv(H)`: copies containing both `u` and `v`.
pub fn copies_through_pair(graph: &ThreeGraph, u: Vertex, v: Vertex) -> Result<Vec<TCopy>> {
    if u >= graph.n() || v >= graph.n() || u == v {
        return invalid(format!("({u}, {v}) is not a pair of distinct vertices in 0..{}", graph.n()));
    }
    Ok(enumerate_copies(graph)
        .into_iter()
        .filter(|t| t.contains(u) && t.contains(v))
        .collect())
}

/// Canonical copies of T whose vertex set is exactly `set` (sorted, distinct).
pub fn copies_on(graph: &ThreeGraph, set: &[Vertex; 5]) -> Vec<TCopy> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let rest: Vec<Vertex> = (0..5).filter(|&k| k != i && k != j).map(|k| set[k]).collect();
            let (a, b) = (set[i], set[j]);
            for skip in 0..3 {
                let e = rest[skip];
                let cd: Vec<Vertex> = (0..3).filter(|&k| k != skip).map(|k| rest[k]).collect();
                let t = TCopy { a, b, c: cd[0], d: cd[1], e };
                if t.is_in(graph) {
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// True iff `H[S]` contains a copy of T.
pub fn supports_t(graph: &ThreeGraph, set: &[Vertex]) -> Result<bool> {
    let set: [Vertex; 5] = match set.try_into() {
        Ok(s) => s,
        Err(_) => return invalid(format!("supports_t needs exactly 5 vertices, got {}", set.len())),
    };
    let mut sorted = set;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[4] >= graph.n() {
        return invalid(format!("{set:?} is not five distinct vertices in range"));
    }
    Ok(!copies_on(graph, &sorted).is_empty())
}

/// Distinct vertex sets of all copies, sorted, each with its lexicographically
/// first copy as witness.
pub fn supporting_sets(graph: &ThreeGraph) -> Vec<([Vertex; 5], TCopy)> {
    let mut sets: Vec<([Vertex; 5], TCopy)> =
        enumerate_copies(graph).into_iter().map(|t| (t.vertex_set(), t)).collect();
    sets.sort_unstable();
    sets.dedup_by(|x, y| x.0 == y.0);
    sets
}

/// One copy per line, `a b c d e`.
pub fn copies_to_text(copies: &[TCopy]) -> String {
    copies.iter().map(|t| format!("{t}\n")).collect()
}
