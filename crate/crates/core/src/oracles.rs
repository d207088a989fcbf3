//! Deliberately naive reference implementations. None of these share
//! enumeration code with the solvers they check.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;

use crate::hypergraph::{ThreeGraph, Vertex};
use crate::rational::Rational;
use crate::simplex::{LinearProgram, LpResult};

fn is_t(graph: &ThreeGraph, [a, b, c, d, e]: [Vertex; 5]) -> bool {
    graph.has_edge(a, b, c) && graph.has_edge(a, b, d) && graph.has_edge(c, d, e)
}

/// Injective maps `{a,b,c,d,e} → V(H)` sending the three edges of T to edges.
pub fn labeled_embeddings(graph: &ThreeGraph) -> u64 {
    let n = graph.n();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        let t = [a, b, c, d, e];
                        let distinct = (0..5).all(|i| (i + 1..5).all(|j| t[i] != t[j]));
                        if distinct && is_t(graph, t) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Tries all 120 orderings of a 5-set as `(a, b, c, d, e)`.
pub fn naive_supports(graph: &ThreeGraph, set: &[Vertex]) -> bool {
    permutations(set).into_iter().any(|p| is_t(graph, [p[0], p[1], p[2], p[3], p[4]]))
}

fn subsets(pool: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    if k == 0 {
        return vec![vec![]];
    }
    if pool.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<Vertex>> = subsets(&pool[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, pool[0]);
            s
        })
        .collect();
    with.extend(subsets(&pool[1..], k));
    with
}

fn tile_rest(graph: &ThreeGraph, free: &[Vertex]) -> bool {
    let Some((&first, rest)) = free.split_first() else {
        return true;
    };
    subsets(rest, 4).into_iter().any(|four| {
        let mut set = four.clone();
        set.push(first);
        naive_supports(graph, &set) && {
            let remaining: Vec<Vertex> = rest.iter().copied().filter(|v| !four.contains(v)).collect();
            tile_rest(graph, &remaining)
        }
    })
}

/// Whether the vertex set splits into disjoint 5-sets that each support T.
pub fn brute_force_perfect_tiling(graph: &ThreeGraph) -> bool {
    let all: Vec<Vertex> = (0..graph.n()).collect();
    all.len().is_multiple_of(5) && tile_rest(graph, &all)
}

fn pack_rest(graph: &ThreeGraph, free: &[Vertex]) -> usize {
    if free.len() < 5 {
        return 0;
    }
    let (&first, rest) = free.split_first().expect("non-empty");
    let mut best = pack_rest(graph, rest);
    for four in subsets(rest, 4) {
        let mut set = four.clone();
        set.push(first);
        if naive_supports(graph, &set) {
            let remaining: Vec<Vertex> = rest.iter().copied().filter(|v| !four.contains(v)).collect();
            best = best.max(1 + pack_rest(graph, &remaining));
        }
    }
    best
}

/// Largest number of disjoint 5-sets that each support T.
pub fn brute_force_max_tiling(graph: &ThreeGraph) -> usize {
    let all: Vec<Vertex> = (0..graph.n()).collect();
    pack_rest(graph, &all)
}

/// 4-sets `S` avoiding `u, v` with both `S + u` and `S + v` supporting T.
pub fn naive_linked_count(graph: &ThreeGraph, u: Vertex, v: Vertex) -> u64 {
    let pool: Vec<Vertex> = (0..graph.n()).filter(|&w| w != u && w != v).collect();
    let mut count = 0;
    for s in subsets(&pool, 4) {
        let mut su = s.clone();
        su.push(u);
        let mut sv = s;
        sv.push(v);
        if naive_supports(graph, &su) && naive_supports(graph, &sv) {
            count += 1;
        }
    }
    count
}

/// Searches integer combinations of `generators` with every coefficient
/// in `-bound..=bound` for one equal to `target`.
pub fn brute_force_lattice_member(generators: &[Vec<i64>], target: &[i64], bound: i64) -> bool {
    fn go(generators: &[Vec<i64>], rest: &mut Vec<i64>, bound: i64) -> bool {
        let Some((g, others)) = generators.split_first() else {
            return rest.iter().all(|&x| x == 0);
        };
        for c in -bound..=bound {
            for (x, y) in rest.iter_mut().zip(g) {
                *x -= c * y;
            }
            let hit = go(others, rest, bound);
            for (x, y) in rest.iter_mut().zip(g) {
                *x += c * y;
            }
            if hit {
                return true;
            }
        }
        false
    }
    go(generators, &mut target.to_vec(), bound)
}

/// Every lattice point reachable from the origin by `±generator` steps that
/// never leave the box `[-radius, radius]^dim`. By the Steinitz lemma a
/// member `t` is reached once `radius >= |t|_inf + dim * max |entry|`.
pub fn lattice_points_in_box(dim: usize, generators: &[Vec<i64>], radius: i64) -> HashSet<Vec<i64>> {
    let mut seen = HashSet::from([vec![0; dim]]);
    let mut queue = VecDeque::from([vec![0; dim]]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            for sign in [1, -1] {
                let q: Vec<i64> = p.iter().zip(g).map(|(x, y)| x + sign * y).collect();
                if q.iter().all(|x| x.abs() <= radius) && seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    seen
}

/// Smallest edge count of an induced subgraph on `⌊3n/5⌋` vertices, by
/// scanning every subset.
pub fn brute_force_min_edges(graph: &ThreeGraph) -> usize {
    let all: Vec<Vertex> = (0..graph.n()).collect();
    subsets(&all, 3 * graph.n() / 5)
        .iter()
        .map(|s| graph.edges_within(s))
        .min()
        .unwrap_or(0)
}

/// The pair-weight minimax with one column per labelled copy found by
/// [`labeled_embeddings`]-style search, rather than per supporting 5-set.
/// `None` when no perfect fractional tiling exists.
pub fn min_pair_weight_over_copies(graph: &ThreeGraph) -> Option<Rational> {
    let n = graph.n();
    let mut pair_row = vec![vec![usize::MAX; n]; n];
    let mut next = n;
    for u in 0..n {
        for v in u + 1..n {
            pair_row[u][v] = next;
            pair_row[v][u] = next;
            next += 1;
        }
    }
    let mut lp = LinearProgram::new(next);
    for row in lp.rhs.iter_mut().take(n) {
        *row = 1;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    for e in 0..n {
                        let t = [a, b, c, d, e];
                        let distinct = (0..5).all(|i| (i + 1..5).all(|j| t[i] != t[j]));
                        if !distinct || !is_t(graph, t) {
                            continue;
                        }
                        let mut column: Vec<(usize, i64)> = t.iter().map(|&x| (x, 1)).collect();
                        for i in 0..5 {
                            for j in i + 1..5 {
                                column.push((pair_row[t[i]][t[j]], 1));
                            }
                        }
                        lp.add_column(column, 0);
                    }
                }
            }
        }
    }
    lp.add_column((n..next).map(|r| (r, -1)).collect(), 1);
    for r in n..next {
        lp.add_column(vec![(r, 1)], 0);
    }
    match lp.solve() {
        LpResult::Optimal { objective, .. } => Some(objective),
        LpResult::Infeasible { .. } => None,
        LpResult::Unbounded => unreachable!("pair loads bound W below"),
    }
}

/// `C(n, k)` as a plain integer, by Pascal's rule.
pub fn pascal(n: u64, k: u64) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1)];
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}
