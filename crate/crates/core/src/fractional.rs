//! Fractional T-tilings: exact feasibility with Farkas certificates, the
//! pair-weight minimax, and the domination utilities used to refute
//! certificates on near-extremal hosts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::copies::{supporting_sets, TCopy};
use crate::error::{invalid, Result};
use crate::hypergraph::{AvoidanceGraph, ThreeGraph, Vertex};
use crate::rational::{parse_rational, serialize_pq, serialize_pq_vec, deserialize_pq_vec, to_pq, Rational};
use crate::simplex::{LinearProgram, LpResult};

/// Nonnegative weights on copies of T. Only positive weights are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FractionalTiling {
    weights: BTreeMap<TCopy, Rational>,
}

impl Serialize for FractionalTiling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.weights.iter().map(|(t, w)| (t.to_string(), to_pq(w))))
    }
}

impl<'de> Deserialize<'de> for FractionalTiling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut weights = BTreeMap::new();
        for (key, value) in raw {
            let roles: Vec<Vertex> = key
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| D::Error::custom(format!("bad copy key {key:?}")))?;
            let roles: [Vertex; 5] =
                roles.try_into().map_err(|_| D::Error::custom(format!("copy key {key:?} needs 5 vertices")))?;
            let copy = TCopy::try_from(roles).map_err(D::Error::custom)?;
            let weight = parse_rational(&value).ok_or_else(|| D::Error::custom(format!("bad weight {value:?}")))?;
            if weight.is_negative() {
                return Err(D::Error::custom(format!("negative weight on {key}")));
            }
            if !weight.is_zero() {
                *weights.entry(copy).or_insert_with(Rational::zero) += weight;
            }
        }
        Ok(FractionalTiling { weights })
    }
}

impl FractionalTiling {
    pub fn new(weights: impl IntoIterator<Item = (TCopy, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (copy, w) in weights {
            if w.is_negative() {
                return invalid(format!("negative weight on copy {copy}"));
            }
            if !w.is_zero() {
                *map.entry(copy).or_insert_with(Rational::zero) += w;
            }
        }
        Ok(FractionalTiling { weights: map })
    }

    pub fn weights(&self) -> &BTreeMap<TCopy, Rational> {
        &self.weights
    }

    pub fn weight(&self, copy: &TCopy) -> Rational {
        self.weights.get(copy).cloned().unwrap_or_else(Rational::zero)
    }

    /// `w(u)`.
    pub fn vertex_load(&self, u: Vertex) -> Rational {
        self.weights.iter().filter(|(t, _)| t.contains(u)).map(|(_, w)| w).sum()
    }

    /// `w(uv)`.
    pub fn pair_load(&self, u: Vertex, v: Vertex) -> Rational {
        self.weights
            .iter()
            .filter(|(t, _)| t.contains(u) && t.contains(v))
            .map(|(_, w)| w)
            .sum()
    }

    pub fn vertex_loads(&self, n: usize) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); n];
        for (t, w) in &self.weights {
            for v in t.roles() {
                loads[v] += w;
            }
        }
        loads
    }

    /// Pair loads as an `n × n` symmetric table with zero diagonal.
    pub fn pair_loads(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut loads = vec![vec![Rational::zero(); n]; n];
        for (t, w) in &self.weights {
            let vs = t.roles();
            for &x in &vs {
                for &y in &vs {
                    if x != y {
                        loads[x][y] += w;
                    }
                }
            }
        }
        loads
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    /// `ψ(w)`: the largest pair load (0 when `n < 2`).
    pub fn psi(&self, n: usize) -> Rational {
        let loads = self.pair_loads(n);
        let mut best = Rational::zero();
        for (u, row) in loads.iter().enumerate() {
            for value in &row[u + 1..] {
                if *value > best {
                    best = value.clone();
                }
            }
        }
        best
    }

    /// True iff every weighted copy lies in `graph` and avoids `avoid`, and
    /// every vertex load is exactly 1.
    pub fn is_perfect_in(&self, graph: &ThreeGraph, avoid: &AvoidanceGraph) -> bool {
        let n = graph.n();
        self.weights
            .keys()
            .all(|t| t.roles().iter().all(|&v| v < n) && t.is_in(graph) && avoid.avoids(&t.roles()))
            && self.vertex_loads(n).iter().all(|l| l.is_one())
    }
}

/// Farkas vector `a` with `a·1_{V(T')} >= 0` for every admissible copy and `a·1 < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde(serialize_with = "serialize_pq_vec", deserialize_with = "deserialize_pq_vec")]
    pub a: Vec<Rational>,
    pub avoiding: Vec<(Vertex, Vertex)>,
    #[serde(default)]
    pub verified: bool,
}

impl FarkasCertificate {
    pub fn total(&self) -> Rational {
        self.a.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum FracOutcome {
    Feasible(FractionalTiling),
    Certificate(FarkasCertificate),
}

impl FracOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FracOutcome::Feasible(_))
    }

    pub fn certificate(&self) -> Option<&FarkasCertificate> {
        match self {
            FracOutcome::Certificate(c) => Some(c),
            FracOutcome::Feasible(_) => None,
        }
    }

    pub fn tiling(&self) -> Option<&FractionalTiling> {
        match self {
            FracOutcome::Feasible(w) => Some(w),
            FracOutcome::Certificate(_) => None,
        }
    }
}

fn check_avoidance(graph: &ThreeGraph, avoid: &AvoidanceGraph) -> Result<()> {
    if avoid.n() != graph.n() {
        return invalid(format!("avoidance graph has {} vertices, host has {}", avoid.n(), graph.n()));
    }
    Ok(())
}

/// Distinct vertex sets of `B`-avoiding copies, each with a witness copy.
fn admissible_sets(graph: &ThreeGraph, avoid: &AvoidanceGraph) -> Vec<([Vertex; 5], TCopy)> {
    supporting_sets(graph).into_iter().filter(|(s, _)| avoid.avoids(s)).collect()
}

fn dot_set(a: &[Rational], set: &[Vertex]) -> Rational {
    set.iter().map(|&v| &a[v]).sum()
}

/// Checks both Farkas conditions over the `B`-avoiding copies of `graph`.
pub fn verify_certificate(graph: &ThreeGraph, avoid: &AvoidanceGraph, cert: &FarkasCertificate) -> Result<bool> {
    check_avoidance(graph, avoid)?;
    if cert.a.len() != graph.n() {
        return invalid(format!("certificate has dimension {}, expected {}", cert.a.len(), graph.n()));
    }
    if !cert.total().is_negative() {
        return Ok(false);
    }
    Ok(admissible_sets(graph, avoid).iter().all(|(s, _)| !dot_set(&cert.a, s).is_negative()))
}

/// Decides whether `graph` has a perfect `avoid`-avoiding fractional tiling.
/// Weights are placed on one witness copy per supporting 5-set, since only the
/// vertex set of a copy enters the constraints.
pub fn frac_perfect(graph: &ThreeGraph, avoid: &AvoidanceGraph) -> Result<FracOutcome> {
    check_avoidance(graph, avoid)?;
    let n = graph.n();
    let sets = admissible_sets(graph, avoid);
    let mut lp = LinearProgram::new(n);
    lp.rhs = vec![1; n];
    for (s, _) in &sets {
        lp.add_column(s.iter().map(|&v| (v, 1)).collect(), 0);
    }
    let outcome = match lp.solve() {
        LpResult::Optimal { x, .. } => {
            let tiling = FractionalTiling::new(sets.iter().zip(x).map(|((_, t), w)| (*t, w)))?;
            assert!(tiling.is_perfect_in(graph, avoid), "simplex returned an imperfect tiling");
            FracOutcome::Feasible(tiling)
        }
        LpResult::Infeasible { farkas } => {
            let mut cert = FarkasCertificate {
                a: farkas.into_iter().map(|y| -y).collect(),
                avoiding: avoid.pairs().collect(),
                verified: false,
            };
            cert.verified = verify_certificate(graph, avoid, &cert)?;
            assert!(cert.verified, "simplex returned an invalid Farkas vector");
            FracOutcome::Certificate(cert)
        }
        LpResult::Unbounded => unreachable!("feasibility problem has zero objective"),
    };
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Minimax {
    Optimal {
        #[serde(serialize_with = "serialize_pq")]
        w: Rational,
        tiling: FractionalTiling,
    },
    Infeasible {
        certificate: FarkasCertificate,
    },
}

impl Minimax {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Minimax::Optimal { w, .. } => Some(w),
            Minimax::Infeasible { .. } => None,
        }
    }
}

fn pair_index(n: usize, u: Vertex, v: Vertex) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Builds `min W` subject to vertex loads 1 and `load(p) - W + s_p = 0` for
/// every pair `p`, with one column per supplied vertex set.
pub(crate) fn minimax_program(n: usize, sets: &[[Vertex; 5]]) -> (LinearProgram, usize) {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut lp = LinearProgram::new(n + pairs);
    for v in 0..n {
        lp.rhs[v] = 1;
    }
    for s in sets {
        let mut entries: Vec<(usize, i64)> = s.iter().map(|&v| (v, 1)).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                entries.push((n + pair_index(n, s[i], s[j]), 1));
            }
        }
        lp.add_column(entries, 0);
    }
    let w_column = lp.add_column((0..pairs).map(|p| (n + p, -1)).collect(), 1);
    for p in 0..pairs {
        lp.add_column(vec![(n + p, 1)], 0);
    }
    (lp, w_column)
}

/// Exact `W = min ψ(w)` over perfect fractional tilings, with an attaining `w`.
pub fn frac_min_pair_weight(graph: &ThreeGraph) -> Result<Minimax> {
    let n = graph.n();
    let sets = supporting_sets(graph);
    let vertex_sets: Vec<[Vertex; 5]> = sets.iter().map(|(s, _)| *s).collect();
    let (lp, w_column) = minimax_program(n, &vertex_sets);
    match lp.solve() {
        LpResult::Optimal { x, objective } => {
            debug_assert_eq!(x[w_column], objective);
            let tiling = FractionalTiling::new(sets.iter().zip(x).map(|((_, t), w)| (*t, w)))?;
            assert!(tiling.is_perfect_in(graph, &AvoidanceGraph::empty(n)));
            assert_eq!(tiling.psi(n), objective, "minimax value disagrees with the returned tiling");
            Ok(Minimax::Optimal { w: objective, tiling })
        }
        LpResult::Infeasible { .. } => {
            let FracOutcome::Certificate(certificate) = frac_perfect(graph, &AvoidanceGraph::empty(n))? else {
                unreachable!("minimax infeasible but vertex system feasible");
            };
            Ok(Minimax::Infeasible { certificate })
        }
        LpResult::Unbounded => unreachable!("W is bounded below by every pair load"),
    }
}

/// `w'' = (1 - μ) w + μ w'`.
pub fn blend(w: &FractionalTiling, other: &FractionalTiling, mu: &Rational) -> Result<FractionalTiling> {
    if mu.is_negative() || *mu > Rational::one() {
        return invalid(format!("blend parameter {} outside [0, 1]", to_pq(mu)));
    }
    let keep = Rational::one() - mu;
    let mixed = w
        .weights
        .iter()
        .map(|(t, x)| (*t, x * &keep))
        .chain(other.weights.iter().map(|(t, x)| (*t, x * mu)));
    FractionalTiling::new(mixed)
}

fn sorted_five(set: &[Vertex]) -> Result<[Vertex; 5]> {
    let mut s: [Vertex; 5] = match set.try_into() {
        Ok(s) => s,
        Err(_) => return invalid(format!("expected a 5-set, got {} vertices", set.len())),
    };
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return invalid(format!("{set:?} repeats a vertex"));
    }
    Ok(s)
}

/// True iff the `i`-th smallest element of `lower` is at most the `i`-th
/// smallest of `upper` for every `i`.
pub fn dominates(upper: &[Vertex], lower: &[Vertex]) -> Result<bool> {
    if upper.len() != lower.len() {
        return invalid(format!("cannot compare sets of sizes {} and {}", upper.len(), lower.len()));
    }
    let mut u = upper.to_vec();
    let mut w = lower.to_vec();
    u.sort_unstable();
    w.sort_unstable();
    Ok(w.iter().zip(&u).all(|(x, y)| x <= y))
}

/// The three families of 5-sets that partition `0..n` for a given `βn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircasePartition {
    pub beta_n: usize,
    pub families: [Vec<[Vertex; 5]>; 3],
}

impl StaircasePartition {
    pub fn sizes(&self) -> [usize; 3] {
        [self.families[0].len(), self.families[1].len(), self.families[2].len()]
    }
}

/// Families `𝒱₁, 𝒱₂, 𝒱₃` on vertices `0..n` (vertex `v_i` is `i - 1`).
pub fn staircase_partition(n: usize, beta: &Rational) -> Result<StaircasePartition> {
    if !n.is_multiple_of(5) {
        return invalid(format!("5 must divide n (n = {n})"));
    }
    if beta.is_negative() {
        return invalid(format!("beta = {} must be nonnegative", to_pq(beta)));
    }
    let bn = beta * Rational::from_integer(BigInt::from(n));
    if !bn.is_integer() {
        return invalid(format!("beta*n = {} is not an integer", to_pq(&bn)));
    }
    let b: usize = bn.to_integer().try_into().map_err(|_| crate::Error::InvalidArgument("beta*n too large".into()))?;
    let fifth = n / 5;
    if 3 * b > fifth {
        return invalid(format!("n/5 - 3*beta*n = {fifth} - {} is negative", 3 * b));
    }
    let three_fifths = 3 * fifth;
    let f1 = (0..b)
        .map(|i| [i, b + i, three_fifths + b + i, three_fifths + 2 * b + i, three_fifths + 3 * b + i])
        .collect();
    let f2 = (0..2 * b)
        .map(|i| {
            [
                three_fifths - 7 * b + i,
                three_fifths - 5 * b + i,
                three_fifths - 3 * b + i,
                three_fifths - b + i,
                three_fifths + 4 * b + i,
            ]
        })
        .collect();
    let f3 = (0..fifth - 3 * b)
        .map(|i| [2 * b + i, fifth - b + i, 2 * fifth - 4 * b + i, three_fifths + 6 * b + i, 4 * fifth + 3 * b + i])
        .collect();
    let partition = StaircasePartition { beta_n: b, families: [f1, f2, f3] };
    let mut seen = vec![false; n];
    for set in partition.families.iter().flatten() {
        for &v in set {
            assert!(!seen[v], "staircase families overlap at {v}");
            seen[v] = true;
        }
    }
    assert!(seen.iter().all(|&s| s), "staircase families miss a vertex");
    Ok(partition)
}

/// Both sides of `a·1 = Σ_V a·1_V >= Σ_i |𝒱_i| a·1_{T_i}` for given inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    #[serde(serialize_with = "serialize_pq")]
    pub total: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub family_sum: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub lower_bound: Rational,
    #[serde(serialize_with = "serialize_pq_vec")]
    pub t_values: Vec<Rational>,
    /// `a·1 >= lower_bound`, which holds whenever the preconditions do.
    pub chain_holds: bool,
    /// `a·1 < 0` while every `a·1_{T_i} >= 0`: the impossible configuration.
    pub contradiction: bool,
    pub verdict: String,
}

/// Evaluates the domination chain for an ascending `a`, representative sets
/// `tops[i]` and families partitioning `0..a.len()`.
pub fn monotone_weighting_check(
    a: &[Rational],
    tops: &[[Vertex; 5]; 3],
    families: &[Vec<[Vertex; 5]>; 3],
) -> Result<MonotoneReport> {
    let n = a.len();
    if a.windows(2).any(|w| w[0] > w[1]) {
        return invalid("a is not sorted ascending");
    }
    let mut seen = vec![false; n];
    for set in families.iter().flatten() {
        let set = sorted_five(set)?;
        for v in set {
            if v >= n || seen[v] {
                return invalid(format!("families do not partition 0..{n} (vertex {v})"));
            }
            seen[v] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return invalid(format!("families do not cover 0..{n}"));
    }
    for (i, (top, family)) in tops.iter().zip(families).enumerate() {
        let top = sorted_five(top)?;
        if top.iter().any(|&v| v >= n) {
            return invalid(format!("T{} has a vertex outside 0..{n}", i + 1));
        }
        for member in family {
            if !dominates(member, &top)? {
                return invalid(format!("{member:?} in family {} does not dominate T{} = {top:?}", i + 1, i + 1));
            }
        }
    }
    let total: Rational = a.iter().sum();
    let family_sum: Rational = families.iter().flatten().map(|s| dot_set(a, s)).sum();
    let t_values: Vec<Rational> = tops.iter().map(|t| dot_set(a, t)).collect();
    let lower_bound: Rational = t_values
        .iter()
        .zip(families)
        .map(|(v, f)| v * Rational::from_integer(BigInt::from(f.len())))
        .sum();
    let chain_holds = family_sum == total && total >= lower_bound;
    let contradiction = total.is_negative() && t_values.iter().all(|v| !v.is_negative());
    let verdict = if contradiction {
        "contradiction: 0 > a·1 >= lower bound >= 0".to_string()
    } else if !total.is_negative() {
        "no contradiction, a·1 >= 0".to_string()
    } else {
        let failing: Vec<String> = t_values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(i, _)| format!("T{}", i + 1))
            .collect();
        format!("no contradiction, a·1 < 0 forces a negative value on {}", failing.join(", "))
    };
    Ok(MonotoneReport { total, family_sum, lower_bound, t_values, chain_holds, contradiction, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::enumerate_copies;
    use crate::generators::{gen_complete, gen_h_ext};
    use crate::rational::{int, ratio};

    fn hand_certificate(n: usize, a_side: &[Vertex]) -> FarkasCertificate {
        let mut a = vec![int(-2); n];
        for &v in a_side {
            a[v] = int(3);
        }
        FarkasCertificate { a, avoiding: vec![], verified: false }
    }

    #[test]
    fn complete_five_is_feasible() {
        let k5 = gen_complete(5).unwrap();
        let out = frac_perfect(&k5, &AvoidanceGraph::empty(5)).unwrap();
        let w = out.tiling().expect("feasible");
        assert_eq!(w.total(), int(1));
        let uniform = FractionalTiling::new(enumerate_copies(&k5).into_iter().map(|t| (t, ratio(1, 30)))).unwrap();
        assert!(uniform.is_perfect_in(&k5, &AvoidanceGraph::empty(5)));
    }

    #[test]
    fn h_ext_ten_has_certificate() {
        let ext = gen_h_ext(10).unwrap();
        let empty = AvoidanceGraph::empty(10);
        let out = frac_perfect(&ext.graph, &empty).unwrap();
        let cert = out.certificate().expect("infeasible");
        assert!(cert.verified);
        let hand = hand_certificate(10, &ext.a);
        assert_eq!(hand.total(), int(-5));
        assert!(verify_certificate(&ext.graph, &empty, &hand).unwrap());
    }

    #[test]
    fn avoided_pair_kills_t() {
        let t = ThreeGraph::new(5, [[0, 1, 2], [0, 1, 3], [2, 3, 4]]).unwrap();
        let avoid = AvoidanceGraph::new(5, [(0, 1)]).unwrap();
        let out = frac_perfect(&t, &avoid).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.avoiding, vec![(0, 1)]);
        assert!(frac_perfect(&t, &AvoidanceGraph::empty(5)).unwrap().is_feasible());
    }

    #[test]
    fn no_copies_yields_minus_ones() {
        let out = frac_perfect(&ThreeGraph::empty(6), &AvoidanceGraph::empty(6)).unwrap();
        assert_eq!(out.certificate().unwrap().a, vec![int(-1); 6]);
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let k5 = gen_complete(5).unwrap();
        let empty = AvoidanceGraph::empty(5);
        let cert = |a: Vec<Rational>| FarkasCertificate { a, avoiding: vec![], verified: false };
        assert!(!verify_certificate(&k5, &empty, &cert(vec![int(-1), int(0), int(0), int(0), int(0)])).unwrap());
        assert!(!verify_certificate(&k5, &empty, &cert(vec![int(0); 5])).unwrap());
        assert!(verify_certificate(&k5, &empty, &cert(vec![int(0); 4])).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let cert = FarkasCertificate { a: vec![int(3), ratio(-1, 2)], avoiding: vec![(0, 1)], verified: true };
        let text = serde_json::to_string(&cert).unwrap();
        assert_eq!(text, r#"{"a":["3/1","-1/2"],"avoiding":[[0,1]],"verified":true}"#);
        let back: FarkasCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn tiling_json_round_trip() {
        let w = FractionalTiling::new([(TCopy { a: 0, b: 1, c: 2, d: 3, e: 4 }, ratio(1, 2))]).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"0 1 2 3 4":"1/2"}"#);
        assert_eq!(serde_json::from_str::<FractionalTiling>(&text).unwrap(), w);
    }

    #[test]
    fn minimax_values() {
        let k5 = gen_complete(5).unwrap();
        assert_eq!(frac_min_pair_weight(&k5).unwrap().value(), Some(&int(1)));
        let ext = gen_h_ext(10).unwrap();
        assert!(matches!(frac_min_pair_weight(&ext.graph).unwrap(), Minimax::Infeasible { .. }));
        // Σ_v w(uv) = 4 forces W >= 4/(n-1); the uniform weighting attains it on K6.
        let k6 = gen_complete(6).unwrap();
        assert_eq!(frac_min_pair_weight(&k6).unwrap().value(), Some(&ratio(4, 5)));
    }

    #[test]
    fn domination_examples() {
        assert!(dominates(&[2, 4, 6, 8, 10], &[1, 3, 5, 7, 9]).unwrap());
        assert!(dominates(&[1, 3, 5, 7, 9], &[9, 7, 5, 3, 1]).unwrap());
        assert!(!dominates(&[1, 2, 3, 4, 5], &[1, 2, 3, 4, 6]).unwrap());
        assert!(dominates(&[1, 2], &[1, 2, 3]).is_err());
    }

    #[test]
    fn staircase_sizes() {
        let p = staircase_partition(100, &ratio(1, 20)).unwrap();
        assert_eq!(p.sizes(), [5, 10, 5]);
        assert_eq!(staircase_partition(50, &ratio(1, 25)).unwrap().sizes(), [2, 4, 4]);
        assert_eq!(staircase_partition(10, &int(0)).unwrap().sizes(), [0, 0, 2]);
        assert!(staircase_partition(50, &ratio(1, 100)).is_err());
        assert!(staircase_partition(52, &int(0)).is_err());
        assert!(staircase_partition(50, &ratio(1, 10)).is_err());
    }

    fn lowest_tops() -> [[Vertex; 5]; 3] {
        [[0, 1, 2, 3, 4]; 3]
    }

    #[test]
    fn monotone_check_all_ones() {
        let p = staircase_partition(50, &ratio(1, 25)).unwrap();
        let report = monotone_weighting_check(&vec![int(1); 50], &lowest_tops(), &p.families).unwrap();
        assert_eq!(report.total, int(50));
        assert!(report.chain_holds && !report.contradiction);
        assert_eq!(report.verdict, "no contradiction, a·1 >= 0");
    }

    #[test]
    fn monotone_check_negative_total() {
        let p = staircase_partition(50, &ratio(1, 25)).unwrap();
        let mut a = vec![int(1); 50];
        for x in a.iter_mut().take(30) {
            *x = int(-2);
        }
        let report = monotone_weighting_check(&a, &lowest_tops(), &p.families).unwrap();
        assert!(report.total.is_negative());
        assert!(report.chain_holds);
        assert!(!report.contradiction);
        assert!(report.t_values.iter().any(|v| v.is_negative()));
    }

    #[test]
    fn monotone_check_preconditions() {
        let p = staircase_partition(50, &ratio(1, 25)).unwrap();
        let mut a = vec![int(1); 50];
        a[0] = int(2);
        assert!(monotone_weighting_check(&a, &lowest_tops(), &p.families).is_err());
        let high = [[45, 46, 47, 48, 49]; 3];
        assert!(monotone_weighting_check(&vec![int(1); 50], &high, &p.families).is_err());
    }

    #[test]
    fn blend_keeps_perfection() {
        let k6 = gen_complete(6).unwrap();
        let empty = AvoidanceGraph::empty(6);
        let Minimax::Optimal { w, tiling } = frac_min_pair_weight(&k6).unwrap() else { panic!() };
        let other = frac_perfect(&k6, &empty).unwrap().tiling().unwrap().clone();
        let mixed = blend(&tiling, &other, &ratio(1, 3)).unwrap();
        assert!(mixed.is_perfect_in(&k6, &empty));
        assert!(mixed.psi(6) >= w);
        assert!(blend(&tiling, &other, &int(2)).is_err());
    }
}
