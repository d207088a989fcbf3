//! Index vectors of 5-sets with respect to an ordered partition, abundant
//! vectors, and membership in the integer lattice they generate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::copies::enumerate_copies;
use crate::error::{invalid, Result};
use crate::hypergraph::{ThreeGraph, Vertex};
use crate::rational::{binomial, serialize_pq, Rational};

/// Ordered partition `V_1, ..., V_r` of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vertex>>", into = "Vec<Vec<Vertex>>")]
pub struct Partition {
    parts: Vec<Vec<Vertex>>,
    part_of: Vec<usize>,
}

impl TryFrom<Vec<Vec<Vertex>>> for Partition {
    type Error = crate::Error;

    fn try_from(parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = parts.iter().map(Vec::len).sum();
        Partition::new(n, parts)
    }
}

impl From<Partition> for Vec<Vec<Vertex>> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return invalid(format!("vertex {v} outside 0..{n}"));
                }
                if part_of[v] != usize::MAX {
                    return invalid(format!("vertex {v} lies in two parts"));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return invalid(format!("vertex {v} lies in no part"));
        }
        let parts = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        Ok(Partition { parts, part_of })
    }

    /// Parts `0..k`, `k..n`.
    pub fn split(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return invalid(format!("split point {k} exceeds n = {n}"));
        }
        Partition::new(n, vec![(0..k).collect(), (k..n).collect()])
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }
}

/// `i(S) = (|S ∩ V_1|, ..., |S ∩ V_r|)` for a 5-set `S`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    pub fn as_integers(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

pub fn index_vector(set: &[Vertex], partition: &Partition) -> Result<IndexVector> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.len() != 5 || sorted.windows(2).any(|w| w[0] == w[1]) {
        return invalid(format!("{set:?} is not a set of five distinct vertices"));
    }
    let mut counts = vec![0; partition.len()];
    for v in sorted {
        if v >= partition.n() {
            return invalid(format!("vertex {v} outside 0..{}", partition.n()));
        }
        counts[partition.part_of[v]] += 1;
    }
    Ok(IndexVector(counts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bucket {
    pub vector: IndexVector,
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbundanceReport {
    #[serde(serialize_with = "serialize_pq")]
    pub mu: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub threshold: Rational,
    /// Copy counts for every index vector that occurs, in vector order.
    pub buckets: Vec<Bucket>,
    /// `I^μ_P(H)`: vectors realised by at least `μ·C(n, 5)` copies.
    pub abundant: Vec<IndexVector>,
}

fn check_partition(graph: &ThreeGraph, partition: &Partition) -> Result<()> {
    if partition.n() != graph.n() {
        return invalid(format!("partition covers {} vertices, graph has {}", partition.n(), graph.n()));
    }
    Ok(())
}

/// Copies of T bucketed by the index vector of their vertex set.
pub fn index_buckets(graph: &ThreeGraph, partition: &Partition) -> Result<Vec<Bucket>> {
    check_partition(graph, partition)?;
    let mut counts: BTreeMap<IndexVector, usize> = BTreeMap::new();
    for copy in enumerate_copies(graph) {
        *counts.entry(index_vector(&copy.roles(), partition)?).or_default() += 1;
    }
    Ok(counts.into_iter().map(|(vector, copies)| Bucket { vector, copies }).collect())
}

pub fn abundant_vectors(graph: &ThreeGraph, partition: &Partition, mu: &Rational) -> Result<AbundanceReport> {
    if !mu.is_positive() || *mu > Rational::from_integer(1.into()) {
        return invalid("mu must lie in (0, 1]");
    }
    let buckets = index_buckets(graph, partition)?;
    let threshold = mu * Rational::from_integer(binomial(graph.n() as u64, 5));
    let abundant = buckets
        .iter()
        .filter(|b| Rational::from_integer(BigInt::from(b.copies)) >= threshold)
        .map(|b| b.vector.clone())
        .collect();
    Ok(AbundanceReport { mu: mu.clone(), threshold, buckets, abundant })
}

/// Additive subgroup of `Z^r` generated by a list of vectors, kept in row
/// echelon form for membership tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexLattice {
    dim: usize,
    generators: Vec<Vec<i64>>,
    #[serde(skip)]
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IndexLattice {
    /// Euclidean row reduction: in each column the row with the smallest
    /// nonzero absolute value reduces the others until it is the only one left.
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return invalid(format!("generator {g:?} does not have dimension {dim}"));
        }
        let mut rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut basis = Vec::new();
        for col in 0..dim {
            loop {
                let live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
                if live.len() <= 1 {
                    break;
                }
                let pivot = *live.iter().min_by_key(|&&i| rows[i][col].abs()).expect("non-empty");
                let p = rows[pivot].clone();
                for &i in &live {
                    if i == pivot {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&p[col]);
                    for (x, y) in rows[i].iter_mut().zip(&p) {
                        *x -= &q * y;
                    }
                }
            }
            if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
                let mut row = rows.swap_remove(i);
                if row[col].is_negative() {
                    for x in &mut row {
                        *x = -&*x;
                    }
                }
                basis.push((col, row));
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        Ok(IndexLattice { dim, generators, basis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Echelon rows with their pivot columns.
    pub fn basis(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|(_, r)| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, g: &[i64]) -> Result<bool> {
        if g.len() != self.dim {
            return invalid(format!("vector has dimension {}, lattice has {}", g.len(), self.dim));
        }
        let mut rest: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
        for (col, row) in &self.basis {
            let (q, r) = rest[*col].div_mod_floor(&row[*col]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }
}

pub fn lattice_membership(lattice: &IndexLattice, g: &[i64]) -> Result<bool> {
    lattice.contains(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transferral {
    pub i: IndexVector,
    pub i_prime: IndexVector,
    pub copies_i: usize,
    pub copies_i_prime: usize,
    #[serde(serialize_with = "serialize_pq")]
    pub threshold: Rational,
}

/// Index vectors `i`, `i'` with `i − i' = (1, −1)`, each realised by at least
/// `ψ·n⁵` copies. Among qualifying pairs the one with the larger smaller
/// count wins; remaining ties go to the smaller first coordinate.
pub fn transferral_witness(graph: &ThreeGraph, partition: &Partition, psi: &Rational) -> Result<Option<Transferral>> {
    if partition.len() != 2 {
        return invalid(format!("transferral needs a bipartition, got {} parts", partition.len()));
    }
    let buckets = index_buckets(graph, partition)?;
    let count = |x: usize| {
        buckets.iter().find(|b| b.vector.0 == [x, 5 - x]).map_or(0, |b| b.copies)
    };
    let n = graph.n() as u64;
    let threshold = psi * Rational::from_integer(BigInt::from(n).pow(5));
    let mut best: Option<Transferral> = None;
    for x in 1..=5 {
        let (hi, lo) = (count(x), count(x - 1));
        let big = |c: usize| Rational::from_integer(BigInt::from(c)) >= threshold;
        if hi == 0 || lo == 0 || !big(hi) || !big(lo) {
            continue;
        }
        if best.as_ref().is_none_or(|b| hi.min(lo) > b.copies_i.min(b.copies_i_prime)) {
            best = Some(Transferral {
                i: IndexVector(vec![x, 5 - x]),
                i_prime: IndexVector(vec![x - 1, 6 - x]),
                copies_i: hi,
                copies_i_prime: lo,
                threshold: threshold.clone(),
            });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::count_copies;
    use crate::generators::gen_complete;
    use crate::rational::{int, ratio};

    #[test]
    fn index_vectors() {
        let p = Partition::split(10, 5).unwrap();
        assert_eq!(index_vector(&[0, 1, 2, 5, 6], &p).unwrap(), IndexVector(vec![3, 2]));
        assert!(index_vector(&[0, 1, 2, 5], &p).is_err());
        assert!(Partition::new(4, vec![vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Partition::new(4, vec![vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn abundance_on_complete_ten() {
        let k10 = gen_complete(10).unwrap();
        let p = Partition::split(10, 5).unwrap();
        let report = abundant_vectors(&k10, &p, &ratio(1, 1000)).unwrap();
        assert_eq!(report.abundant.len(), 6);
        let total: usize = report.buckets.iter().map(|b| b.copies).sum();
        assert_eq!(total, count_copies(&k10));
        // (3,2) alone carries C(5,3)·C(5,2)·30 = 3000 > C(10,5) copies
        assert!(abundant_vectors(&k10, &p, &int(1)).unwrap().abundant.contains(&IndexVector(vec![3, 2])));
        let single = ThreeGraph::new(10, [[0, 1, 2], [0, 1, 5], [2, 5, 6]]).unwrap();
        assert!(abundant_vectors(&single, &p, &int(1)).unwrap().abundant.is_empty());
        assert!(abundant_vectors(&k10, &p, &int(0)).is_err());
    }

    #[test]
    fn lattice_examples() {
        let l = IndexLattice::new(2, vec![vec![3, 2], vec![2, 3]]).unwrap();
        assert!(l.contains(&[1, -1]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert!(l.contains(&[0, 0]).unwrap());
        assert!(l.contains(&[5, 0]).unwrap());
        assert!(l.contains(&[3, 2]).unwrap());
        assert!(l.contains(&[1, 1]).is_ok_and(|b| !b));
        assert!(l.contains(&[1]).is_err());
        assert!(IndexLattice::new(2, vec![vec![1]]).is_err());
        let empty = IndexLattice::new(3, vec![]).unwrap();
        assert!(empty.contains(&[0, 0, 0]).unwrap());
        assert!(!empty.contains(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn lattice_with_dependent_generators() {
        let l = IndexLattice::new(3, vec![vec![2, 4, 6], vec![3, 6, 9], vec![0, 0, 4]]).unwrap();
        assert!(l.contains(&[1, 2, 3]).unwrap());
        assert!(!l.contains(&[0, 0, 2]).unwrap());
        assert!(l.contains(&[0, 0, 8]).unwrap());
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn transferral_on_complete_twenty() {
        let k20 = gen_complete(20).unwrap();
        let p = Partition::split(20, 10).unwrap();
        let t = transferral_witness(&k20, &p, &ratio(1, 1_000_000)).unwrap().unwrap();
        assert_eq!((t.i.0.clone(), t.i_prime.0.clone()), (vec![3, 2], vec![2, 3]));
        assert_eq!(transferral_witness(&k20, &p, &ratio(2, 1)).unwrap(), None);
    }

    #[test]
    fn transferral_needs_mixed_copies() {
        // all copies inside the first part
        let edges = gen_complete(5).unwrap().edges().to_vec();
        let g = ThreeGraph::new(10, edges).unwrap();
        let p = Partition::split(10, 5).unwrap();
        assert_eq!(transferral_witness(&g, &p, &ratio(1, 1_000_000)).unwrap(), None);
        let three = Partition::new(10, vec![vec![0], vec![1], (2..10).collect()]).unwrap();
        assert!(transferral_witness(&g, &three, &int(0)).is_err());
    }
}
