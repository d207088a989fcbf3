//! Exact two-phase revised simplex for integer data.
//!
//! Solves `min c·x` subject to `A x = b`, `x >= 0` for integer `A`, `b`, `c`.
//! The basis inverse is kept fraction-free as `adj / det` with an integer
//! matrix `adj` and `det > 0`, so every pivot is integer arithmetic with one
//! exact division. An infeasible system yields a Farkas vector `y` with
//! `y·A_j <= 0` for every column and `y·b > 0`, read off the phase-one duals.
//!
//! Pricing is Dantzig's rule; after a run of degenerate pivots it switches to
//! Bland's rule until the objective moves again, which rules out cycling.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

const DEGENERATE_RUN: usize = 16;

#[derive(Clone, Debug, Default)]
pub(crate) struct LinearProgram {
    pub rows: usize,
    /// Sparse integer columns `(row, coefficient)`.
    pub columns: Vec<Vec<(usize, i64)>>,
    pub costs: Vec<i64>,
    pub rhs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpResult {
    Optimal { x: Vec<Rational>, objective: Rational },
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

impl LinearProgram {
    pub fn new(rows: usize) -> Self {
        LinearProgram { rows, columns: Vec::new(), costs: Vec::new(), rhs: vec![0; rows] }
    }

    pub fn add_column(&mut self, entries: Vec<(usize, i64)>, cost: i64) -> usize {
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rows));
        self.columns.push(entries);
        self.costs.push(cost);
        self.columns.len() - 1
    }

    pub fn solve(&self) -> LpResult {
        Tableau::new(self).solve()
    }
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    sign: Vec<i64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    adj: Vec<Vec<BigInt>>,
    det: BigInt,
    /// Basic values times `det`.
    xb: Vec<BigInt>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram) -> Self {
        let m = lp.rows;
        let n = lp.columns.len();
        let sign: Vec<i64> = lp.rhs.iter().map(|&b| if b < 0 { -1 } else { 1 }).collect();
        // Start from a unit +1 column where one exists, else the row's artificial.
        let mut basis: Vec<usize> = (n..n + m).collect();
        let mut claimed = vec![false; m];
        for (j, col) in lp.columns.iter().enumerate() {
            if let [(r, a)] = col.as_slice() {
                if *a * sign[*r] == 1 && !claimed[*r] {
                    claimed[*r] = true;
                    basis[*r] = j;
                }
            }
        }
        let mut in_basis = vec![false; n + m];
        for &v in &basis {
            in_basis[v] = true;
        }
        let adj = (0..m)
            .map(|i| (0..m).map(|k| if i == k { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let xb = lp.rhs.iter().map(|&b| BigInt::from(b.abs())).collect();
        Tableau { lp, sign, basis, in_basis, adj, det: BigInt::one(), xb }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.lp.columns.len()
    }

    /// Column of variable `var` after row sign normalisation.
    fn column(&self, var: usize) -> Vec<(usize, i64)> {
        if self.is_artificial(var) {
            vec![(var - self.lp.columns.len(), 1)]
        } else {
            self.lp.columns[var].iter().map(|&(r, a)| (r, a * self.sign[r])).collect()
        }
    }

    /// `adj · a_var`, i.e. `B⁻¹ a_var` times `det`.
    fn ftran(&self, var: usize) -> Vec<BigInt> {
        let col = self.column(var);
        self.adj
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for &(r, a) in &col {
                    if !row[r].is_zero() {
                        acc += &row[r] * a;
                    }
                }
                acc
            })
            .collect()
    }

    /// `c_B · adj`, i.e. the duals times `det`.
    fn duals(&self, cost: &dyn Fn(usize) -> i64) -> Vec<BigInt> {
        let m = self.lp.rows;
        let mut y = vec![BigInt::zero(); m];
        for (i, &var) in self.basis.iter().enumerate() {
            let c = cost(var);
            if c == 0 {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                if !self.adj[i][k].is_zero() {
                    *yk += &self.adj[i][k] * c;
                }
            }
        }
        y
    }

    fn pivot(&mut self, row: usize, var: usize, direction: &[BigInt]) {
        let m = self.lp.rows;
        let p = direction[row].clone();
        debug_assert!(!p.is_zero());
        for i in 0..m {
            if i == row {
                continue;
            }
            let d = &direction[i];
            for k in 0..m {
                let updated = &self.adj[i][k] * &p - d * &self.adj[row][k];
                self.adj[i][k] = updated / &self.det;
            }
            let updated = &self.xb[i] * &p - d * &self.xb[row];
            self.xb[i] = updated / &self.det;
        }
        self.det = p;
        if self.det.is_negative() {
            self.det = -&self.det;
            for row in &mut self.adj {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            for x in &mut self.xb {
                *x = -&*x;
            }
        }
        let leaving = self.basis[row];
        self.in_basis[leaving] = false;
        self.in_basis[var] = true;
        self.basis[row] = var;
    }

    fn reduced_cost(&self, var: usize, cost: i64, y: &[BigInt]) -> BigInt {
        let mut reduced = &self.det * cost;
        for (r, a) in self.column(var) {
            if !y[r].is_zero() {
                reduced -= &y[r] * a;
            }
        }
        reduced
    }

    /// Simplex iterations for `cost`; artificial columns never enter.
    fn iterate(&mut self, cost: &dyn Fn(usize) -> i64) -> Step {
        let n = self.lp.columns.len();
        let mut degenerate = 0usize;
        loop {
            let y = self.duals(cost);
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering: Option<(usize, BigInt)> = None;
            for j in (0..n).filter(|&j| !self.in_basis[j]) {
                let reduced = self.reduced_cost(j, cost(j), &y);
                if !reduced.is_negative() {
                    continue;
                }
                if bland {
                    entering = Some((j, reduced));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| reduced < *best) {
                    entering = Some((j, reduced));
                }
            }
            let Some((j, _)) = entering else {
                return Step::Optimal;
            };
            let direction = self.ftran(j);
            // Minimum ratio xb_i / d_i over d_i > 0; ties to the smallest basic variable.
            let mut leave: Option<usize> = None;
            for (i, d) in direction.iter().enumerate() {
                if !d.is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(r) => {
                        let lhs = &self.xb[i] * &direction[r];
                        let rhs = &self.xb[r] * d;
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[r])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            let Some(row) = leave else {
                return Step::Unbounded;
            };
            if self.xb[row].is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(row, j, &direction);
        }
    }

    fn value(&self, scaled: &BigInt) -> Rational {
        Rational::new(scaled.clone(), self.det.clone())
    }

    fn solve(mut self) -> LpResult {
        let n = self.lp.columns.len();
        let phase_one = |var: usize| if var >= n { 1 } else { 0 };
        self.iterate(&phase_one);
        let infeasible = self.basis.iter().zip(&self.xb).any(|(&v, x)| v >= n && x.is_positive());
        if infeasible {
            let y = self.duals(&phase_one);
            let farkas = y
                .iter()
                .zip(&self.sign)
                .map(|(v, &s)| {
                    let v = self.value(v);
                    if s < 0 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            return LpResult::Infeasible { farkas };
        }
        // Drive zero-level artificials out where a real column allows it;
        // rows where none does are redundant.
        for row in 0..self.lp.rows {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            let replacement = (0..n).filter(|&j| !self.in_basis[j]).find(|&j| {
                self.column(j).iter().any(|&(r, _)| !self.adj[row][r].is_zero()) && !self.ftran(j)[row].is_zero()
            });
            if let Some(j) = replacement {
                let direction = self.ftran(j);
                self.pivot(row, j, &direction);
            }
        }
        let costs = &self.lp.costs;
        let phase_two = |var: usize| if var >= n { 0 } else { costs[var] };
        if let Step::Unbounded = self.iterate(&phase_two) {
            return LpResult::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < n {
                x[var] = self.value(&self.xb[i]);
            }
        }
        let objective = x
            .iter()
            .zip(costs)
            .fold(Rational::zero(), |acc, (v, &c)| acc + v * Rational::from_integer(BigInt::from(c)));
        LpResult::Optimal { x, objective }
    }
}
