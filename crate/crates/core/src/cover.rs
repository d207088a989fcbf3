//! Exact cover and maximum packing over families of small vertex sets stored
//! as `u128` bitmasks. Shared by the T-tiling and 5-graph matching solvers.

use std::collections::{HashMap, HashSet};

pub(crate) const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CoverResult {
    Found(Vec<usize>),
    Exhausted,
    BudgetExceeded,
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// Picks the vertex of `within` lying in the fewest sets of `live`; ties go to
/// the smallest vertex. Returns `(vertex, count)`.
fn most_constrained(sets: &[u128], live: &[usize], within: u128) -> Option<(usize, usize)> {
    let mut counts = [0usize; MAX_VERTICES];
    for &s in live {
        for v in bits(sets[s]) {
            counts[v] += 1;
        }
    }
    bits(within).map(|v| (v, counts[v])).min_by_key(|&(v, c)| (c, v))
}

struct CoverSearch<'a> {
    sets: &'a [u128],
    failed: HashSet<u128>,
    chosen: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
}

impl CoverSearch<'_> {
    // Ok(true) = found, Ok(false) = no cover, Err(()) = budget.
    fn run(&mut self, uncovered: u128, live: &[usize]) -> Result<bool, ()> {
        if uncovered == 0 {
            return Ok(true);
        }
        if self.failed.contains(&uncovered) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Err(());
        }
        let Some((v, count)) = most_constrained(self.sets, live, uncovered) else {
            return Ok(false);
        };
        if count > 0 {
            let options: Vec<usize> = live.iter().copied().filter(|&s| self.sets[s] >> v & 1 == 1).collect();
            for s in options {
                let rest = uncovered & !self.sets[s];
                let child: Vec<usize> = live.iter().copied().filter(|&t| self.sets[t] & !rest == 0).collect();
                self.chosen.push(s);
                if self.run(rest, &child)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
        }
        self.failed.insert(uncovered);
        Ok(false)
    }
}

/// Finds sets from `sets` partitioning `universe` exactly.
pub(crate) fn exact_cover(sets: &[u128], universe: u128, limit: Option<u64>) -> (CoverResult, u64) {
    let live: Vec<usize> = (0..sets.len()).filter(|&s| sets[s] & !universe == 0).collect();
    let mut search = CoverSearch { sets, failed: HashSet::new(), chosen: Vec::new(), nodes: 0, limit };
    let result = match search.run(universe, &live) {
        Ok(true) => CoverResult::Found(search.chosen.clone()),
        Ok(false) => CoverResult::Exhausted,
        Err(()) => CoverResult::BudgetExceeded,
    };
    (result, search.nodes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Packing {
    pub chosen: Vec<usize>,
    pub optimal: bool,
    pub nodes: u64,
}

struct PackSearch<'a> {
    sets: &'a [u128],
    set_size: usize,
    best: Vec<usize>,
    stack: Vec<usize>,
    memo: HashMap<u128, usize>,
    nodes: u64,
    limit: Option<u64>,
    aborted: bool,
}

/// Size of a greedy maximal packing, in scan order.
fn greedy(sets: &[u128], live: &[usize]) -> Vec<usize> {
    let mut used = 0u128;
    let mut out = Vec::new();
    for &s in live {
        if sets[s] & used == 0 {
            used |= sets[s];
            out.push(s);
        }
    }
    out
}

impl PackSearch<'_> {
    /// Returns an upper bound on the largest packing inside the union of `live`.
    fn run(&mut self, live: &[usize]) -> usize {
        if self.aborted {
            return usize::MAX / 4;
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
            return usize::MAX / 4;
        }
        let cur = self.stack.len();
        if live.is_empty() {
            if cur > self.best.len() {
                self.best = self.stack.clone();
            }
            return 0;
        }
        let active = live.iter().fold(0u128, |m, &s| m | self.sets[s]);
        // Every set meets the union of a maximal packing, so k * |greedy| bounds any packing.
        let k = self.set_size;
        let mut bound = (active.count_ones() as usize / k).min(k * greedy(self.sets, live).len());
        if let Some(&known) = self.memo.get(&active) {
            bound = bound.min(known);
        }
        if cur + bound <= self.best.len() {
            return bound;
        }
        let (v, _) = most_constrained(self.sets, live, active).expect("active set is non-empty");
        let mut upper = 0;
        let options: Vec<usize> = live.iter().copied().filter(|&s| self.sets[s] >> v & 1 == 1).collect();
        for s in options {
            let rest = active & !self.sets[s];
            let child: Vec<usize> = live.iter().copied().filter(|&t| self.sets[t] & !rest == 0).collect();
            self.stack.push(s);
            upper = upper.max(1 + self.run(&child));
            self.stack.pop();
        }
        let child: Vec<usize> = live.iter().copied().filter(|&t| self.sets[t] >> v & 1 == 0).collect();
        upper = upper.max(self.run(&child));
        let upper = upper.min(bound);
        if !self.aborted {
            let entry = self.memo.entry(active).or_insert(upper);
            *entry = (*entry).min(upper);
        }
        upper
    }
}

/// Branch-and-bound maximum packing of `set_size`-element sets. `optimal` is
/// false when the node limit stopped the search early; `chosen` is then the
/// best packing seen.
pub(crate) fn max_packing(sets: &[u128], set_size: usize, limit: Option<u64>) -> Packing {
    debug_assert!(sets.iter().all(|s| s.count_ones() as usize == set_size));
    let live: Vec<usize> = (0..sets.len()).collect();
    let mut search = PackSearch {
        sets,
        set_size,
        best: greedy(sets, &live),
        stack: Vec::new(),
        memo: HashMap::new(),
        nodes: 0,
        limit,
        aborted: false,
    };
    search.run(&live);
    Packing { chosen: search.best, optimal: !search.aborted, nodes: search.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(vs: &[usize]) -> u128 {
        vs.iter().fold(0, |m, &v| m | 1 << v)
    }

    #[test]
    fn exact_cover_small() {
        let sets = [mask(&[0, 1]), mask(&[2, 3]), mask(&[1, 2]), mask(&[0, 3])];
        let (res, _) = exact_cover(&sets, mask(&[0, 1, 2, 3]), None);
        let CoverResult::Found(chosen) = res else { panic!("expected a cover") };
        let union = chosen.iter().fold(0, |m, &s| m | sets[s]);
        assert_eq!(union, mask(&[0, 1, 2, 3]));
        let (res, _) = exact_cover(&sets[..1], mask(&[0, 1, 2, 3]), None);
        assert_eq!(res, CoverResult::Exhausted);
    }

    #[test]
    fn exact_cover_respects_budget() {
        let sets: Vec<u128> = (0..6).map(|i| mask(&[i, (i + 1) % 7])).collect();
        let (res, nodes) = exact_cover(&sets, mask(&[0, 1, 2, 3, 4, 5, 6]), Some(0));
        assert_eq!(res, CoverResult::BudgetExceeded);
        assert_eq!(nodes, 1);
    }

    #[test]
    fn packing_small() {
        let sets = [mask(&[0, 1, 2]), mask(&[2, 3, 4]), mask(&[4, 5, 6]), mask(&[0, 6, 3])];
        let p = max_packing(&sets, 3, None);
        assert!(p.optimal);
        assert_eq!(p.chosen.len(), 2);
        assert_eq!(max_packing(&[], 5, None).chosen.len(), 0);
    }
}
