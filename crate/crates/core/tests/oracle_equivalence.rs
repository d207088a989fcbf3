use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttile_core::copies::{count_copies, supports_t};
use ttile_core::fractional::{frac_min_pair_weight, frac_perfect};
use ttile_core::generators::{gen_complete, gen_h_ext, gen_random_codegree};
use ttile_core::lattice::IndexLattice;
use ttile_core::oracles;
use ttile_core::rational::{binomial, int, ratio};
use ttile_core::structure::{extremality, linked_count, LinkedOptions, SearchMode};
use ttile_core::tiling::{max_tiling, perfect_tiling};
use ttile_core::{AvoidanceGraph, ThreeGraph};

fn random_graph(seed: u64, n_range: std::ops::RangeInclusive<usize>) -> ThreeGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.random_range(n_range);
    let p = rng.random_range(0.2..0.9);
    gen_random_codegree(n, 0, p, seed).unwrap()
}

#[test]
fn copy_counts_match_labeled_embeddings() {
    for seed in 0..50 {
        let g = random_graph(seed, 5..=10);
        let labeled = oracles::labeled_embeddings(&g);
        assert_eq!(labeled % 4, 0);
        assert_eq!(count_copies(&g) as u64, labeled / 4, "seed {seed}");
    }
}

#[test]
fn supports_matches_permutation_search() {
    let g = random_graph(7, 9..=9);
    for set in [[0, 1, 2, 3, 4], [4, 5, 6, 7, 8], [0, 2, 4, 6, 8], [1, 3, 5, 7, 8]] {
        assert_eq!(supports_t(&g, &set).unwrap(), oracles::naive_supports(&g, &set));
    }
}

#[test]
fn tilers_match_disjoint_set_search() {
    for seed in 0..50 {
        let g = random_graph(1000 + seed, 5..=12);
        let max = max_tiling(&g, None).unwrap();
        assert!(max.optimal);
        assert!(max.tiling.verify(&g));
        assert_eq!(max.tiling.size(), oracles::brute_force_max_tiling(&g), "seed {seed}");
        let perfect = perfect_tiling(&g, None).unwrap();
        assert_eq!(perfect.outcome.found().is_some(), oracles::brute_force_perfect_tiling(&g), "seed {seed}");
    }
}

#[test]
fn minimax_formulations_agree() {
    let k10 = gen_complete(10).unwrap();
    let by_sets = frac_min_pair_weight(&k10).unwrap();
    assert_eq!(by_sets.value(), Some(&ratio(4, 9)));
    assert_eq!(oracles::min_pair_weight_over_copies(&k10), Some(ratio(4, 9)));
    let k5 = gen_complete(5).unwrap();
    assert_eq!(oracles::min_pair_weight_over_copies(&k5), Some(int(1)));
    let ext = gen_h_ext(10).unwrap();
    assert_eq!(oracles::min_pair_weight_over_copies(&ext.graph), None);
    for seed in 0..6 {
        let g = gen_random_codegree(10, 4, 0.5, seed).unwrap();
        assert_eq!(
            frac_min_pair_weight(&g).unwrap().value().cloned(),
            oracles::min_pair_weight_over_copies(&g),
            "seed {seed}"
        );
    }
}

#[test]
fn linked_counts_match_naive_loop() {
    for n in [7u64, 8, 9] {
        let k = gen_complete(n as usize).unwrap();
        let report = linked_count(&k, 0, 1, 1, &LinkedOptions::default()).unwrap();
        assert_eq!(report.count, ttile_core::Rational::from_integer(binomial(n - 2, 4)));
        assert_eq!(oracles::pascal(n - 2, 4), binomial(n - 2, 4));
    }
    for seed in 0..20 {
        let g = gen_random_codegree(9, 0, 0.6, 300 + seed).unwrap();
        let (u, v) = ((seed % 9) as usize, ((seed + 4) % 9) as usize);
        let report = linked_count(&g, u, v, 1, &LinkedOptions::default()).unwrap();
        let naive = oracles::naive_linked_count(&g, u, v);
        assert_eq!(report.count, ttile_core::Rational::from_integer(BigInt::from(naive)), "seed {seed}");
    }
    let ext = gen_h_ext(10).unwrap();
    let (u, v) = (ext.b[0], ext.b[1]);
    let report = linked_count(&ext.graph, u, v, 1, &LinkedOptions::default()).unwrap();
    assert_eq!(report.count, ttile_core::Rational::from_integer(oracles::naive_linked_count(&ext.graph, u, v).into()));
}

#[test]
fn lattice_matches_coefficient_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..100 {
        let dim = rng.random_range(1..=3);
        let count = rng.random_range(1..=3);
        let generators: Vec<Vec<i64>> =
            (0..count).map(|_| (0..dim).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let lattice = IndexLattice::new(dim, generators.clone()).unwrap();
        for g in &generators {
            assert!(lattice.contains(g).unwrap());
        }
        let points = oracles::lattice_points_in_box(dim, &generators, 2 + 3 * dim as i64);
        for _ in 0..5 {
            let target: Vec<i64> = (0..dim).map(|_| rng.random_range(-2..=2)).collect();
            let member = lattice.contains(&target).unwrap();
            assert_eq!(member, points.contains(&target), "case {case}: {generators:?} ∋ {target:?}");
            if oracles::brute_force_lattice_member(&generators, &target, 10) {
                assert!(member);
            }
        }
    }
}

#[test]
fn exact_extremality_matches_subset_scan() {
    for seed in 0..8 {
        let g = random_graph(500 + seed, 8..=11);
        let report = extremality(&g, &int(0), SearchMode::Exact).unwrap();
        assert_eq!(report.min_edges, oracles::brute_force_min_edges(&g), "seed {seed}");
    }
}

#[test]
fn zero_copy_certificate_is_all_minus_one() {
    let g = ThreeGraph::empty(10);
    let out = frac_perfect(&g, &AvoidanceGraph::empty(10)).unwrap();
    assert_eq!(out.certificate().unwrap().a, vec![int(-1); 10]);
}
