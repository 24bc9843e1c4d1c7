use lights_core::formulas::{
    gcd_lower_bound, nullity_from_factor_data, nullity_path_product, nullity_snf_product, nullity_snf_self,
    oracle_nullity, partition_min_sum, random_binary_matrix, random_graph_pairs, Partition, ORACLE_CAP,
};
use lights_core::snf::{factor_data, invariant_factors};
use lights_core::{Field, Graph, Matrix, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn formulas_agree_with_oracle_on_random_graphs() {
    for (g, h) in random_graph_pairs(101, 150, 8) {
        let a = g.adjacency(Field::GF2);
        let b = h.adjacency(Field::GF2);
        let sa = invariant_factors(&a).unwrap();
        let sb = invariant_factors(&b).unwrap();
        let oracle = oracle_nullity(&a, &b, ORACLE_CAP).unwrap();
        assert_eq!(nullity_snf_product(&sa, &sb).unwrap(), oracle);
        let fa = factor_data(&sa).unwrap();
        let fb = factor_data(&sb).unwrap();
        assert_eq!(nullity_from_factor_data(&fa, &fb), oracle);
        // Symmetric inputs: swapping the factors keeps the nullity.
        assert_eq!(oracle_nullity(&b, &a, ORACLE_CAP).unwrap(), oracle);
        assert!(gcd_lower_bound(&sa.charpoly(), &sb.charpoly(), Mode::Open) <= oracle);
        assert_eq!(nullity_snf_self(&sa), nullity_snf_product(&sa, &sa).unwrap());
    }
}

#[test]
fn formulas_agree_over_gf3_and_gf5() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for trial in 0..80 {
        let f = Field::new([3u64, 5][trial % 2]).unwrap();
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_binary_matrix(f, m, &mut rng);
        let b = random_binary_matrix(f, n, &mut rng);
        let sa = invariant_factors(&a).unwrap();
        let sb = invariant_factors(&b).unwrap();
        let oracle = oracle_nullity(&a, &b, ORACLE_CAP).unwrap();
        assert_eq!(nullity_snf_product(&sa, &sb).unwrap(), oracle, "trial {trial}");
        assert_eq!(
            nullity_from_factor_data(&factor_data(&sa).unwrap(), &factor_data(&sb).unwrap()),
            oracle
        );
        assert!(gcd_lower_bound(&sa.charpoly(), &sb.charpoly(), Mode::Open) <= oracle);
    }
}

#[test]
fn closed_switching_via_shifted_invariant_factors() {
    for (g, h) in random_graph_pairs(202, 100, 7) {
        let a = g.adjacency(Field::GF2);
        let b = h.adjacency(Field::GF2);
        let a_closed = g.switching_matrix(Mode::Closed, Field::GF2);
        let sa = invariant_factors(&a).unwrap();
        let sb = invariant_factors(&b).unwrap();
        assert_eq!(sa.add_scalar(1), invariant_factors(&a_closed).unwrap());
        let oracle = oracle_nullity(&a_closed, &b, ORACLE_CAP).unwrap();
        assert_eq!(nullity_snf_product(&sa.add_scalar(1), &sb).unwrap(), oracle);
        assert!(gcd_lower_bound(&sa.charpoly(), &sb.charpoly(), Mode::Closed) <= oracle);
        let gh = lights_core::game::cartesian_product(&g, &h);
        assert_eq!(gh.switching_matrix(Mode::Closed, Field::GF2).nullity(), oracle);
    }
}

#[test]
fn path_specialisation() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..100 {
        let g = Graph::random(rng.gen_range(1..=8), 0.5, &mut rng);
        let sg = invariant_factors(&g.adjacency(Field::GF2)).unwrap();
        for m in 1..=10 {
            let sp = invariant_factors(&Graph::path(m).adjacency(Field::GF2)).unwrap();
            assert_eq!(nullity_path_product(m, &sg).unwrap(), nullity_snf_product(&sp, &sg).unwrap());
        }
    }
}

#[test]
fn partition_lemma_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..5000 {
        let pi = Partition::random(rng.gen_range(0..=12), &mut rng);
        let tau = Partition::random(rng.gen_range(0..=12), &mut rng);
        assert!(partition_min_sum(&pi, &tau) >= pi.total().min(tau.total()));
    }
}

#[test]
fn partition_equality_is_not_only_the_stated_case() {
    // (1) against (5): a single part on one side, unequal totals, yet equality.
    let pi = Partition::new(vec![1]).unwrap();
    let tau = Partition::new(vec![5]).unwrap();
    assert_eq!(partition_min_sum(&pi, &tau), 1);
}

#[test]
fn oracle_cap_boundary() {
    let a = Matrix::zeros(Field::GF2, 64, 64);
    assert_eq!(oracle_nullity(&a, &a, ORACLE_CAP).unwrap(), 4096);
    let b = Matrix::zeros(Field::GF2, 65, 65);
    assert!(oracle_nullity(&a, &b, ORACLE_CAP).is_err());
}
