mod common;

use common::*;
use num_bigint::BigInt;
use permsim::detsim::sample_shift_matrix;
use permsim::graphio::{parse_graph6, Graph};
use permsim::parallel::run_sequential;
use permsim::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![1_000_003u64, 998_244_353, MERSENNE_61, 18_446_744_073_709_551_557])
        .prop_map(|p| PrimeField::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_mod_p_matches_exact(seed: u64, n in 1usize..=12, field in small_prime()) {
        let m = random_int_matrix(&mut rng(seed), n, -100, 100);
        prop_assert_eq!(det_mod_p(&m.reduce_mod(field)), field.reduce_bigint(&det_exact(&m)));
    }

    #[test]
    fn bareiss_matches_leibniz(seed: u64, n in 1usize..=6) {
        let m = random_int_matrix(&mut rng(seed), n, -9, 9);
        prop_assert_eq!(det_exact(&m), leibniz_det(&m));
    }

    #[test]
    fn det_is_multiplicative(seed: u64, n in 1usize..=10, field in small_prime()) {
        let mut r = rng(seed);
        let a = random_mod_matrix(&mut r, field, n);
        let b = random_mod_matrix(&mut r, field, n);
        prop_assert_eq!(det_mod_p(&a.mul(&b).unwrap()), field.mul(det_mod_p(&a), det_mod_p(&b)));
    }

    #[test]
    fn kernel_mul_matches_triple_loop(seed: u64, n in 1usize..=12, field in small_prime()) {
        let mut r = rng(seed);
        let a = random_mod_matrix(&mut r, field, n);
        let b = random_mod_matrix(&mut r, field, n);
        prop_assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
        let ai = random_int_matrix(&mut r, n, -50, 50);
        let bi = random_int_matrix(&mut r, n, -50, 50);
        prop_assert_eq!(ai.mul(&bi).unwrap(), naive_mul(&ai, &bi));
    }

    #[test]
    fn horner_matches_repeated_powering(seed: u64, n in 1usize..=8, field in small_prime()) {
        let mut r = rng(seed);
        let m = random_mod_matrix(&mut r, field, n);
        let coeffs: Vec<u64> = (0..n).map(|_| r.random_range(0..field.modulus())).collect();
        prop_assert_eq!(m.horner_poly_eval(&coeffs).unwrap(), naive_poly(&m, &coeffs));
        let mi = random_int_matrix(&mut r, n, -3, 3);
        let ci: Vec<BigInt> = (0..n).map(|_| BigInt::from(r.random_range(-5i64..=5))).collect();
        prop_assert_eq!(mi.horner_poly_eval(&ci).unwrap(), naive_poly(&mi, &ci));
    }

    #[test]
    fn diagonal_split_recombines(seed: u64, n in 1usize..=10) {
        let m = random_int_matrix(&mut rng(seed), n, -100, 100);
        prop_assert_eq!(m.zero_diagonal().add(&m.diagonal()).unwrap(), m);
    }

    #[test]
    fn shift_adds_constant(seed: u64, n in 1usize..=10, c in -1000i64..1000) {
        let m = random_int_matrix(&mut rng(seed), n, -100, 100);
        let c = BigInt::from(c);
        let diff = m.add_scaled_all_ones(&c).sub(&m).unwrap();
        prop_assert!(diff.entries().iter().all(|e| *e == c));
    }

    #[test]
    fn f_is_conjugation_invariant_in_determinant(seed: u64, n in 2usize..=16) {
        let params = TestParams::new(MERSENNE_61, 1, seed).unwrap();
        let mut r = rng(seed);
        let a = random_mod_matrix(&mut r, params.field(), n);
        let p = Permutation::random(n, &mut r);
        let pa = apply_permutation(&p, &a).unwrap();
        let draw = sample_coefficients(&params, n, 0);
        let fa = randomized_f(&a, &draw).unwrap();
        let fpa = randomized_f(&pa, &draw).unwrap();
        // Stronger than equal determinants: f commutes with conjugation.
        prop_assert_eq!(&fpa, &apply_permutation(&p, &fa).unwrap());
        prop_assert_eq!(det_mod_p(&fa), det_mod_p(&fpa));
        prop_assert!((0..n).all(|i| *fa.get(i, i) == 0));
    }

    #[test]
    fn shift_commutes_with_conjugation(seed: u64, n in 1usize..=10, c in 0u64..1000) {
        let field = PrimeField::mersenne61();
        let mut r = rng(seed);
        let a = random_mod_matrix(&mut r, field, n);
        let p = Permutation::random(n, &mut r);
        prop_assert_eq!(
            apply_permutation(&p, &a).unwrap().add_scaled_all_ones(&c),
            apply_permutation(&p, &a.add_scaled_all_ones(&c)).unwrap()
        );
    }

    #[test]
    fn oracle_is_symmetric_and_matches_naive(seed: u64, n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_int_matrix(&mut r, n, 0, 1);
        let b = if r.random_bool(0.5) {
            apply_permutation(&Permutation::random(n, &mut r), &a).unwrap()
        } else {
            random_int_matrix(&mut r, n, 0, 1)
        };
        let ab = brute_force_similar(&a, &b, false).unwrap();
        let ba = brute_force_similar(&b, &a, false).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let (Some(x), Some(y)) = (&ab, &ba) {
            prop_assert_eq!(apply_permutation(x, &b).unwrap(), a.clone());
            prop_assert_eq!(apply_permutation(y, &a).unwrap(), b.clone());
            prop_assert_eq!(apply_permutation(&x.inverse(), &a).unwrap(), b.clone());
        }
        prop_assert_eq!(ab.map(|p| p.mapping().to_vec()), naive_similar(&a, &b));
    }

    #[test]
    fn conjugation_preserves_exact_det(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let b = random_int_matrix(&mut r, n, -20, 20);
        let p = Permutation::random(n, &mut r);
        prop_assert_eq!(det_exact(&apply_permutation(&p, &b).unwrap()), det_exact(&b));
        prop_assert!(check_diag_conjugation_identity(&b, &p));
    }

    #[test]
    fn equality_never_separates_identical(seed: u64, n in 1usize..=8) {
        let a = random_int_matrix(&mut rng(seed), n, -100, 100);
        let params = TestParams::new(MERSENNE_61, 3, seed).unwrap();
        let v = equality_test(&a, &a, &params).unwrap();
        prop_assert_eq!(v.kind, VerdictKind::Indistinguishable);
        prop_assert_eq!(v.error_bound, failure_bound(n, MERSENNE_61, 3).unwrap());
    }

    #[test]
    fn verdict_bound_matches_trials_run(seed: u64, n in 2usize..=6, trials in 1usize..=5) {
        let mut r = rng(seed);
        let a = random_int_matrix(&mut r, n, 0, 1);
        let b = random_int_matrix(&mut r, n, 0, 1);
        let params = TestParams::new(MERSENNE_61, trials, seed).unwrap();
        let v = permutation_similarity_test(&a, &b, &params).unwrap();
        prop_assert_eq!(v.per_trial_dets.len(), v.trials_run);
        prop_assert_eq!(&v.error_bound, &failure_bound(n, MERSENNE_61, v.trials_run).unwrap());
        prop_assert_eq!(v.is_distinct(), v.per_trial_dets.iter().any(|(x, y)| x != y));
        if v.is_distinct() {
            prop_assert_eq!(v.witness.as_ref().unwrap().trial + 1, v.trials_run);
            prop_assert!(brute_force_similar(&a, &b, false).unwrap().is_none());
        } else {
            prop_assert_eq!(v.trials_run, trials);
        }
    }

    #[test]
    fn graph6_roundtrip(seed: u64, n in 1usize..=40) {
        let mut r = rng(seed);
        let mut g = Graph::empty(n);
        for v in 1..n {
            for u in 0..v {
                if r.random_bool(0.4) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let s = g.to_graph6().unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

#[test]
fn results_do_not_depend_on_the_backend() {
    let params = TestParams::new(MERSENNE_61, 4, 11).unwrap();
    let mut r = rng(5);
    let a = random_int_matrix(&mut r, 24, 0, 1);
    let b = random_int_matrix(&mut r, 24, 0, 1);
    let pooled = permutation_similarity_test(&a, &b, &params).unwrap();
    let single = run_sequential(|| permutation_similarity_test(&a, &b, &params).unwrap());
    assert_eq!(pooled, single);

    let m = random_int_matrix(&mut r, 40, -100, 100);
    assert_eq!(det_exact(&m), run_sequential(|| det_exact(&m)));

    let corpus = isomorphism_classes(5).unwrap();
    let config = HuntConfig::default();
    assert_eq!(
        hunt(&corpus, &config).unwrap().to_tsv(),
        run_sequential(|| hunt(&corpus, &config).unwrap().to_tsv())
    );
}

#[test]
fn shift_matrices_are_deterministic() {
    let params = TestParams::new(1_000_003, 3, 8).unwrap();
    assert_eq!(sample_shift_matrix(&params, 4, 2), sample_shift_matrix(&params, 4, 2));
    assert_ne!(sample_shift_matrix(&params, 4, 2), sample_shift_matrix(&params, 4, 1));
}

#[test]
fn class_counts_are_stable() {
    for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
        let first = isomorphism_classes(n).unwrap();
        assert_eq!(first.len(), expected, "n = {n}");
        assert_eq!(first, isomorphism_classes(n).unwrap());
    }
}
