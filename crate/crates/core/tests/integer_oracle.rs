mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::integer::*;

#[test]
fn divisor_oracle_recovers_the_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let (c, expected) = random_complex(&mut rng, 6);
        assert_eq!(oracle_cohomology(&c), expected, "{c:?}");
    }
}

#[test]
fn twenty_five_random_complexes_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut scrambled = 0;
    let mut with_torsion = 0;
    for i in 0..25 {
        let (c, _) = random_complex(&mut rng, 6);
        assert!(c.dims.iter().all(|n| *n <= 6));
        assert!(c.d.iter().flatten().flatten().all(|x| x.abs() <= MAX_ENTRY));
        scrambled += c.d.iter().flatten().any(|row| row.iter().filter(|x| **x != 0).count() > 1) as usize;
        let oracle = oracle_cohomology(&c);
        with_torsion += oracle.torsion.iter().any(|t| !t.is_empty()) as usize;
        assert_eq!(computed(&c.to_complex(), c.dims.len()), oracle, "complex {i}: {c:?}");
    }
    assert!(scrambled >= 10, "only {scrambled} complexes have mixed rows");
    assert!(with_torsion >= 10, "only {with_torsion} complexes have torsion");
}

#[test]
fn known_torsion_example() {
    let c = IntComplex {
        dims: vec![2, 2],
        d: vec![vec![vec![2, 0], vec![0, 6]]],
    };
    let o = oracle_cohomology(&c);
    assert_eq!(o.torsion[1], vec![2, 6]);
    assert_eq!(computed(&c.to_complex(), 2), o);
    let c = IntComplex {
        dims: vec![2, 2],
        d: vec![vec![vec![4, 6], vec![6, 9]]],
    };
    let o = oracle_cohomology(&c);
    assert_eq!(o, IntCohomology { free: vec![1, 1], torsion: vec![vec![], vec![]] });
    assert_eq!(computed(&c.to_complex(), 2), o);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integer_cohomology_matches_for_any_seed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, expected) = random_complex(&mut rng, 5);
        prop_assert_eq!(&oracle_cohomology(&c), &expected);
        prop_assert_eq!(computed(&c.to_complex(), c.dims.len()), expected);
    }
}

#[test]
fn invariant_factors_merge_coprime_orders() {
    assert_eq!(invariant_factors(&[3, 7]), vec![21]);
    assert_eq!(invariant_factors(&[2, 4, 3]), vec![2, 12]);
    assert_eq!(invariant_factors(&[]), Vec::<u64>::new());
}
