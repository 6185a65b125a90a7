mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::paths::*;
use wrapcat_core::linalg::Ring;
use wrapcat_core::loc::{check_right_multiplicative_system, gz_localize};

#[test]
fn random_path_categories_match_the_roof_oracle() {
    let instances = valid_instances(20, 24);
    assert_eq!(instances.len(), 24);
    for (i, (cat, s)) in instances.iter().enumerate() {
        let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
        compare(cat, s, ring).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    }
}

#[test]
fn instances_stay_within_the_size_bounds() {
    for (cat, _) in valid_instances(3, 10) {
        assert!(cat.objects <= 5);
        assert!(cat.arrows.len() <= 8);
    }
}

#[test]
fn system_checks_agree_with_elementwise_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..300 {
        let cat = random_category(&mut rng, 5, 8);
        let s = random_system(&cat, &mut rng);
        let h = linearize(&cat, Ring::Rationals);
        let r = check_right_multiplicative_system(&h, &linear_system(&cat, &h, &s));
        assert_eq!(r.is_right_multiplicative(), is_right_multiplicative(&cat, &s), "{:?}", r.first_failure());
        if r.is_right_multiplicative() {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert!(accepted > 0 && rejected > 0);
}

#[test]
fn invalid_systems_are_refused() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (cat, s) = std::iter::repeat_with(|| {
        let cat = random_category(&mut rng, 5, 8);
        let s = random_system(&cat, &mut rng);
        (cat, s)
    })
    .find(|(cat, s)| !is_right_multiplicative(cat, s))
    .unwrap();
    let h = linearize(&cat, Ring::PrimeField(2));
    assert!(gz_localize(&h, &linear_system(&cat, &h, &s), s.len()).is_err());
}

#[test]
fn identities_alone_localize_to_the_category_itself() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cat = random_category(&mut rng, 5, 8);
    let s: BTreeSet<usize> = cat.identity.iter().copied().collect();
    let h = linearize(&cat, Ring::Rationals);
    let f = gz_localize(&h, &linear_system(&cat, &h, &s), 1).unwrap();
    for x in 0..cat.objects {
        for y in 0..cat.objects {
            assert_eq!(f.h.hom(x, y).ranks(), h.hom(x, y).ranks());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn localization_matches_the_oracle_for_any_seed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_category(&mut rng, 5, 8);
        let s = random_system(&cat, &mut rng);
        prop_assume!(is_right_multiplicative(&cat, &s));
        prop_assert_eq!(compare(&cat, &s, Ring::PrimeField(3)), Ok(()));
    }

    #[test]
    fn localized_categories_are_associative_and_unital(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_category(&mut rng, 4, 6);
        let s = random_system(&cat, &mut rng);
        prop_assume!(is_right_multiplicative(&cat, &s));
        let h = linearize(&cat, Ring::Rationals);
        let f = gz_localize(&h, &linear_system(&cat, &h, &s), s.len()).unwrap();
        prop_assert_eq!(f.h.check_associativity(), Ok(()));
        prop_assert_eq!(f.h.check_unital(), Ok(()));
    }
}
