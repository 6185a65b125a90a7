mod support;

use support::{fixture, fixture_path};
use wrapcat_core::ainf::check_ainf_relations;
use wrapcat_core::io::SetupFile;
use wrapcat_core::setup::*;
use wrapcat_core::Error;

#[test]
fn toy_setups_validate_and_envelopes_satisfy_relations() {
    for name in ["toyb.json", "toyb_q.json", "toyc.json"] {
        let f = fixture(name);
        let r = validate_setup(&f.setup);
        assert!(r.passed(), "{name}: {:?}", r.first_failure());
        let delta = choose_compatible_collection(&f.setup, Strategy::Lexicographic).unwrap();
        let a = canonical_envelope(&f.setup, &delta).unwrap();
        let rel = check_ainf_relations(&a, 4);
        assert!(rel.passed(), "{name}: {:?}", rel.violations.first());
    }
}

#[test]
fn broken_associativity_is_reported() {
    let f = fixture("toyb_q_broken.json");
    let r = validate_setup(&f.setup);
    assert!(!r.passed());
    assert!(r.first_failure().unwrap().starts_with("a-infinity-relations"));
}

#[test]
fn explicit_composability_must_be_permutation_closed() {
    let f = fixture("not_closed.json");
    let r = validate_setup(&f.setup);
    let msg = r.first_failure().unwrap();
    assert!(msg.contains("permutation (K,L')"), "{msg}");
}

#[test]
fn zero_denominator_is_a_schema_error() {
    assert!(matches!(SetupFile::read(&fixture_path("bad_scalar.json")), Err(Error::Schema(_))));
}

#[test]
fn micro2datum_collections_are_equivalent() {
    let f = fixture("micro2datum.json");
    let r = validate_setup(&f.setup);
    assert!(r.passed(), "{:?}", r.first_failure());
    let all = all_compatible_collections(&f.setup, 16).unwrap();
    assert_eq!(all.len(), 2);
    let rep = check_envelope_independence(&f.setup, &all[0], &all[1]).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures);
    assert!(rep.pairs.iter().all(|p| p.cohomology_iso && p.homotopy_verified));
    let s1 = choose_compatible_collection(&f.setup, Strategy::Seeded(1)).unwrap();
    let s2 = choose_compatible_collection(&f.setup, Strategy::Seeded(2)).unwrap();
    for c in [&s1, &s2] {
        assert!(check_collection(&f.setup, c).is_ok());
        assert!(all.contains(c));
    }
    assert_eq!(choose_compatible_collection(&f.setup, Strategy::Seeded(1)).unwrap(), s1);
    let df = df_precategory(&f.setup).unwrap();
    assert!(df.check_associativity().is_ok());
}

#[test]
fn promoted_toy_setup_carries_trivial_homotopies() {
    let f = fixture("toyc.json");
    let full = promote_to_full(&f.setup);
    let r = validate_setup(&full);
    assert!(r.passed(), "{:?}", r.first_failure());
    let df = df_precategory(&full).unwrap();
    assert!(df.check_associativity().is_ok());
}

#[test]
fn canonical_fixtures_round_trip() {
    for name in ["toyb.json", "toyb_q.json", "toyc.json", "micro2datum.json", "not_closed.json"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        assert_eq!(SetupFile::from_json_str(&text).unwrap().to_json_string(), text, "{name}");
    }
}
