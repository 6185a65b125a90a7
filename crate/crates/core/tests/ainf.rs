mod support;

use support::load;
use wrapcat_core::ainf::*;
use wrapcat_core::linalg::sparse;
use wrapcat_core::linalg::{cohomology, GradedModule, Ring};
use wrapcat_core::setup::{canonical_envelope, choose_compatible_collection, Strategy};
use wrapcat_core::Error;

/// Two objects with `f: X → Y`, `g: Y → X`, `g∘f = 1_X` and `f∘g = 0`.
fn retract(ring: Ring) -> AInfCategory {
    let mut a = AInfCategory::new(ring, vec!["X".into(), "Y".into()]);
    let one = |l: &str| GradedModule::from_pairs(ring, &[(l, 0)]).unwrap();
    a.set_hom(0, 0, one("1X"));
    a.set_hom(1, 1, one("1Y"));
    a.set_hom(0, 1, one("f"));
    a.set_hom(1, 0, one("g"));
    a.set_unit(0, "1X").unwrap();
    a.set_unit(1, "1Y").unwrap();
    a.install_unit_operations();
    a.add_op(&[0, 1, 0], &[0, 0], &sparse::unit(0, ring)).unwrap();
    a
}

#[test]
fn nonassociative_products_are_caught() {
    for ring in [Ring::PrimeField(2), Ring::Rationals] {
        let r = check_ainf_relations(&retract(ring), 3);
        assert!(!r.passed());
        let v = &r.violations[0];
        assert_eq!(v.arity, 3);
        assert_eq!(v.chain.first(), v.chain.get(2));
    }
}

#[test]
fn associative_repair_passes() {
    let ring = Ring::Rationals;
    let mut a = retract(ring);
    a.add_op(&[1, 0, 1], &[0, 0], &sparse::unit(0, ring)).unwrap();
    assert!(check_ainf_relations(&a, 4).passed());
    let h = cohomology_category(&a, &a.unit_vectors()).unwrap();
    assert_eq!(h.check_associativity(), Ok(()));
    assert!(functor::find_isomorphism(&h, 0, 1).is_some());
}

#[test]
fn operations_must_have_the_right_degree() {
    let ring = Ring::PrimeField(2);
    let mut a = retract(ring);
    let err = a.add_op(&[0, 1, 0, 1], &[0, 0, 0], &sparse::unit(0, ring)).unwrap_err();
    assert!(matches!(err, Error::ShapeMismatch(m) if m.contains("instead of -1")));
}

#[test]
fn envelopes_satisfy_the_relations_and_are_strictly_unital() {
    for name in ["toyb.json", "toyb_q.json", "toyc.json", "micro2datum.json"] {
        let f = support::fixture(name);
        let delta = choose_compatible_collection(&f.setup, Strategy::Lexicographic).unwrap();
        let env = canonical_envelope(&f.setup, &delta).unwrap();
        let r = check_ainf_relations(&env, 4);
        assert!(r.passed(), "{name}: {:?}", r.violations.first());
        let u = classify_unitality(&env);
        assert_eq!(u.global, Unitality::Strict, "{name}");
    }
}

#[test]
fn cone_extensions_satisfy_the_relations() {
    for name in ["toyb.json", "toyb_q.json", "toyc.json"] {
        let l = load(name);
        let cones = l.cs.cones();
        assert!(!cones.is_empty());
        let t = TwistedExtension::with_cones(&l.cs.envelope, &cones).unwrap();
        assert_eq!(t.object_count(), l.cs.envelope.object_count() + cones.len());
        let r = check_ainf_relations(&t, 4);
        assert!(r.passed(), "{name}: {:?}", r.violations.first());
    }
}

#[test]
fn materialized_cones_agree_with_the_lazy_extension() {
    let l = load("toyb.json");
    let t = TwistedExtension::with_cones(&l.cs.envelope, &l.cs.cones()).unwrap();
    let m = t.materialize(4);
    assert!(check_ainf_relations(&m, 4).passed());
    for x in 0..t.object_count() {
        for y in 0..t.object_count() {
            assert_eq!(t.hom(x, y), m.hom(x, y));
        }
    }
}

#[test]
fn cone_of_an_identity_is_acyclic() {
    let l = load("toyb_q.json");
    let env = &l.cs.envelope;
    let x = 0;
    let spec = ConeSpec {
        name: "C".into(),
        source: x,
        target: x,
        morphism: env.unit_vector(x).unwrap(),
    };
    let t = TwistedExtension::with_cones(env, &[spec]).unwrap();
    let c = t.object_index("C").unwrap();
    for y in 0..t.object_count() {
        let h = cohomology(&t.hom_complex(c, y).unwrap()).unwrap();
        assert_eq!(h.total_rank(), 0, "hom(C, {})", t.object_names()[y]);
    }
}

#[test]
fn cones_need_closed_degree_zero_morphisms() {
    let ring = Ring::PrimeField(3);
    let mut a = AInfCategory::new(ring, vec!["X".into(), "Y".into()]);
    a.set_hom(0, 1, GradedModule::from_pairs(ring, &[("f", 0), ("h", 1)]).unwrap());
    a.add_op(&[0, 1], &[0], &sparse::unit(1, ring)).unwrap();
    let cone = |i: usize| -> Result<(), Error> {
        let spec = ConeSpec {
            name: "C".into(),
            source: 0,
            target: 1,
            morphism: sparse::unit(i, ring),
        };
        TwistedExtension::with_cones(&a, &[spec]).map(|_| ())
    };
    assert_eq!(cone(1), Err(Error::NotDegreeZero("C".into())));
    assert_eq!(cone(0), Err(Error::NotClosed("C".into())));
}

/// Claims operations up to arity 6, so no split of a relation is skipped.
struct Unbounded<'a, A>(&'a A);

impl<A: AInfOps> AInfOps for Unbounded<'_, A> {
    fn ring(&self) -> Ring {
        self.0.ring()
    }
    fn object_names(&self) -> Vec<String> {
        self.0.object_names()
    }
    fn hom(&self, x: usize, y: usize) -> &GradedModule {
        self.0.hom(x, y)
    }
    fn mu(&self, chain: &[usize], inputs: &[usize]) -> wrapcat_core::linalg::sparse::SVec {
        self.0.mu(chain, inputs)
    }
    fn max_arity(&self) -> usize {
        6
    }
}

#[test]
fn skipping_vanishing_splits_changes_nothing() {
    let broken = retract(Ring::PrimeField(2));
    let l = load("toyb.json");
    let t = TwistedExtension::with_cones(&l.cs.envelope, &l.cs.cones()).unwrap();
    let pairs: [(&dyn Fn(usize) -> RelationReport, &dyn Fn(usize) -> RelationReport); 2] = [
        (&|k| check_ainf_relations(&broken, k), &|k| check_ainf_relations(&Unbounded(&broken), k)),
        (&|k| check_ainf_relations(&t, k), &|k| check_ainf_relations(&Unbounded(&t), k)),
    ];
    for (fast, full) in pairs {
        for k in 1..=4 {
            let (a, b) = (fast(k), full(k));
            assert_eq!(a.tuples_checked, b.tuples_checked);
            assert_eq!(a.total_violations, b.total_violations);
            assert_eq!(a.violations, b.violations);
        }
    }
}
