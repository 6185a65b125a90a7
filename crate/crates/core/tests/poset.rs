mod support;

use support::{load, Loaded};
use wrapcat_core::ainf::{check_ainf_relations, AInfOps};
use wrapcat_core::io::{OracleChoice, OracleSpec};
use wrapcat_core::poset::*;
use wrapcat_core::Error;

fn poset(l: &Loaded) -> DecoratedPoset {
    DecoratedPoset::from_spec(l.file.poset.as_ref().unwrap(), &l.delta).unwrap()
}

fn names(l: &Loaded, ps: &[&str]) -> Vec<usize> {
    let p = poset(l);
    ps.iter().map(|n| p.index(n).unwrap()).collect()
}

fn sub_poset(l: &Loaded, keep: &[(&str, &str)], order: &[(usize, usize)], sequences: Vec<Vec<usize>>) -> DecoratedPoset {
    let s = &l.file.setup;
    let mut p = DecoratedPoset::new(
        keep.iter().map(|(n, _)| n.to_string()).collect(),
        keep.iter().map(|(_, lag)| s.index(lag).unwrap()).collect(),
        order,
        |t| l.delta.get(t).map(str::to_string),
    )
    .unwrap();
    p.wrapping_sequences = sequences;
    p
}

#[test]
fn singleton_poset_category_is_a_unit() {
    let l = load("toyb.json");
    let p = sub_poset(&l, &[("a", "L")], &[], vec![]);
    let o = build_o_p(&p, &l.file.setup).unwrap();
    assert_eq!(o.object_count(), 1);
    assert_eq!(o.hom(0, 0).rank(), 1);
    assert!(check_ainf_relations(&o, 4).passed());
}

#[test]
fn two_chain_homs_point_down_the_order() {
    let l = load("toyb.json");
    let p = sub_poset(&l, &[("a", "L"), ("b", "K")], &[(0, 1)], vec![]);
    let o = build_o_p(&p, &l.file.setup).unwrap();
    let s = &l.file.setup;
    assert_eq!(o.hom(0, 1), &s.cf(s.index("L").unwrap(), s.index("K").unwrap()));
    assert_eq!(o.hom(1, 0).rank(), 0);
    assert!(check_ainf_relations(&o, 4).passed());
}

#[test]
fn bundled_poset_categories_satisfy_the_relations() {
    for name in ["toyb.json", "toyb_q.json", "toyc.json"] {
        let l = load(name);
        let p = poset(&l);
        let r = check_ainf_relations(&build_o_p(&p, &l.file.setup).unwrap(), 4);
        assert!(r.passed(), "{name}: {:?}", r.violations.first());
        assert_eq!(p.check_decoration(&l.file.setup), Ok(()));
    }
}

#[test]
fn chains_are_descending() {
    let l = load("toyc.json");
    let p = poset(&l);
    let chains = p.chains();
    assert!(chains.iter().all(|c| c.windows(2).all(|w| p.is_greater(w[0], w[1]))));
    assert_eq!(chains.len(), 26);
    assert_eq!(p.down_set(p.index("p1").unwrap()).len(), 3);
}

#[test]
fn cyclic_orders_and_missing_data_are_refused() {
    let l = load("toyb.json");
    let s = &l.file.setup;
    let lags = vec![s.index("L").unwrap(), s.index("K").unwrap()];
    let cyc = DecoratedPoset::new(vec!["a".into(), "b".into()], lags.clone(), &[(0, 1), (1, 0)], |_| Some("0".into()));
    assert!(matches!(cyc, Err(Error::Schema(m)) if m.contains("cycle")));
    let none = DecoratedPoset::new(vec!["a".into(), "b".into()], lags, &[(0, 1)], |_| None);
    assert!(matches!(none, Err(Error::DecorationInconsistent(m)) if m.contains("(a > b)")));
}

#[test]
fn duplicates_are_detected() {
    let l = load("toyb.json");
    assert_eq!(find_duplicate(&poset(&l)), Ok(None));
    let p = sub_poset(&l, &[("a", "L"), ("b", "K"), ("c", "L")], &[(0, 1), (2, 1)], vec![]);
    assert_eq!(find_duplicate(&p), Ok(Some((0, 2))));
    let q = sub_poset(&l, &[("a", "L"), ("b", "K"), ("c", "L")], &[(0, 1)], vec![]);
    assert_eq!(find_duplicate(&q), Ok(None));
    let big: Vec<(String, &str)> = (0..13).map(|i| (format!("x{i}"), "L")).collect();
    let big: Vec<(&str, &str)> = big.iter().map(|(n, l)| (n.as_str(), *l)).collect();
    assert!(matches!(find_duplicate(&sub_poset(&l, &big, &[], vec![])), Err(Error::Unsupported(_))));
}

#[test]
fn canonical_semisimplicial_category_is_the_envelope() {
    for name in ["toyb.json", "toyc.json", "toyb_q.json"] {
        let l = load(name);
        let e = canonical_sss(&l.file.setup, &l.delta);
        assert_eq!(build_f_e(&e, &l.file.setup).unwrap(), l.cs.envelope, "{name}");
    }
}

#[test]
fn inconsistent_simplex_data_are_refused() {
    let l = load("toyb.json");
    let s = &l.file.setup;
    let e = canonical_sss(s, &l.delta);
    let two: Vec<usize> = e.simplices.keys().find(|k| k.len() == 3).unwrap().clone();

    let mut bad = e.clone();
    bad.simplices.insert(two.clone(), "nope".into());
    assert!(matches!(bad.check_decoration(s), Err(Error::DecorationInconsistent(m)) if m.contains("not a datum")));

    let mut bad = e.clone();
    bad.simplices.remove(&two[1..].to_vec());
    assert!(matches!(build_f_e(&bad, s), Err(Error::DecorationInconsistent(m)) if m.contains("missing")));

    let mut bad = e.clone();
    bad.simplices.insert(vec![two[0], two[0]], "0".into());
    assert!(matches!(bad.check_decoration(s), Err(Error::DecorationInconsistent(m)) if m.contains("degenerate")));
}

#[test]
fn entanglement_statistics() {
    let l = load("toyb.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let tower = entanglement_tower(&[e.clone()], 2, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap();
    let stats: Vec<EntanglementStats> = tower.iter().map(Entanglement::stats).collect();
    assert_eq!(stats[0].vertices, 4);
    assert_eq!(stats[0].edges, 12);
    assert_eq!(stats[0].simplices, Entanglement::single(e).stats().simplices);
    assert_eq!((stats[1].vertices, stats[1].edges, stats[1].edge_pairs), (8, 48, 12));
    assert_eq!(stats[1].simplices.get(&3), Some(&384));
    assert_eq!((stats[2].vertices, stats[2].edges, stats[2].edge_pairs), (12, 108, 36));
    assert_eq!(stats[2].simplices.get(&2), Some(&648));
    assert_eq!(stats[2].blocks, 3);
}

#[test]
fn entangled_edges_come_in_inverse_pairs_across_blocks() {
    let l = load("toyb.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let e1 = &entanglement_tower(&[e], 1, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap()[1];
    for &(u, v) in &e1.added_edges {
        assert_ne!(e1.block_of(u), e1.block_of(v));
        assert!(e1.sss.is_edge(v, u), "{} → {} has no partner", e1.sss.vertices[u], e1.sss.vertices[v]);
    }
    for s in &e1.added_simplices {
        let blocks: std::collections::BTreeSet<usize> = s.iter().map(|v| e1.block_of(*v)).collect();
        assert!(blocks.len() > 1);
    }
    assert_eq!(e1.sss.check_decoration(&l.file.setup), Ok(()));
}

#[test]
fn entangled_categories_satisfy_the_relations() {
    let l = load("toyb_q.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let tower = entanglement_tower(&[e], 1, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap();
    let f = build_f_e(&tower[1].sss, &l.file.setup).unwrap();
    assert!(check_ainf_relations(&f, 4).passed());
}

#[test]
fn bridge_holds_along_the_toyb_tower() {
    let l = load("toyb.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let tower = entanglement_tower(&[e.clone()], 2, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap();
    let mut prev = Entanglement::single(e);
    for (i, big) in tower.iter().enumerate() {
        let b = check_bridge(&prev, big, &l.cs).unwrap();
        assert!(b.passed(), "step {i}: {:?}", b.first_failure());
        assert_eq!(b.homs.len(), prev.sss.vertices.len().pow(2));
        prev = big.clone();
    }
}

#[test]
fn bridge_refuses_non_inclusions() {
    let l = load("toyb.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let tower = entanglement_tower(&[e], 1, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap();
    assert!(matches!(check_bridge(&tower[1], &tower[0], &l.cs), Err(Error::NotAnInclusion(_))));
}

#[test]
fn vertex_outside_every_zigzag_fails_surjectivity() {
    let l = load("toyc.json");
    let s = &l.file.setup;
    let e = canonical_sss(s, &l.delta);
    let oracle = OracleSpec {
        levels: 1,
        choices: s
            .composable_tuples()
            .into_iter()
            .map(|t| OracleChoice {
                tuple: t,
                faces: None,
                datum: "0".into(),
            })
            .collect(),
    };
    let e1 = entangle(&[e.clone(), e.clone()], 1, &oracle, s).unwrap();
    let b = check_bridge(&Entanglement::single(e), &e1, &l.cs).unwrap();
    assert!(b.hom_stable());
    assert_eq!(b.first_failure().unwrap(), "K#1 is not isomorphic to an old vertex");
}

#[test]
fn truncated_oracle_names_the_first_missing_simplex() {
    let l = load("toyb_truncated_oracle.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let err = entanglement_tower(&[e], 2, l.file.oracle.as_ref().unwrap(), &l.file.setup).unwrap_err();
    assert_eq!(err, Error::OracleIncomplete("(L, L'#1) (oracle covers level 1)".into()));
}

#[test]
fn bundled_wrapping_sequences_verify() {
    for name in ["toyb.json", "toyc.json"] {
        let l = load(name);
        let p = poset(&l);
        let v = SequenceVerifier::new(&p, &l.cs).unwrap();
        for seq in &p.wrapping_sequences {
            let r = v.verify(seq).unwrap();
            assert!(r.passed(), "{name} {:?}", r.sequence);
            assert_eq!(r.classes.len(), seq.len() - 1);
        }
    }
}

#[test]
fn bad_sequences_are_refused() {
    let l = load("toyc.json");
    let p = poset(&l);
    let v = SequenceVerifier::new(&p, &l.cs).unwrap();
    assert_eq!(v.verify(&[]).unwrap_err(), Error::EmptySequence);
    assert!(matches!(v.verify(&names(&l, &["p0", "p1"])), Err(Error::NotCofinal(_))));
    assert!(matches!(v.verify(&names(&l, &["p1", "p0"])), Err(Error::NotTotallyOrdered(_))));
    assert_eq!(
        v.verify(&names(&l, &["p0"])).unwrap_err(),
        Error::NotCofinal("p1 maps to p0 but lies above no element of the sequence".into())
    );
}

#[test]
fn tau_is_an_equivalence_for_the_bundled_posets() {
    for name in ["toyb.json", "toyc.json"] {
        let l = load(name);
        let t = tau_compare(&poset(&l), &l.cs).unwrap();
        assert!(t.iota_strict, "{name}");
        assert!(t.fully_faithful(), "{name}");
        assert!(t.essentially_surjective(), "{name}");
        assert!(t.homs.iter().all(|h| h.source_rank == h.target_rank && h.map_rank == h.source_rank));
    }
}

#[test]
fn tau_misses_lagrangians_absent_from_the_poset() {
    let l = load("toyb.json");
    let p = sub_poset(&l, &[("pL", "L"), ("pL'", "L'")], &[(1, 0)], vec![vec![0, 1], vec![1]]);
    let t = tau_compare(&p, &l.cs).unwrap();
    assert!(t.fully_faithful());
    assert!(!t.essentially_surjective());
    let missing: Vec<&str> = t.vertices.iter().filter(|v| v.zigzag.is_none()).map(|v| v.vertex.as_str()).collect();
    assert_eq!(missing.first(), Some(&"K"));
}

#[test]
fn tau_needs_every_element_on_a_sequence() {
    let l = load("toyb.json");
    let mut p = poset(&l);
    let k = p.index("pK").unwrap();
    p.wrapping_sequences.retain(|s| s.contains(&k));
    assert_eq!(tau_compare(&p, &l.cs).unwrap_err(), Error::NotSufficientlyWrapped("pL".into()));
}

#[test]
fn zero_steps_extend_by_nothing() {
    let l = load("toyc.json");
    let p = poset(&l);
    let x = extend_to_sufficiently_wrapped(&p, &l.cs, &ContinuationOracle { cs: &l.cs }, 0).unwrap();
    assert!(x.report.added.is_empty());
    assert_eq!(x.poset.names, p.names);
    assert_eq!(x.inclusion, (0..p.len()).collect::<Vec<_>>());
}

#[test]
fn extension_over_a_point_wraps_the_telescope() {
    let l = load("toyc.json");
    let p = sub_poset(&l, &[("p0", "L0")], &[], vec![]);
    let oracle = ContinuationOracle { cs: &l.cs };
    let x = extend_to_sufficiently_wrapped(&p, &l.cs, &oracle, 3).unwrap();
    assert!(x.report.passed(), "{:?}", x.report);
    assert_eq!(x.report.added, ["i0", "i1", "i2"]);
    let lags: Vec<&str> = x.poset.lagrangians[1..].iter().map(|l2| l.file.setup.name(*l2)).collect();
    assert_eq!(lags, ["L1", "L2", "L3"]);
    assert!(x.report.downward_closed);
    assert!(check_ainf_relations(&build_o_p(&x.poset, &l.file.setup).unwrap(), 4).passed());
    for k in [0, 1] {
        let x = extend_to_sufficiently_wrapped(&p, &l.cs, &oracle, k).unwrap();
        assert!(!x.report.passed());
    }
    assert!(matches!(extend_to_sufficiently_wrapped(&p, &l.cs, &oracle, 4), Err(Error::OracleRefused(m)) if m.starts_with("step 3")));
}

#[test]
fn extension_refusals_are_reported() {
    let l = load("toyb.json");
    let p = poset(&l);
    let refused = extend_to_sufficiently_wrapped(&p, &l.cs, &RefusingOracle, 1);
    assert!(matches!(refused, Err(Error::OracleRefused(m)) if m.starts_with("step 0")));
    let oracle = ContinuationOracle { cs: &l.cs };
    assert!(matches!(extend_to_sufficiently_wrapped(&p, &l.cs, &oracle, 4), Err(Error::OracleRefused(m)) if m.starts_with("step 1")));
    let one = extend_to_sufficiently_wrapped(&p, &l.cs, &oracle, 1).unwrap();
    assert!(one.report.localization.as_ref().unwrap().contains("ore"));
    assert!(!one.report.passed());
}
