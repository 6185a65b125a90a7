mod support;

use support::load;
use wrapcat_core::wrap::*;
use wrapcat_core::Error;

#[test]
fn strict_mode_requires_arrows_into_every_object() {
    for (name, missing) in [("toyb.json", "L'"), ("toyc.json", "L3"), ("toyb_plus.json", "L''")] {
        let l = load(name);
        let strict = validate_continuation_system(&l.cs, Mode::Strict);
        assert!(!strict.passed());
        let c = strict.check("nontrivial-arrows").unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.witness.as_ref().unwrap().ends_with(&format!("into {missing} from another object")));
        let finite = validate_continuation_system(&l.cs, Mode::Finite);
        assert!(finite.passed(), "{name}");
        assert_eq!(finite.check("nontrivial-arrows").unwrap().verdict, Verdict::Waived);
        for cond in ["identities", "composition", "ore", "cancellation", "cofinal-chain"] {
            assert_eq!(finite.check(cond).unwrap().verdict, Verdict::Pass, "{name} {cond}");
        }
    }
}

#[test]
fn missing_composite_breaks_closure() {
    let l = load("toyc_missing_composite.json");
    let r = validate_continuation_system(&l.cs, Mode::Finite);
    let c = r.check("composition").unwrap();
    assert_eq!(c.verdict, Verdict::Fail);
    assert!(c.witness.as_ref().unwrap().contains("[c10] ∘ [c21]"));
    assert!(matches!(wrapped_df_category(&l.cs, 3), Err(Error::SystemInvalid(_))));
}

#[test]
fn mode_names_parse() {
    assert_eq!(Mode::parse("strict").unwrap(), Mode::Strict);
    assert_eq!(Mode::parse("finite").unwrap(), Mode::Finite);
    assert!(Mode::parse("loose").is_err());
}

#[test]
fn toyb_hw_from_l_to_k_is_one_dimensional() {
    let l = load("toyb.json");
    let w = wrapped_df_category(&l.cs, 1).unwrap();
    let e = w.entry("L", "K").unwrap();
    assert_eq!(e.ranks, [(0, 1)].into());
    assert!(w.entry("K", "L").unwrap().ranks.is_empty());
}

#[test]
fn toyc_telescope_stabilizes_at_the_injective_rank() {
    let l = load("toyc.json");
    let err = wrapped_df_category(&l.cs, 2).err().unwrap();
    assert_eq!(err, Error::NotStabilized("(L0,L1), (L0,L2), (L0,K)".into()));
    let w = wrapped_df_category(&l.cs, 3).unwrap();
    assert_eq!(w.entry("L0", "K").unwrap().ranks, [(0, 2)].into());
    assert_eq!(w.entry("L3", "K").unwrap().ranks, [(0, 2)].into());
    let hf = l.cs.h.hom(0, 4).rank_in(0);
    assert_eq!(hf, 1);
}

#[test]
fn shallow_tables_flag_unstabilized_pairs() {
    let l = load("toyc.json");
    let t = hw_table(&l.cs, 1).unwrap();
    assert_eq!(t.len(), 25);
    let bad: Vec<String> = t.iter().filter(|e| !e.stabilized).map(|e| format!("({},{})", e.source, e.target)).collect();
    assert_eq!(bad.len(), 10);
    assert!(bad.contains(&"(L0,K)".to_string()));
}

#[test]
fn wrapping_categories_are_filtered_with_finite_chains() {
    for (name, lengths) in [("toyb.json", vec![1, 0, 1, 0]), ("toyc.json", vec![3, 2, 1, 0, 0])] {
        let l = load(name);
        for (x, len) in lengths.into_iter().enumerate() {
            let w = wrapping_category(&l.cs, x).unwrap();
            assert!(w.is_filtered(), "{name} {x}: {:?}", w.not_filtered);
            assert_eq!(w.chain.steps.len(), len, "{name} {x}");
        }
    }
}

#[test]
fn continuation_classes_become_invertible_and_act_bijectively() {
    for (name, depth) in [("toyb.json", 1), ("toyc.json", 3), ("toyb_plus.json", 2), ("toyb_q.json", 1)] {
        let l = load(name);
        let w = wrapped_df_category(&l.cs, depth).unwrap();
        for (class, _, inv) in continuation_images(&l.cs, &w) {
            assert!(inv, "{name}: {class}");
        }
        assert_eq!(right_locality(&l.cs, &w), Ok(()), "{name}");
    }
}

#[test]
fn morphisms_of_wrapped_setups() {
    let toyb = load("toyb.json");
    let plus = load("toyb_plus.json");
    let r = check_wawfs_morphism(&toyb.cs, &plus.cs).unwrap();
    assert!(r.passed());
    assert_eq!(r.induced.len(), 16);
    assert!(r.induced.iter().all(|p| p.source_rank == p.target_rank && p.map_rank == p.source_rank));
    assert!(check_wawfs_morphism(&toyb.cs, &toyb.cs).unwrap().passed());
    let bad = load("toyb_plus_mismatch.json");
    assert!(matches!(check_wawfs_morphism(&toyb.cs, &bad.cs), Err(Error::RestrictionMismatch(m)) if m.contains("[y]")));
}

#[test]
fn cone_localization_agrees_with_hw() {
    let b = check_localization_agreement(&load("toyb.json").cs, 4).unwrap();
    assert!(b.passed());
    assert!(b.all_stabilized());
    assert_eq!(b.pairs.len(), 16);
    let c = check_localization_agreement(&load("toyc.json").cs, 4).unwrap();
    assert!(c.passed());
    assert_eq!(c.stabilized_pairs, 21);
    for p in c.pairs.iter().filter(|p| p.stabilized_at.is_none()) {
        assert!(["L0", "L1"].contains(&p.source.as_str()) && ["L2", "L3"].contains(&p.target.as_str()), "{p:?}");
    }
}
