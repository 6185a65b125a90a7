//! One line per acceptance criterion, written straight to stderr so that it
//! shows up without `--nocapture`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{fixture, load};
use wrapcat_core::ainf::{check_ainf_relations, AInfOps, TwistedExtension};
use wrapcat_core::linalg::Ring;
use wrapcat_core::poset::*;
use wrapcat_core::setup::{all_compatible_collections, canonical_envelope, check_envelope_independence, choose_compatible_collection, Strategy};
use wrapcat_core::wrap::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relations<A: AInfOps>(what: &str, a: &A) -> Result<(), String> {
    let r = check_ainf_relations(a, 4);
    ensure(r.passed(), || format!("{what}: {} violations, first {:?}", r.total_violations, r.violations.first()))
}

fn ainf_soundness() -> Outcome {
    let mut rings = BTreeSet::new();
    let mut count = 0;
    for name in ["toyb.json", "toyb_q.json", "toyc.json", "toyb_plus.json", "micro2datum.json"] {
        let f = fixture(name);
        let delta = choose_compatible_collection(&f.setup, Strategy::Lexicographic).map_err(|e| e.to_string())?;
        let env = canonical_envelope(&f.setup, &delta).map_err(|e| e.to_string())?;
        relations(&format!("{name} envelope"), &env)?;
        rings.insert(format!("{:?}", env.ring));
        count += 1;
    }
    for name in ["toyb.json", "toyb_q.json", "toyc.json"] {
        let l = load(name);
        let p = DecoratedPoset::from_spec(l.file.poset.as_ref().unwrap(), &l.delta).map_err(|e| e.to_string())?;
        relations(&format!("{name} O_P"), &build_o_p(&p, &l.file.setup).map_err(|e| e.to_string())?)?;
        let t = TwistedExtension::with_cones(&l.cs.envelope, &l.cs.cones()).map_err(|e| e.to_string())?;
        relations(&format!("{name} cones"), &t)?;
        count += 2;
        if let Some(oracle) = &l.file.oracle {
            let e = canonical_sss(&l.file.setup, &l.delta);
            let tower = entanglement_tower(&[e], 2, oracle, &l.file.setup).map_err(|e| e.to_string())?;
            for (i, level) in tower.iter().enumerate() {
                let f = build_f_e(&level.sss, &l.file.setup).map_err(|e| e.to_string())?;
                relations(&format!("{name} F_E{i}"), &f)?;
                count += 1;
            }
        }
    }
    ensure(rings.len() == 2, || format!("rings covered: {rings:?}"))?;
    Ok(format!("{count} categories over {}", rings.into_iter().collect::<Vec<_>>().join(" and ")))
}

fn fraction_oracle() -> Outcome {
    let instances = support::paths::valid_instances(20, 24);
    ensure(instances.len() >= 20, || format!("only {} instances", instances.len()))?;
    for (i, (cat, s)) in instances.iter().enumerate() {
        let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
        support::paths::compare(cat, s, ring).map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(format!("{} path categories", instances.len()))
}

fn cohomology_agreement() -> Outcome {
    let mut notes = Vec::new();
    for name in ["toyb.json", "toyc.json"] {
        let l = load(name);
        let r = check_localization_agreement(&l.cs, 4).map_err(|e| e.to_string())?;
        ensure(r.window == 2, || format!("window {}", r.window))?;
        ensure(r.passed(), || {
            let bad: Vec<_> = r.pairs.iter().filter(|p| p.stabilized_at.is_some() && !(p.ranks_agree && p.kernels_agree)).collect();
            format!("{name}: disagreement on {bad:?}")
        })?;
        notes.push(format!("{name} {}/{} stabilized", r.stabilized_pairs, r.pairs.len()));
    }
    Ok(notes.join(", "))
}

fn envelope_independence() -> Outcome {
    let f = fixture("micro2datum.json");
    let all = all_compatible_collections(&f.setup, 16).map_err(|e| e.to_string())?;
    ensure(all.len() >= 2, || format!("{} collections", all.len()))?;
    let mut homs = 0;
    for (i, d1) in all.iter().enumerate() {
        for d2 in &all[i + 1..] {
            let r = check_envelope_independence(&f.setup, d1, d2).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{:?}", r.failures))?;
            ensure(r.pairs.iter().all(|p| p.cohomology_iso && p.homotopy_verified), || "unverified pair".into())?;
            homs += r.pairs.len();
        }
    }
    Ok(format!("{} collections, {homs} homs", all.len()))
}

fn right_locality_finite() -> Outcome {
    let mut notes = Vec::new();
    for name in ["toyb.json", "toyc.json"] {
        let l = load(name);
        let v = validate_continuation_system(&l.cs, Mode::Finite);
        ensure(v.passed(), || format!("{name}: finite validation failed"))?;
        let w = wrapped_df_category(&l.cs, l.cs.system.classes.len()).map_err(|e| e.to_string())?;
        right_locality(&l.cs, &w).map_err(|e| format!("{name}: {e}"))?;
        notes.push(format!("{name} {} classes", l.cs.system.classes.len()));
    }
    Ok(notes.join(", "))
}

fn bridge() -> Outcome {
    let l = load("toyb.json");
    let e = canonical_sss(&l.file.setup, &l.delta);
    let tower = entanglement_tower(&[e.clone()], 2, l.file.oracle.as_ref().unwrap(), &l.file.setup).map_err(|e| e.to_string())?;
    let mut prev = Entanglement::single(e);
    for (i, big) in tower.iter().enumerate() {
        let b = check_bridge(&prev, big, &l.cs).map_err(|e| e.to_string())?;
        ensure(b.passed(), || format!("step {i}: {:?}", b.first_failure()))?;
        prev = big.clone();
    }
    Ok(format!("{} inclusions", tower.len()))
}

fn comparison() -> Outcome {
    let l = load("toyb.json");
    let p = DecoratedPoset::from_spec(l.file.poset.as_ref().unwrap(), &l.delta).map_err(|e| e.to_string())?;
    let t = tau_compare(&p, &l.cs).map_err(|e| e.to_string())?;
    ensure(t.fully_faithful(), || "not fully faithful".into())?;
    ensure(t.essentially_surjective(), || "not essentially surjective".into())?;
    ensure(t.homs.iter().all(|h| h.source_rank == h.target_rank), || "rank mismatch".into())?;
    Ok(format!("{} pairs, {} vertices", t.homs.len(), t.vertices.len()))
}

fn integer_backend() -> Outcome {
    use support::integer::*;
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for i in 0..25 {
        let (c, _) = random_complex(&mut rng, 6);
        let oracle = oracle_cohomology(&c);
        let got = computed(&c.to_complex(), c.dims.len());
        ensure(got == oracle, || format!("complex {i}: {got:?} vs {oracle:?}"))?;
    }
    Ok("25 complexes".into())
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn determinism() -> Outcome {
    let text = std::fs::read_to_string(fixtures_dir().join("golden/cases.txt")).map_err(|e| e.to_string())?;
    let cases: Vec<(String, Vec<String>)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let parts: Vec<&str> = l.split('\t').collect();
            (parts[0].to_string(), parts[2].split_whitespace().map(String::from).collect())
        })
        .collect();
    let run = |args: &[String], threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_wrapcat"))
            .args(args)
            .current_dir(fixtures_dir())
            .env("WRAPCAT_THREADS", threads)
            .output()
            .map(|o| (o.stdout, o.status.code()))
    };
    let failures: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|(name, args)| {
                s.spawn(move || {
                    let runs: Vec<_> = ["1", "1", "4"].iter().map(|t| run(args, t).unwrap()).collect();
                    (!runs.windows(2).all(|w| w[0] == w[1])).then(|| name.clone())
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().unwrap()).collect()
    });
    ensure(failures.is_empty(), || format!("differing reports: {failures:?}"))?;
    Ok(format!("{} commands × 3 runs", cases.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("A∞ relations to arity 4", ainf_soundness, Some(Duration::from_secs(5))),
        ("fraction calculus against the roof oracle", fraction_oracle, Some(Duration::from_secs(30))),
        ("cone quotient H⁰ against HW", cohomology_agreement, Some(Duration::from_secs(60))),
        ("envelope independence on micro2datum", envelope_independence, None),
        ("right locality in finite mode", right_locality_finite, None),
        ("bridge along E_δ ⊂ E0 ⊂ E1 ⊂ E2", bridge, None),
        ("τ fully faithful and essentially surjective", comparison, None),
        ("integer cohomology against the SNF oracle", integer_backend, None),
        ("byte-identical CLI reports", determinism, None),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    writeln!(err).unwrap();
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        writeln!(err, "acceptance {} {tag} {name}: {detail} ({:.2} s)", i + 1, elapsed.as_secs_f64()).unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
