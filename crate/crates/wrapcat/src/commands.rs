use std::path::Path;

use serde_json::{json, Value};
use wrapcat_core::io::{OracleSpec, SetupFile};
use wrapcat_core::loc::localize_by_cones;
use wrapcat_core::poset::{canonical_sss, check_bridge, entanglement_tower, tau_compare, DecoratedPoset, Entanglement};
use wrapcat_core::setup::{
    all_compatible_collections, check_envelope_independence, choose_compatible_collection, promote_to_full, validate_setup, CompatibleCollection,
    Profile, Strategy,
};
use wrapcat_core::wrap::{
    check_localization_agreement, continuation_images, hw_table, right_locality, validate_continuation_system, wrapped_df_category, ContinuationSystem,
    HwEntry, Mode, WINDOW,
};
use wrapcat_core::{Error, Result};

use crate::report::Report;
use crate::{ProfileArg, What};

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn file_label(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

struct Loaded {
    file: SetupFile,
    delta: CompatibleCollection,
}

fn load(path: &Path) -> Result<Loaded> {
    let file = SetupFile::read(path)?;
    let delta = choose_compatible_collection(&file.setup, Strategy::Lexicographic)?;
    Ok(Loaded { file, delta })
}

fn system(l: &Loaded) -> Result<ContinuationSystem> {
    let spec = l
        .file
        .continuation
        .as_ref()
        .ok_or_else(|| Error::Schema(format!("{}: no continuation block", l.file.name)))?;
    ContinuationSystem::build(&l.file.setup, &l.delta, spec)
}

/// Runs `f` and records its error, if any, on the report.
fn guarded(report: &mut Report, f: impl FnOnce(&mut Report) -> Result<()>) {
    if let Err(e) = f(report) {
        report.error(&e);
    }
}

/// Axiom verdicts for the setup, then the continuation system if present.
/// Returns whether both pass.
fn validation(report: &mut Report, l: &Loaded, mode: Mode, profile: ProfileArg) -> Result<bool> {
    let setup = match (profile, l.file.setup.profile) {
        (ProfileArg::Full, Profile::Envelope) => promote_to_full(&l.file.setup),
        _ => l.file.setup.clone(),
    };
    let sr = validate_setup(&setup);
    report.set("setup", to_json(&sr));
    let mut ok = sr.passed();
    if l.file.continuation.is_some() {
        let cs = system(l)?;
        let cr = validate_continuation_system(&cs, mode);
        ok &= cr.passed();
        report.set("continuation", to_json(&cr));
    } else {
        report.set("continuation", Value::Null);
    }
    Ok(ok)
}

pub fn validate(path: &Path, mode: Mode, profile: ProfileArg) -> Report {
    let mut report = Report::new("validate", file_label(path));
    guarded(&mut report, |r| {
        let l = load(path)?;
        r.set("mode", to_json(&mode));
        if !validation(r, &l, mode, profile)? {
            r.fail();
        }
        Ok(())
    });
    report
}

fn hw_rows(table: &[HwEntry]) -> Value {
    to_json(&table)
}

pub fn compute(path: &Path, what: What, depth: Option<usize>, mode: Mode) -> Report {
    let mut report = Report::new("compute", file_label(path));
    guarded(&mut report, |r| {
        let l = load(path)?;
        r.set("what", json!(what.name()));
        if what == What::Independence {
            return independence(r, &l);
        }
        let mut pre = Report::new("validate", String::new());
        let valid = validation(&mut pre, &l, mode, ProfileArg::Auto)?;
        if !valid {
            r.set("validation", pre.to_value());
            return Err(Error::ValidationRequired(format!("validation fails in {} mode", mode_name(mode))));
        }
        let cs = system(&l)?;
        let depth = depth.unwrap_or(match what {
            What::Hw | What::Dfcat => cs.system.classes.len(),
            _ => 4,
        });
        r.set("depth", json!(depth));
        match what {
            What::Hw => {
                let table = hw_table(&cs, depth)?;
                r.set("hw", hw_rows(&table));
                let bad: Vec<String> = table
                    .iter()
                    .filter(|e| !e.stabilized)
                    .map(|e| format!("({},{})", e.source, e.target))
                    .collect();
                if !bad.is_empty() {
                    return Err(Error::NotStabilized(bad.join(", ")));
                }
            }
            What::Dfcat => {
                r.set("hw", hw_rows(&hw_table(&cs, depth)?));
                let w = wrapped_df_category(&cs, depth)?;
                let images: Vec<Value> = continuation_images(&cs, &w)
                    .into_iter()
                    .map(|(class, _, invertible)| json!({ "class": class, "invertible": invertible }))
                    .collect();
                let all_inv = images.iter().all(|v| v["invertible"] == json!(true));
                r.set("continuation_images", Value::Array(images));
                let rl = right_locality(&cs, &w);
                r.set("right_locality", json!({ "passed": rl.is_ok(), "witness": rl.err() }));
                if !all_inv || r.body["right_locality"]["passed"] != json!(true) {
                    r.fail();
                }
            }
            What::Localize => {
                let q = localize_by_cones(&cs.envelope, &cs.cones(), depth, WINDOW)?;
                if q.pairs.iter().any(|p| p.stabilized_at.is_none()) {
                    r.fail();
                }
                r.set("localization", to_json(&q));
            }
            What::Agree => {
                let a = check_localization_agreement(&cs, depth)?;
                if !a.passed() {
                    r.fail();
                }
                r.set("agreement", to_json(&a));
            }
            What::Independence => unreachable!(),
        }
        Ok(())
    });
    report
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Strict => "strict",
        Mode::Finite => "finite",
    }
}

/// Compares the envelopes of the first two compatible collections.
fn independence(r: &mut Report, l: &Loaded) -> Result<()> {
    let all = all_compatible_collections(&l.file.setup, 2)?;
    if all.len() < 2 {
        return Err(Error::HypothesisFailed(format!("{} has a single compatible collection", l.file.name)));
    }
    let rep = check_envelope_independence(&l.file.setup, &all[0], &all[1])?;
    if !rep.passed() {
        r.fail();
    }
    r.set("independence", to_json(&rep));
    Ok(())
}

pub fn entangle(path: &Path, level: usize, compare: bool) -> Report {
    let mut report = Report::new("entangle", file_label(path));
    guarded(&mut report, |r| {
        let l = load(path)?;
        r.set("level", json!(level));
        let e_delta = canonical_sss(&l.file.setup, &l.delta);
        let empty = OracleSpec { levels: 0, choices: Vec::new() };
        let oracle = l.file.oracle.as_ref().unwrap_or(&empty);
        let base = Entanglement::single(e_delta.clone());
        r.set("e_delta", to_json(&base.stats()));
        let tower = entanglement_tower(&[e_delta], level, oracle, &l.file.setup)?;
        r.set("tower", Value::Array(tower.iter().map(|e| to_json(&e.stats())).collect()));
        if !compare {
            return Ok(());
        }
        let cs = system(&l)?;
        let mut bridges = Vec::new();
        let mut prev = &base;
        for (i, e) in tower.iter().enumerate() {
            let b = check_bridge(prev, e, &cs)?;
            if !b.passed() {
                r.fail();
            }
            bridges.push(json!({
                "step": if i == 0 { "E_δ ⊂ E0".to_string() } else { format!("E{} ⊂ E{i}", i - 1) },
                "passed": b.passed(),
                "hom_stable": b.hom_stable(),
                "essentially_surjective": b.essentially_surjective(),
                "first_failure": b.first_failure(),
                "homs": to_json(&b.homs),
                "vertices": to_json(&b.vertices),
            }));
            prev = e;
        }
        r.set("bridge", Value::Array(bridges));
        if let Some(spec) = &l.file.poset {
            let p = DecoratedPoset::from_spec(spec, &l.delta)?;
            let t = tau_compare(&p, &cs)?;
            if !t.passed() {
                r.fail();
            }
            r.set(
                "tau",
                json!({
                    "passed": t.passed(),
                    "iota_strict": t.iota_strict,
                    "fully_faithful": t.fully_faithful(),
                    "essentially_surjective": t.essentially_surjective(),
                    "sequences": t.sequences.iter().map(|s| json!({
                        "sequence": s.sequence,
                        "classes": s.classes,
                        "passed": s.passed(),
                    })).collect::<Vec<_>>(),
                    "homs": to_json(&t.homs),
                    "vertices": to_json(&t.vertices),
                }),
            );
        }
        Ok(())
    });
    report
}
