//! Continuation systems on the canonical envelope and their validation.

use serde::Serialize;

use crate::ainf::{cohomology_category, AInfCategory, AInfOps, ConeSpec, HCategory};
use crate::error::{Error, Result};
use crate::io::ContinuationSpec;
use crate::linalg::sparse::SVec;
use crate::loc::{check_right_multiplicative_system, Class, MultiplicativeSystem, Slice};
use crate::setup::{canonical_envelope, CompatibleCollection, WeakFloerSetup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Strict,
    Finite,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "strict" => Ok(Mode::Strict),
            "finite" => Ok(Mode::Finite),
            _ => Err(Error::Schema(format!("unknown mode {s:?}"))),
        }
    }
}

/// A set of degree-0 classes of the envelope's cohomology category, each
/// with a closed chain-level representative.
pub struct ContinuationSystem {
    pub setup: WeakFloerSetup,
    pub delta: CompatibleCollection,
    pub envelope: AInfCategory,
    pub h: HCategory,
    pub system: MultiplicativeSystem,
    /// Representative cycle of each class of `system`.
    pub cycles: Vec<SVec>,
}

impl ContinuationSystem {
    pub fn build(s: &WeakFloerSetup, delta: &CompatibleCollection, spec: &ContinuationSpec) -> Result<Self> {
        let envelope = canonical_envelope(s, delta)?;
        let units = envelope.unit_vectors();
        let h = cohomology_category(&envelope, &units)?;
        let mut system = MultiplicativeSystem::default();
        let mut cycles = Vec::new();
        if spec.include_units {
            for (x, u) in &units {
                let e = h.identity(*x).cloned().unwrap_or_default();
                let before = system.classes.len();
                system.push(Class {
                    source: *x,
                    target: *x,
                    vector: e,
                });
                if system.classes.len() > before {
                    cycles.push(u.clone());
                }
            }
        }
        for c in &spec.maps {
            let name = s.tuple_name(&[c.source, c.target]);
            let m = envelope.hom(c.source, c.target);
            if !c.cycle.is_empty() && m.vector_degree(&c.cycle) != Some(0) {
                return Err(Error::NotClosedRepresentative(format!("{name} is not of degree 0")));
            }
            if !envelope.hom_complex(c.source, c.target)?.d(&c.cycle).is_empty() {
                return Err(Error::NotClosedRepresentative(name));
            }
            let vector = match h.presentation(c.source, c.target) {
                Some(p) => p.project(0, &c.cycle)?,
                None => Vec::new(),
            };
            let before = system.classes.len();
            system.push(Class {
                source: c.source,
                target: c.target,
                vector,
            });
            if system.classes.len() > before {
                cycles.push(c.cycle.clone());
            }
        }
        Ok(ContinuationSystem {
            setup: s.clone(),
            delta: delta.clone(),
            envelope,
            h,
            system,
            cycles,
        })
    }

    pub fn class_name(&self, i: usize) -> String {
        let c = &self.system.classes[i];
        format!(
            "{}: {} → {}",
            self.system.name(&self.h, i),
            self.h.objects[c.source],
            self.h.objects[c.target]
        )
    }

    /// Cones of the non-identity classes, on their representative cycles.
    pub fn cones(&self) -> Vec<ConeSpec> {
        (0..self.system.classes.len())
            .filter(|i| !self.system.is_identity(&self.h, *i))
            .map(|i| {
                let c = &self.system.classes[i];
                ConeSpec {
                    name: format!("Cone({})", self.system.name(&self.h, i)),
                    source: c.source,
                    target: c.target,
                    morphism: self.cycles[i].clone(),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Waived,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemCheck {
    pub condition: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuationReport {
    pub mode: Mode,
    pub checks: Vec<SystemCheck>,
}

impl ContinuationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&SystemCheck> {
        self.checks.iter().find(|c| c.condition == name)
    }
}

/// Conditions (i)–(iv) are always enforced; the existence of non-identity
/// arrows into every object and of finite cofinal chains is waived in
/// finite mode.
pub fn validate_continuation_system(cs: &ContinuationSystem, mode: Mode) -> ContinuationReport {
    let h = &cs.h;
    let rms = check_right_multiplicative_system(h, &cs.system);
    let mut checks = Vec::new();
    for name in ["identities", "composition", "ore", "cancellation", "nontrivial-arrows"] {
        let c = rms.condition(name).expect("all conditions reported");
        let waivable = name == "nontrivial-arrows";
        let verdict = match (c.passed, waivable, mode) {
            (true, _, _) => Verdict::Pass,
            (false, true, Mode::Finite) => Verdict::Waived,
            _ => Verdict::Fail,
        };
        checks.push(SystemCheck {
            condition: name.to_string(),
            verdict,
            witness: c.witness.clone(),
        });
    }
    let mut witness = None;
    if rms.is_right_multiplicative() {
        for x in 0..h.object_count() {
            if let Err(e) = Slice::new(h, &cs.system, x).cofinal_chain(h, &cs.system) {
                witness = Some(e.to_string());
                break;
            }
        }
    } else {
        witness = Some("conditions (i)–(iv) fail".into());
    }
    checks.push(SystemCheck {
        condition: "cofinal-chain".into(),
        verdict: match (witness.is_none(), mode) {
            (true, _) => Verdict::Pass,
            (false, Mode::Finite) => Verdict::Waived,
            (false, Mode::Strict) => Verdict::Fail,
        },
        witness,
    });
    ContinuationReport { mode, checks }
}
