//! Wrapping categories, HW modules and the wrapped Donaldson–Fukaya category.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::system::ContinuationSystem;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::GradedModule;
use crate::loc::{chain_colimit, check_right_locality, check_right_multiplicative_system, gz_localize, Chain, FractionCategory, Slice};

pub const WINDOW: usize = 2;

fn require_rms(cs: &ContinuationSystem) -> Result<()> {
    let r = check_right_multiplicative_system(&cs.h, &cs.system);
    if r.is_right_multiplicative() {
        Ok(())
    } else {
        Err(Error::SystemInvalid(r.first_failure().unwrap_or_default()))
    }
}

/// System arrows into one object, with factorizations as morphisms.
pub struct WrappingCategory {
    pub slice: Slice,
    pub chain: Chain,
    /// `None` when filtered, otherwise a witness.
    pub not_filtered: Option<String>,
}

impl WrappingCategory {
    pub fn is_filtered(&self) -> bool {
        self.not_filtered.is_none()
    }
}

fn filteredness(cs: &ContinuationSystem, s: &Slice) -> Option<String> {
    let (h, sys) = (&cs.h, &cs.system);
    let n = s.objects.len();
    if n == 0 {
        return Some("empty".into());
    }
    let has = |a: usize, b: usize| s.morphisms.iter().any(|(x, y, _)| *x == a && *y == b);
    for a in 0..n {
        for b in 0..n {
            if !(0..n).any(|t| has(a, t) && has(b, t)) {
                return Some(format!(
                    "{} and {} have no common cocone",
                    sys.name(h, s.objects[a]),
                    sys.name(h, s.objects[b])
                ));
            }
        }
    }
    for (i, &(a, b, u)) in s.morphisms.iter().enumerate() {
        for &(a2, b2, v) in &s.morphisms[i + 1..] {
            if (a2, b2) != (a, b) {
                continue;
            }
            let (cu, cv) = (&sys.classes[u], &sys.classes[v]);
            let equalized = s.morphisms.iter().any(|&(p, _, w)| {
                let cw = &sys.classes[w];
                p == b
                    && h.compose(cw.source, cu.source, cu.target, &cw.vector, &cu.vector)
                        == h.compose(cw.source, cv.source, cv.target, &cw.vector, &cv.vector)
            });
            if !equalized {
                return Some(format!(
                    "{} and {} are not equalized",
                    sys.name(h, u),
                    sys.name(h, v)
                ));
            }
        }
    }
    None
}

pub fn wrapping_category(cs: &ContinuationSystem, x: usize) -> Result<WrappingCategory> {
    require_rms(cs)?;
    let slice = Slice::new(&cs.h, &cs.system, x);
    let chain = slice.cofinal_chain(&cs.h, &cs.system)?;
    let not_filtered = filteredness(cs, &slice);
    Ok(WrappingCategory {
        slice,
        chain,
        not_filtered,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HwEntry {
    pub source: String,
    pub target: String,
    pub ranks: BTreeMap<i32, usize>,
    pub stabilized: bool,
    pub chain_length: usize,
}

pub struct HwModule {
    pub module: GradedModule,
    pub stabilized: bool,
    pub chain: Chain,
}

/// `colim HF(Xᵢ, y)` along the chosen cofinal chain of `x`, truncated at `depth`.
pub fn hw_module(cs: &ContinuationSystem, x: usize, y: usize, depth: usize) -> Result<HwModule> {
    let w = wrapping_category(cs, x)?;
    let c = chain_colimit(&cs.h, &cs.system, &w.chain, y, depth, WINDOW)?;
    Ok(HwModule {
        module: c.colimit,
        stabilized: c.stabilized,
        chain: w.chain,
    })
}

/// HW ranks for every pair, with stabilization flags.
pub fn hw_table(cs: &ContinuationSystem, depth: usize) -> Result<Vec<HwEntry>> {
    require_rms(cs)?;
    let (h, sys) = (&cs.h, &cs.system);
    let n = h.object_count();
    let chains = (0..n)
        .map(|x| Slice::new(h, sys, x).cofinal_chain(h, sys))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    pairs
        .par_iter()
        .map(|&(x, y)| {
            let c = chain_colimit(h, sys, &chains[x], y, depth, WINDOW)?;
            Ok(HwEntry {
                source: h.objects[x].clone(),
                target: h.objects[y].clone(),
                ranks: c.colimit.ranks(),
                stabilized: c.stabilized,
                chain_length: chains[x].steps.len(),
            })
        })
        .collect()
}

pub struct WrappedDFCategory {
    pub fraction: FractionCategory,
    pub table: Vec<HwEntry>,
}

impl WrappedDFCategory {
    pub fn entry(&self, source: &str, target: &str) -> Option<&HwEntry> {
        self.table.iter().find(|e| e.source == source && e.target == target)
    }
}

/// All HW homs with fraction composition, after checking that every pair
/// stabilizes within `depth`.
pub fn wrapped_df_category(cs: &ContinuationSystem, depth: usize) -> Result<WrappedDFCategory> {
    let table = hw_table(cs, depth)?;
    let bad: Vec<String> = table
        .iter()
        .filter(|e| !e.stabilized)
        .map(|e| format!("({},{})", e.source, e.target))
        .collect();
    if !bad.is_empty() {
        return Err(Error::NotStabilized(bad.join(", ")));
    }
    let fraction = gz_localize(&cs.h, &cs.system, cs.system.classes.len())?;
    for e in &table {
        let (x, y) = (cs.h.object_index(&e.source).unwrap(), cs.h.object_index(&e.target).unwrap());
        if fraction.h.hom(x, y).ranks() != e.ranks {
            return Err(Error::NotStabilized(format!(
                "({},{}) chain colimit disagrees with the full slice colimit",
                e.source, e.target
            )));
        }
    }
    let lh = &fraction.h;
    lh.check_associativity().map_err(Error::RelationFailure)?;
    lh.check_unital().map_err(Error::RelationFailure)?;
    check_right_locality(&fraction, &cs.h, &cs.system).map_err(Error::SystemInvalid)?;
    Ok(WrappedDFCategory { fraction, table })
}

/// Images of the system classes under `H → HW`, checked for invertibility.
pub fn continuation_images(cs: &ContinuationSystem, w: &WrappedDFCategory) -> Vec<(String, SVec, bool)> {
    let lh = &w.fraction.h;
    (0..cs.system.classes.len())
        .map(|i| {
            let c = &cs.system.classes[i];
            let v = w.fraction.map_class(c.source, c.target, &c.vector);
            let inv = lh.inverse(c.source, c.target, &v).is_some();
            (cs.class_name(i), v, inv)
        })
        .collect()
}

/// Composing with every class on the right is bijective on each HW module.
pub fn right_locality(cs: &ContinuationSystem, w: &WrappedDFCategory) -> std::result::Result<(), String> {
    check_right_locality(&w.fraction, &cs.h, &cs.system)?;
    let ring = cs.h.ring;
    for (i, c) in cs.system.classes.iter().enumerate() {
        let img = w.fraction.map_class(c.source, c.target, &c.vector);
        for y in 0..cs.h.object_count() {
            let m = w.fraction.h.hom(y, c.source);
            let cols: Vec<SVec> = (0..m.rank())
                .map(|f| w.fraction.h.compose(y, c.source, c.target, &sparse::unit(f, ring), &img))
                .collect();
            let t = w.fraction.h.hom(y, c.target);
            if t.ranks() != m.ranks() || sparse::rank(ring, &cols) != m.rank() {
                return Err(format!("{} ∘ − is not bijective from {}", cs.class_name(i), cs.h.objects[y]));
            }
        }
    }
    Ok(())
}
