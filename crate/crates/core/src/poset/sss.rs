//! Decorated semisimplicial sets and their A∞-categories `𝓕_E`.

use std::collections::BTreeMap;

use crate::ainf::{cohomology_category, AInfCategory, HCategory};
use crate::error::{Error, Result};
use crate::loc::{Class, MultiplicativeSystem};
use crate::setup::{unit_label, CompatibleCollection, WeakFloerSetup};
use crate::wrap::ContinuationSystem;

/// Vertices labelled by Lagrangians; a `k`-simplex is an ordered tuple of
/// `k + 1` distinct vertices carrying a datum of its Lagrangian tuple.
/// Faces are the subtuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecoratedSSSet {
    pub vertices: Vec<String>,
    pub lagrangians: Vec<usize>,
    pub simplices: BTreeMap<Vec<usize>, String>,
}

impl DecoratedSSSet {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn tuple(&self, simplex: &[usize]) -> Vec<usize> {
        simplex.iter().map(|v| self.lagrangians[*v]).collect()
    }

    pub fn simplex_name(&self, simplex: &[usize]) -> String {
        let names: Vec<&str> = simplex.iter().map(|v| self.vertices[*v].as_str()).collect();
        format!("({})", names.join(", "))
    }

    pub fn is_edge(&self, p: usize, q: usize) -> bool {
        self.simplices.contains_key(&vec![p, q])
    }

    /// Number of simplices in each dimension, vertices included.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        if !self.vertices.is_empty() {
            out.insert(0, self.vertices.len());
        }
        for s in self.simplices.keys() {
            *out.entry(s.len() - 1).or_insert(0) += 1;
        }
        out
    }

    /// Face closure, composability and face compatibility of the data.
    pub fn check_decoration(&self, s: &WeakFloerSetup) -> Result<()> {
        for (simplex, name) in &self.simplices {
            let t = self.tuple(simplex);
            let mut seen = simplex.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != simplex.len() || simplex.len() < 2 {
                return Err(Error::DecorationInconsistent(format!("{} is degenerate", self.simplex_name(simplex))));
            }
            if !s.is_composable(&t) {
                return Err(Error::DecorationInconsistent(format!("{} is not composable", s.tuple_name(&t))));
            }
            let d = s
                .datum(&t, name)
                .ok_or_else(|| Error::DecorationInconsistent(format!("{name} is not a datum of {}", s.tuple_name(&t))))?;
            if simplex.len() > 2 {
                for j in 0..simplex.len() {
                    let mut face = simplex.clone();
                    face.remove(j);
                    match self.simplices.get(&face) {
                        None => {
                            return Err(Error::DecorationInconsistent(format!(
                                "face {} of {} is missing",
                                self.simplex_name(&face),
                                self.simplex_name(simplex)
                            )))
                        }
                        Some(f) if d.faces.get(j) != Some(f) => {
                            return Err(Error::DecorationInconsistent(format!(
                                "face {j} of {} disagrees with {}",
                                self.simplex_name(simplex),
                                self.simplex_name(&face)
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// One vertex per Lagrangian and one simplex per composable tuple, decorated by `δ`.
pub fn canonical_sss(s: &WeakFloerSetup, delta: &CompatibleCollection) -> DecoratedSSSet {
    DecoratedSSSet {
        vertices: s.lagrangians.clone(),
        lagrangians: (0..s.lagrangians.len()).collect(),
        simplices: s
            .composable_tuples()
            .into_iter()
            .filter_map(|t| delta.get(&t).map(|d| (t, d.to_string())))
            .collect(),
    }
}

/// `hom(p,q) = CF(L_p, L_q)` along edges, strict units, and the operations
/// of the simplex data.
pub fn build_f_e(e: &DecoratedSSSet, s: &WeakFloerSetup) -> Result<AInfCategory> {
    e.check_decoration(s)?;
    let mut a = AInfCategory::new(s.ring, e.vertices.clone());
    for simplex in e.simplices.keys().filter(|k| k.len() == 2) {
        a.set_hom(simplex[0], simplex[1], s.cf(e.lagrangians[simplex[0]], e.lagrangians[simplex[1]]));
    }
    for (simplex, name) in &e.simplices {
        let d = s.datum(&e.tuple(simplex), name).expect("checked decoration");
        for (inputs, out) in &d.ops {
            a.add_op(simplex, inputs, out)?;
        }
    }
    a.adjoin_strict_units(unit_label)?;
    Ok(a)
}

/// `𝓕_E` with its cohomology and the system `C_E` of classes of `C` on edges.
pub struct SSSCategory {
    pub sss: DecoratedSSSet,
    pub ainf: AInfCategory,
    pub h: HCategory,
    pub system: MultiplicativeSystem,
}

impl SSSCategory {
    pub fn build(e: &DecoratedSSSet, cs: &ContinuationSystem) -> Result<Self> {
        let ainf = build_f_e(e, &cs.setup)?;
        let h = cohomology_category(&ainf, &ainf.unit_vectors())?;
        let mut system = MultiplicativeSystem::with_identities(&h, Vec::new());
        for simplex in e.simplices.keys().filter(|k| k.len() == 2) {
            let (p, q) = (simplex[0], simplex[1]);
            for (i, c) in cs.system.classes.iter().enumerate() {
                if c.source != e.lagrangians[p] || c.target != e.lagrangians[q] || cs.system.is_identity(&cs.h, i) {
                    continue;
                }
                let vector = match h.presentation(p, q) {
                    Some(pr) => pr.project(0, &cs.cycles[i])?,
                    None => Vec::new(),
                };
                system.push(Class { source: p, target: q, vector });
            }
        }
        Ok(SSSCategory {
            sss: e.clone(),
            ainf,
            h,
            system,
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
}
