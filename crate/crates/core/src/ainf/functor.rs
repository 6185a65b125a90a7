//! First-order functors and quasi-equivalence checks.

use std::collections::BTreeMap;

use serde::Serialize;

use super::category::{AInfCategory, AInfOps};
use super::hcat::{cohomology_category, HCategory};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{check_chain_map, compose_graded_maps, induced_cohomology_map, GradedMap};

/// A functor given by its object map and first-order chain maps.
#[derive(Clone, Debug)]
pub struct NaiveFunctor {
    pub object_map: Vec<usize>,
    /// `hom(x,y) → hom(Fx,Fy)`, degree 0
    pub maps: BTreeMap<(usize, usize), GradedMap>,
    /// Whether all higher terms vanish.
    pub strict: bool,
}

impl NaiveFunctor {
    pub fn identity(a: &AInfCategory) -> Self {
        let n = a.objects.len();
        let mut maps = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                if !a.hom(x, y).is_zero() {
                    maps.insert((x, y), GradedMap::identity(a.hom(x, y)));
                }
            }
        }
        NaiveFunctor {
            object_map: (0..n).collect(),
            maps,
            strict: true,
        }
    }

    /// The inclusion of a full subcategory given by object indices.
    pub fn full_inclusion(sub: &AInfCategory, a: &AInfCategory, objects: &[usize]) -> Self {
        let mut maps = BTreeMap::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                if !sub.hom(i, j).is_zero() {
                    let cols = (0..sub.hom(i, j).rank()).map(|k| sparse::unit(k, a.ring)).collect();
                    maps.insert(
                        (i, j),
                        GradedMap::new(sub.hom(i, j).clone(), a.hom(*x, *y).clone(), 0, cols).expect("same basis"),
                    );
                }
            }
        }
        NaiveFunctor {
            object_map: objects.to_vec(),
            maps,
            strict: true,
        }
    }

    /// `g ∘ f`.
    pub fn then(&self, g: &NaiveFunctor) -> Result<NaiveFunctor> {
        let mut maps = BTreeMap::new();
        for ((x, y), m) in &self.maps {
            let (fx, fy) = (self.object_map[*x], self.object_map[*y]);
            if let Some(n) = g.maps.get(&(fx, fy)) {
                maps.insert((*x, *y), compose_graded_maps(m, n)?);
            }
        }
        Ok(NaiveFunctor {
            object_map: self.object_map.iter().map(|x| g.object_map[*x]).collect(),
            maps,
            strict: self.strict && g.strict,
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QuasiEquivalenceReport {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub failures: Vec<String>,
    /// target object → the image object it is isomorphic to
    pub witnesses: BTreeMap<String, String>,
}

impl QuasiEquivalenceReport {
    pub fn passed(&self) -> bool {
        self.fully_faithful && self.essentially_surjective
    }
}

/// Candidate degree-0 classes for isomorphism search: all vectors over small
/// finite fields, otherwise basis vectors and signed pairwise sums.
pub fn iso_candidates(h: &HCategory, x: usize, y: usize) -> Vec<SVec> {
    let ring = h.ring;
    let idx = h.degree_zero(x, y);
    if idx.is_empty() {
        return Vec::new();
    }
    if let Some(els) = ring.elements() {
        let q = els.len() as u64;
        if (q as f64).powi(idx.len() as i32) <= 65536.0 {
            let total = q.pow(idx.len() as u32);
            return (1..total)
                .map(|mut t| {
                    let mut v = Vec::new();
                    for i in &idx {
                        let c = &els[(t % q) as usize];
                        t /= q;
                        if !c.is_zero() {
                            v.push((*i, c.clone()));
                        }
                    }
                    v
                })
                .collect();
        }
    }
    let mut out: Vec<SVec> = idx.iter().map(|i| sparse::unit(*i, ring)).collect();
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            for s in [ring.one(), ring.minus_one()] {
                out.push(vec![(idx[a], ring.one()), (idx[b], s)]);
            }
        }
    }
    out
}

/// Searches for an isomorphism `x → y` at the cohomology level.
pub fn find_isomorphism(h: &HCategory, x: usize, y: usize) -> Option<(SVec, SVec)> {
    if x == y {
        let e = h.identity(x)?.clone();
        return Some((e.clone(), e));
    }
    for f in iso_candidates(h, x, y) {
        if let Some(g) = h.inverse(x, y, &f) {
            return Some((f, g));
        }
    }
    None
}

/// Fully-faithfulness and essential surjectivity of a functor at the level of
/// cohomology categories, given the induced maps on classes.
pub fn check_h_functor(
    hs: &HCategory,
    ht: &HCategory,
    object_map: &[usize],
    class_maps: &BTreeMap<(usize, usize), GradedMap>,
) -> QuasiEquivalenceReport {
    let ring = hs.ring;
    let mut r = QuasiEquivalenceReport {
        fully_faithful: true,
        essentially_surjective: true,
        ..Default::default()
    };
    let n = hs.object_count();
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (object_map[x], object_map[y]);
            let src = hs.hom(x, y);
            let tgt = ht.hom(fx, fy);
            let ok = match class_maps.get(&(x, y)) {
                Some(m) => {
                    src.ranks() == tgt.ranks() && sparse::rank(ring, m.columns()) == src.rank()
                }
                None => src.is_zero() && tgt.is_zero(),
            };
            if !ok {
                r.fully_faithful = false;
                r.failures.push(format!(
                    "H({},{}) → H({},{}) is not an isomorphism",
                    hs.objects[x], hs.objects[y], ht.objects[fx], ht.objects[fy]
                ));
            }
        }
    }
    for t in 0..ht.object_count() {
        let mut found = None;
        for x in 0..n {
            let fx = object_map[x];
            if fx == t || find_isomorphism(ht, fx, t).is_some() {
                found = Some(x);
                break;
            }
        }
        match found {
            Some(x) => {
                r.witnesses.insert(ht.objects[t].clone(), hs.objects[x].clone());
            }
            None => {
                r.essentially_surjective = false;
                r.failures.push(format!("{} is not isomorphic to any image object", ht.objects[t]));
            }
        }
    }
    r
}

/// Checks that a naive functor is a quasi-equivalence.
pub fn check_quasi_equivalence(f: &NaiveFunctor, src: &AInfCategory, tgt: &AInfCategory) -> Result<QuasiEquivalenceReport> {
    let n = src.objects.len();
    if f.object_map.len() != n || f.object_map.iter().any(|y| *y >= tgt.objects.len()) {
        return Err(Error::InvalidFunctor("object map does not match the categories".into()));
    }
    for x in 0..n {
        for y in 0..n {
            let m = src.hom(x, y);
            if m.is_zero() {
                continue;
            }
            let Some(map) = f.maps.get(&(x, y)) else {
                return Err(Error::InvalidFunctor(format!("no map on hom({},{})", src.objects[x], src.objects[y])));
            };
            let (fx, fy) = (f.object_map[x], f.object_map[y]);
            if map.degree != 0 || map.target != *tgt.hom(fx, fy) {
                return Err(Error::InvalidFunctor(format!("map on hom({},{}) has wrong shape", src.objects[x], src.objects[y])));
            }
            check_chain_map(map, &src.hom_complex(x, y)?, &tgt.hom_complex(fx, fy)?)
                .map_err(|e| Error::InvalidFunctor(e.to_string()))?;
        }
    }
    if f.strict {
        // μ² must be intertwined exactly
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = (src.hom(x, y), src.hom(y, z));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let (fx, fy, fz) = (f.object_map[x], f.object_map[y], f.object_map[z]);
                    for i in 0..a.rank() {
                        for j in 0..b.rank() {
                            let (ei, ej) = (sparse::unit(i, src.ring), sparse::unit(j, src.ring));
                            let lhs = src.mu(&[x, y, z], &[i, j]);
                            let lhs = match f.maps.get(&(x, z)) {
                                Some(m) => m.apply(&lhs),
                                None => Vec::new(),
                            };
                            let rhs = tgt.mu_vec(&[fx, fy, fz], &[f.maps[&(x, y)].apply(&ei), f.maps[&(y, z)].apply(&ej)]);
                            if lhs != rhs {
                                return Err(Error::InvalidFunctor(format!(
                                    "μ² not preserved on ({}, {})",
                                    a.label(i),
                                    b.label(j)
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    let hs = cohomology_category(src, &src.unit_vectors())?;
    let ht = cohomology_category(tgt, &tgt.unit_vectors())?;
    let mut class_maps = BTreeMap::new();
    for ((x, y), map) in &f.maps {
        let (fx, fy) = (f.object_map[*x], f.object_map[*y]);
        let (Some(ps), Some(pt)) = (hs.presentation(*x, *y), ht.presentation(fx, fy)) else {
            continue;
        };
        let m = induced_cohomology_map(map, &src.hom_complex(*x, *y)?, &tgt.hom_complex(fx, fy)?, ps, pt)?;
        class_maps.insert((*x, *y), m);
    }
    // pairs with zero source cohomology still need zero target cohomology
    for x in 0..n {
        for y in 0..n {
            if !class_maps.contains_key(&(x, y)) && !hs.hom(x, y).is_zero() {
                let (fx, fy) = (f.object_map[x], f.object_map[y]);
                class_maps.insert((x, y), GradedMap::zero(hs.hom(x, y).clone(), ht.hom(fx, fy).clone(), 0));
            }
        }
    }
    Ok(check_h_functor(&hs, &ht, &f.object_map, &class_maps))
}
