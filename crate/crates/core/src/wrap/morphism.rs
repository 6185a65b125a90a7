//! Morphisms of weakly wrapped setups: inclusions compatible with the
//! continuation systems, and the induced map on HW.

use serde::Serialize;

use super::system::ContinuationSystem;
use crate::ainf::AInfOps;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::loc::gz_localize;

#[derive(Clone, Debug, Serialize)]
pub struct InducedPair {
    pub source: String,
    pub target: String,
    pub source_rank: usize,
    pub target_rank: usize,
    pub map_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub objects: Vec<(String, String)>,
    pub tuples_checked: usize,
    pub induced: Vec<InducedPair>,
    /// The fractions over the source are sent compatibly with their relations.
    pub well_defined: bool,
    /// `H → HW → HW′` equals `H → H′ → HW′` on all classes.
    pub square_commutes: bool,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.square_commutes
    }
}

/// Checks that `src` includes into `tgt` (objects, composable tuples, Floer
/// complexes and envelope operations) with `tgt`'s classes between objects
/// of `src` exactly those of `src`, and records the induced map on HW.
pub fn check_wawfs_morphism(src: &ContinuationSystem, tgt: &ContinuationSystem) -> Result<MorphismReport> {
    let (s, t) = (&src.setup, &tgt.setup);
    let ring = src.h.ring;
    if ring != tgt.h.ring {
        return Err(Error::NotAnInclusion("coefficient rings differ".into()));
    }
    let map: Vec<usize> = s
        .lagrangians
        .iter()
        .map(|l| t.index(l).ok_or_else(|| Error::NotAnInclusion(format!("{l} is missing from the target"))))
        .collect::<Result<_>>()?;
    let image = |tu: &[usize]| -> Vec<usize> { tu.iter().map(|i| map[*i]).collect() };
    let tuples = s.composable_tuples();
    for tu in &tuples {
        let ti = image(tu);
        if !t.is_composable(&ti) {
            return Err(Error::NotAnInclusion(format!("{} is not composable in the target", s.tuple_name(tu))));
        }
    }
    for (l, k) in s.composable_pairs() {
        if s.cf(l, k) != t.cf(map[l], map[k]) {
            return Err(Error::NotAnInclusion(format!("CF{} differs", s.tuple_name(&[l, k]))));
        }
    }
    let (ea, eb) = (&src.envelope, &tgt.envelope);
    for tu in &tuples {
        let ti = image(tu);
        let ranks: Vec<usize> = tu.windows(2).map(|w| ea.hom(w[0], w[1]).rank()).collect();
        let total: usize = ranks.iter().product();
        for mut code in 0..total {
            let mut inputs = vec![0; ranks.len()];
            for p in (0..ranks.len()).rev() {
                inputs[p] = code % ranks[p];
                code /= ranks[p];
            }
            if ea.mu(tu, &inputs) != eb.mu(&ti, &inputs) {
                return Err(Error::NotAnInclusion(format!("operations on {} differ", s.tuple_name(tu))));
            }
        }
    }
    let back = |y: usize| map.iter().position(|m| *m == y);
    for (j, c) in tgt.system.classes.iter().enumerate() {
        if let (Some(a), Some(b)) = (back(c.source), back(c.target)) {
            if src.system.find(a, b, &c.vector).is_none() {
                return Err(Error::RestrictionMismatch(format!("{} is not a class of the source", tgt.class_name(j))));
            }
        }
    }
    let mut class_map = Vec::new();
    for (i, c) in src.system.classes.iter().enumerate() {
        match tgt.system.find(map[c.source], map[c.target], &c.vector) {
            Some(j) => class_map.push(j),
            None => return Err(Error::RestrictionMismatch(format!("{} is missing from the target", src.class_name(i)))),
        }
    }

    let fs = gz_localize(&src.h, &src.system, src.system.classes.len())?;
    let ft = gz_localize(&tgt.h, &tgt.system, tgt.system.classes.len())?;
    let n = s.lagrangians.len();
    let mut induced = Vec::new();
    let mut well_defined = true;
    let mut square_commutes = true;
    for x in 0..n {
        let slice = fs.slice(x);
        for y in 0..n {
            // image of each fraction basis vector, from its roof
            let send = |class: usize, num: &SVec| -> SVec {
                ft.fraction(map[x], map[y], class_map[class], num).expect("classes map into the target slice")
            };
            for &(a, b, c) in &slice.morphisms {
                let (ca, cb) = (slice.objects[a], slice.objects[b]);
                let (xa, xb) = (src.system.classes[ca].source, src.system.classes[cb].source);
                for g in 0..src.h.hom(xa, y).rank() {
                    let gv = sparse::unit(g, ring);
                    let pulled = src.h.compose(xb, xa, y, &src.system.classes[c].vector, &gv);
                    if send(ca, &gv) != send(cb, &pulled) {
                        well_defined = false;
                    }
                }
            }
            let r = fs.h.hom(x, y).rank();
            let cols: Vec<SVec> = (0..r)
                .map(|k| {
                    let (stage, g) = fs.roof(x, y, k);
                    send(stage, &sparse::unit(g, ring))
                })
                .collect();
            let id_stage = src.system.find(x, x, src.h.identity(x).expect("units")).expect("identities in the system");
            for f in 0..src.h.hom(x, y).rank() {
                let fv = sparse::unit(f, ring);
                let via_src = sparse::apply(ring, &cols, &fs.map_class(x, y, &fv));
                let via_tgt = ft.map_class(map[x], map[y], &fv);
                if via_src != via_tgt || send(id_stage, &fv) != via_tgt {
                    square_commutes = false;
                }
            }
            induced.push(InducedPair {
                source: s.name(x).to_string(),
                target: s.name(y).to_string(),
                source_rank: r,
                target_rank: ft.h.hom(map[x], map[y]).rank(),
                map_rank: sparse::rank(ring, &cols),
            });
        }
    }
    Ok(MorphismReport {
        objects: (0..n).map(|i| (s.name(i).to_string(), t.name(map[i]).to_string())).collect(),
        tuples_checked: tuples.len(),
        induced,
        well_defined,
        square_commutes,
    })
}
