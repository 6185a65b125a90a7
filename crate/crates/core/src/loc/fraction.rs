//! Localization of a cohomology category at a right multiplicative system by
//! right fractions `g ∘ a⁻¹`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::slice::{chain_colimit, slice_colimit, Chain, Slice, SliceColimit};
use super::system::{check_right_multiplicative_system, MultiplicativeSystem};
use crate::ainf::HCategory;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChainReport {
    pub source: String,
    pub target: String,
    pub chain_length: usize,
    /// Rank of the chain colimit at the requested depth equals the slice colimit.
    pub agrees_with_slice: bool,
}

pub struct FractionCategory {
    pub h: HCategory,
    /// Image of each basis class of `H(x,y)` under the localization functor.
    pub functor: BTreeMap<(usize, usize), Vec<SVec>>,
    pub chains: Vec<Chain>,
    pub chain_reports: Vec<ChainReport>,
    slices: Vec<Slice>,
    colimits: BTreeMap<(usize, usize), SliceColimit>,
}

impl FractionCategory {
    pub fn map_class(&self, x: usize, y: usize, f: &SVec) -> SVec {
        let Some(cols) = self.functor.get(&(x, y)) else {
            return Vec::new();
        };
        sparse::apply(self.h.ring, cols, f)
    }

    pub fn slice(&self, x: usize) -> &Slice {
        &self.slices[x]
    }

    /// The fraction `numerator ∘ c⁻¹` for the system class `c` into `x`.
    pub fn fraction(&self, x: usize, y: usize, class: usize, numerator: &SVec) -> Option<SVec> {
        let stage = self.slices[x].objects.iter().position(|&o| o == class)?;
        Some(sparse::apply(self.h.ring, &self.colimits[&(x, y)].structure[stage], numerator))
    }

    /// `(slice stage, numerator)` presenting a basis fraction of `HW(x,y)`.
    pub fn roof(&self, x: usize, y: usize, k: usize) -> (usize, usize) {
        let (v, i) = self.colimits[&(x, y)].representatives[k];
        (self.slices[x].objects[v], i)
    }
}

/// Solves `b ∘ h = f ∘ c` over system classes `c` into `f`'s source, in
/// class order. Returns `(c, h)`.
fn ore_completions(h: &HCategory, sys: &MultiplicativeSystem, xa: usize, y: usize, yb: usize, f: &SVec, b: &SVec) -> Vec<(usize, SVec)> {
    let ring = h.ring;
    let deg = match h.hom(xa, y).vector_degree(f) {
        Some(d) => d,
        None => return vec![],
    };
    let mut out = Vec::new();
    for ci in sys.into_target(xa) {
        let xp = sys.classes[ci].source;
        let rhs = h.compose(xp, xa, y, &sys.classes[ci].vector, f);
        let idx = h.hom(xp, yb).indices_in(deg);
        let cols: Vec<SVec> = idx.iter().map(|k| h.compose(xp, yb, y, &sparse::unit(*k, ring), b)).collect();
        if let Some(sol) = sparse::solve(ring, &cols, &rhs) {
            let hv = sol.into_iter().map(|(i, s)| (idx[i], s)).collect();
            out.push((ci, hv));
        }
    }
    out
}

/// Computes the localization of `h` at `sys`. Every slice must be reachable
/// by a cofinal chain of at most `depth` steps.
pub fn gz_localize(h: &HCategory, sys: &MultiplicativeSystem, depth: usize) -> Result<FractionCategory> {
    let report = check_right_multiplicative_system(h, sys);
    if !report.is_right_multiplicative() {
        return Err(Error::SystemInvalid(report.first_failure().unwrap_or_default()));
    }
    let ring = h.ring;
    let n = h.object_count();
    let slices: Vec<Slice> = (0..n).map(|x| Slice::new(h, sys, x)).collect();
    let chains = slices.iter().map(|s| s.cofinal_chain(h, sys)).collect::<Result<Vec<_>>>()?;
    for ch in &chains {
        if ch.steps.len() > depth {
            return Err(Error::NonCofinalPrefix(format!(
                "slice over {} needs {} steps, depth is {depth}",
                h.objects[ch.object],
                ch.steps.len()
            )));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let cols: Vec<((usize, usize), SliceColimit, ChainReport)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let c = slice_colimit(h, sys, &slices[x], y)?;
            let seq = chain_colimit(h, sys, &chains[x], y, depth, 1)?;
            let rep = ChainReport {
                source: h.objects[x].clone(),
                target: h.objects[y].clone(),
                chain_length: chains[x].steps.len(),
                agrees_with_slice: seq.colimit.ranks() == c.module.ranks(),
            };
            Ok(((x, y), c, rep))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut colimits = BTreeMap::new();
    let mut chain_reports = Vec::new();
    for (p, c, r) in cols {
        colimits.insert(p, c);
        chain_reports.push(r);
    }

    let stage_of = |x: usize, class: usize| slices[x].objects.iter().position(|&o| o == class);
    let to_colimit = |x: usize, y: usize, stage: usize, v: &SVec| -> SVec { sparse::apply(ring, &colimits[&(x, y)].structure[stage], v) };

    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .filter(|(x, y, z)| colimits[&(*x, *y)].module.rank() > 0 && colimits[&(*y, *z)].module.rank() > 0)
        .collect();
    let tables = triples
        .par_iter()
        .map(|&(x, y, z)| -> Result<((usize, usize, usize), Vec<Vec<SVec>>)> {
            let cxy = &colimits[&(x, y)];
            let cyz = &colimits[&(y, z)];
            let mut table = Vec::new();
            for &(va, fi) in &cxy.representatives {
                let a = slices[x].objects[va];
                let xa = sys.classes[a].source;
                let f = sparse::unit(fi, ring);
                let mut row = Vec::new();
                for &(vb, gi) in &cyz.representatives {
                    let b = slices[y].objects[vb];
                    let yb = sys.classes[b].source;
                    let g = sparse::unit(gi, ring);
                    let mut value: Option<SVec> = None;
                    for (ci, fw) in ore_completions(h, sys, xa, y, yb, &f, &sys.classes[b].vector) {
                        let xp = sys.classes[ci].source;
                        let ac = h.compose(xp, xa, x, &sys.classes[ci].vector, &sys.classes[a].vector);
                        let stage = sys
                            .find(xp, x, &ac)
                            .and_then(|k| stage_of(x, k))
                            .ok_or_else(|| Error::SystemInvalid("system is not closed under composition".into()))?;
                        let mut kernel_shifts = vec![Vec::new()];
                        let deg = h.hom(xa, y).degree(fi);
                        let idx = h.hom(xp, yb).indices_in(deg);
                        let post: Vec<SVec> = idx
                            .iter()
                            .map(|k| h.compose(xp, yb, y, &sparse::unit(*k, ring), &sys.classes[b].vector))
                            .collect();
                        for k in sparse::kernel(ring, &post) {
                            kernel_shifts.push(k.into_iter().map(|(i, s)| (idx[i], s)).collect());
                        }
                        for shift in kernel_shifts {
                            let num = h.compose(xp, yb, z, &sparse::add(ring, &fw, &shift), &g);
                            let v = to_colimit(x, z, stage, &num);
                            match &value {
                                None => value = Some(v),
                                Some(prev) if *prev != v => {
                                    return Err(Error::SystemInvalid(format!(
                                        "roof composition on {},{},{} depends on the chosen square",
                                        h.objects[x], h.objects[y], h.objects[z]
                                    )))
                                }
                                _ => {}
                            }
                        }
                    }
                    let v = value.ok_or_else(|| {
                        Error::SystemInvalid(format!("no Ore square for a fraction {} → {}", h.objects[x], h.objects[y]))
                    })?;
                    row.push(v);
                }
                table.push(row);
            }
            Ok(((x, y, z), table))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut functor = BTreeMap::new();
    let mut identities = BTreeMap::new();
    for &(x, y) in &pairs {
        let id_stage = slices[x].identity.expect("identities checked");
        functor.insert((x, y), colimits[&(x, y)].structure[id_stage].clone());
    }
    for x in 0..n {
        if let Some(e) = h.identity(x) {
            let id_stage = slices[x].identity.expect("identities checked");
            identities.insert(x, to_colimit(x, x, id_stage, e));
        }
    }
    let homs = colimits.iter().map(|(p, c)| (*p, c.module.clone())).collect();
    let comp = tables.into_iter().collect();
    let lh = HCategory::from_tables(ring, h.objects.clone(), homs, comp, identities);
    Ok(FractionCategory {
        h: lh,
        functor,
        chains,
        chain_reports,
        slices,
        colimits,
    })
}

/// Checks that every system class becomes invertible and that composing with
/// a system class is bijective on every hom of the fraction category.
pub fn check_right_locality(f: &FractionCategory, h: &HCategory, sys: &MultiplicativeSystem) -> std::result::Result<(), String> {
    let lh = &f.h;
    let ring = lh.ring;
    for (i, c) in sys.classes.iter().enumerate() {
        let img = f.map_class(c.source, c.target, &c.vector);
        if lh.inverse(c.source, c.target, &img).is_none() {
            return Err(format!("{} is not inverted", sys.name(h, i)));
        }
        for z in 0..lh.object_count() {
            let m = lh.hom(c.target, z);
            let cols: Vec<SVec> = (0..m.rank())
                .map(|g| lh.compose(c.source, c.target, z, &img, &sparse::unit(g, ring)))
                .collect();
            if lh.hom(c.source, z).ranks() != m.ranks() || sparse::rank(ring, &cols) != m.rank() {
                return Err(format!(
                    "− ∘ {} is not bijective into {}",
                    sys.name(h, i),
                    lh.objects[z]
                ));
            }
        }
    }
    Ok(())
}
