//! The cohomology-level pre-category of a full setup: homs and products
//! transported to a reference datum on each pair.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::envelope::{pair_cohomology, product_table, unit_label, PairCohomology};
use super::model::WeakFloerSetup;
use super::validate::{alpha_map, require_valid};
use crate::ainf::HCategory;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{induced_cohomology_map, Generator, GradedMap, GradedModule};

pub struct DFPreCategory {
    /// Compositions are defined on composable triples and on units.
    pub h: HCategory,
    pub reference: BTreeMap<(usize, usize), String>,
    pub setup_tuples: Vec<Vec<usize>>,
}

impl DFPreCategory {
    /// Associativity on every composable quadruple of basis classes.
    pub fn check_associativity(&self) -> std::result::Result<(), String> {
        let h = &self.h;
        let ring = h.ring;
        for t in self.setup_tuples.iter().filter(|t| t.len() == 4) {
            let (w, x, y, z) = (t[0], t[1], t[2], t[3]);
            for f in 0..h.hom(w, x).rank() {
                for g in 0..h.hom(x, y).rank() {
                    for k in 0..h.hom(y, z).rank() {
                        let (f, g, k) = (sparse::unit(f, ring), sparse::unit(g, ring), sparse::unit(k, ring));
                        let l = h.compose(w, y, z, &h.compose(w, x, y, &f, &g), &k);
                        let r = h.compose(w, x, z, &f, &h.compose(x, y, z, &g, &k));
                        if l != r {
                            return Err(format!("associativity fails along {:?}", t));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn transport(s: &WeakFloerSetup, pair: (usize, usize), from: &str, to: &str, hs: &PairCohomology, ht: &PairCohomology) -> Result<GradedMap> {
    if from == to {
        return Ok(GradedMap::identity(hs.pres.classes()));
    }
    let c = s
        .continuation_between(pair, from, to)
        .ok_or_else(|| Error::CertificateMissing(format!("continuation {from} → {to} on {}", s.tuple_name(&[pair.0, pair.1]))))?;
    induced_cohomology_map(&alpha_map(s, pair, &c.name)?, &hs.complex, &ht.complex, &hs.pres, &ht.pres)
}

/// Builds the pre-category after validation, checking that every datum on a
/// triple induces the same product once transported to the reference data.
pub fn df_precategory(s: &WeakFloerSetup) -> Result<DFPreCategory> {
    require_valid(s)?;
    if !s.ring.is_field() {
        return Err(Error::Unsupported("cohomology over a non-field".into()));
    }
    let ring = s.ring;
    let n = s.lagrangians.len();
    let mut reference = BTreeMap::new();
    let mut coh: BTreeMap<((usize, usize), String), PairCohomology> = BTreeMap::new();
    let mut homs = BTreeMap::new();
    for (l, k) in s.composable_pairs() {
        let data = s.data(&[l, k]);
        let r = data.first().ok_or_else(|| Error::NoSection(s.tuple_name(&[l, k])))?.name.clone();
        for d in data {
            coh.insert(((l, k), d.name.clone()), pair_cohomology(s, (l, k), &d.name)?);
        }
        homs.insert((l, k), coh[&((l, k), r.clone())].pres.classes().clone());
        reference.insert((l, k), r);
    }
    let mut identities = BTreeMap::new();
    for x in 0..n {
        homs.insert(
            (x, x),
            GradedModule::new(
                ring,
                vec![Generator {
                    label: unit_label(s.name(x)),
                    degree: 0,
                }],
            )?,
        );
        identities.insert(x, sparse::unit(0, ring));
    }
    let triples: Vec<Vec<usize>> = s.composable_tuples().into_iter().filter(|t| t.len() == 3).collect();
    let tables: Vec<(Vec<usize>, Vec<Vec<SVec>>)> = triples
        .par_iter()
        .map(|t| -> Result<(Vec<usize>, Vec<Vec<SVec>>)> {
            let p = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
            let mut agreed: Option<Vec<Vec<SVec>>> = None;
            for d in s.data(t) {
                // faces: (0,1) drops position 2, (1,2) drops 0, (0,2) drops 1
                let fnames = [&d.faces[2], &d.faces[0], &d.faces[1]];
                let hf: Vec<&PairCohomology> = (0..3).map(|i| &coh[&(p[i], fnames[i].clone())]).collect();
                let raw = product_table(s, t, &d.name, hf[0], hf[1], hf[2])?;
                let href: Vec<&PairCohomology> = (0..3).map(|i| &coh[&(p[i], reference[&p[i]].clone())]).collect();
                let back01 = transport(s, p[0], &reference[&p[0]], fnames[0], href[0], hf[0])?;
                let back12 = transport(s, p[1], &reference[&p[1]], fnames[1], href[1], hf[1])?;
                let fwd02 = transport(s, p[2], fnames[2], &reference[&p[2]], hf[2], href[2])?;
                let mut table = Vec::new();
                for i in 0..href[0].pres.classes().rank() {
                    let a = back01.apply(&sparse::unit(i, ring));
                    let da = href[0].pres.classes().degree(i);
                    let mut row = Vec::new();
                    for j in 0..href[1].pres.classes().rank() {
                        let b = back12.apply(&sparse::unit(j, ring));
                        let mut v = Vec::new();
                        for (x, u) in &a {
                            for (y, w) in &b {
                                v = sparse::axpy(ring, &v, &ring.mul(u, w), &raw[*x][*y]);
                            }
                        }
                        let v = fwd02.apply(&v);
                        row.push(sparse::scale(ring, &ring.sign(da.rem_euclid(2) == 1), &v));
                    }
                    table.push(row);
                }
                match &agreed {
                    None => agreed = Some(table),
                    Some(prev) if *prev != table => {
                        return Err(Error::HypothesisFailed(format!(
                            "products on {} depend on the datum ({})",
                            s.tuple_name(t),
                            d.name
                        )))
                    }
                    _ => {}
                }
            }
            Ok((t.clone(), agreed.unwrap_or_default()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut comp = BTreeMap::new();
    for (t, table) in tables {
        comp.insert((t[0], t[1], t[2]), table);
    }
    for ((x, y), m) in homs.clone() {
        let r = m.rank();
        let ident: Vec<Vec<SVec>> = vec![(0..r).map(|j| sparse::unit(j, ring)).collect()];
        comp.insert((x, x, y), ident);
        if x != y {
            let right: Vec<Vec<SVec>> = (0..r).map(|i| vec![sparse::unit(i, ring)]).collect();
            comp.insert((x, y, y), right);
        }
    }
    let h = HCategory::from_tables(ring, s.lagrangians.clone(), homs, comp, identities);
    Ok(DFPreCategory {
        h,
        reference,
        setup_tuples: s.composable_tuples(),
    })
}
