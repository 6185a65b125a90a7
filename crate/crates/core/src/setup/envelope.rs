//! The canonical A∞-envelope of a compatible collection and its independence
//! of the collection up to α-induced isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;

use super::collection::check_collection;
use super::model::{CompatibleCollection, WeakFloerSetup};
use super::validate::{alpha_map, datum_complex};
use crate::ainf::AInfCategory;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{check_homotopy, cohomology, compose_graded_maps, induced_cohomology_map, CohomologyPresentation, GradedMap};

pub fn unit_label(name: &str) -> String {
    format!("1_{name}")
}

/// Objects are the Lagrangians; `hom(L,K) = CF(L,K)` on composable pairs,
/// the strict unit on `(L,L)`, and zero otherwise. Operations come from `δ`.
pub fn canonical_envelope(s: &WeakFloerSetup, delta: &CompatibleCollection) -> Result<AInfCategory> {
    check_collection(s, delta)?;
    let mut a = AInfCategory::new(s.ring, s.lagrangians.clone());
    for ((l, k), m) in &s.cf {
        if s.is_composable(&[*l, *k]) {
            a.set_hom(*l, *k, m.clone());
        }
    }
    for t in s.composable_tuples() {
        let name = delta.get(&t).expect("checked collection");
        let d = s.datum(&t, name).expect("checked collection");
        for (inputs, out) in &d.ops {
            a.add_op(&t, inputs, out)?;
        }
    }
    a.adjoin_strict_units(unit_label)?;
    Ok(a)
}

/// Cohomology of `(CF(L,K), μ¹_δ)` with the complex it came from.
pub(crate) struct PairCohomology {
    pub complex: crate::linalg::Complex,
    pub pres: CohomologyPresentation,
}

pub(crate) fn pair_cohomology(s: &WeakFloerSetup, pair: (usize, usize), datum: &str) -> Result<PairCohomology> {
    let complex = datum_complex(s, pair, datum)?;
    let pres = cohomology(&complex)?;
    Ok(PairCohomology { complex, pres })
}

/// `[μ²_δ(a, b)]` on cohomology classes of the three face complexes.
pub(crate) fn product_table(
    s: &WeakFloerSetup,
    t: &[usize],
    datum: &str,
    h01: &PairCohomology,
    h12: &PairCohomology,
    h02: &PairCohomology,
) -> Result<Vec<Vec<SVec>>> {
    let ring = s.ring;
    let d = s
        .datum(t, datum)
        .ok_or_else(|| Error::Schema(format!("unknown datum {datum} on {}", s.tuple_name(t))))?;
    let mut out = Vec::new();
    for i in 0..h01.pres.classes().rank() {
        let mut row = Vec::new();
        let a = h01.pres.representative(i);
        for j in 0..h12.pres.classes().rank() {
            let b = h12.pres.representative(j);
            let mut v: SVec = Vec::new();
            for (x, p) in a {
                for (y, q) in b {
                    if let Some(w) = d.ops.get(&vec![*x, *y]) {
                        v = sparse::axpy(ring, &v, &ring.mul(p, q), w);
                    }
                }
            }
            let deg = h01.pres.classes().degree(i) + h12.pres.classes().degree(j);
            row.push(if v.is_empty() { v } else { h02.pres.project(deg, &v)? });
        }
        out.push(row);
    }
    Ok(out)
}

fn is_iso(ring: crate::linalg::Ring, f: &GradedMap) -> bool {
    f.source.ranks() == f.target.ranks() && sparse::rank(ring, f.columns()) == f.source.rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairComparison {
    pub pair: (String, String),
    pub source_datum: String,
    pub target_datum: String,
    pub continuation: String,
    pub cohomology_iso: bool,
    /// `dβ + βd = α_back ∘ α − id` verified with a stored homotopy.
    pub homotopy_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub pairs: Vec<PairComparison>,
    pub products_intertwined: bool,
    pub failures: Vec<String>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the envelopes of two collections through the continuation maps
/// between their data.
pub fn check_envelope_independence(s: &WeakFloerSetup, d1: &CompatibleCollection, d2: &CompatibleCollection) -> Result<IndependenceReport> {
    check_collection(s, d1)?;
    check_collection(s, d2)?;
    let ring = s.ring;
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    let mut induced: BTreeMap<(usize, usize), GradedMap> = BTreeMap::new();
    let mut h1 = BTreeMap::new();
    let mut h2 = BTreeMap::new();
    for (l, k) in s.composable_pairs() {
        let t = [l, k];
        let (n1, n2) = (d1.get(&t).unwrap(), d2.get(&t).unwrap());
        let p1 = pair_cohomology(s, (l, k), n1)?;
        let p2 = pair_cohomology(s, (l, k), n2)?;
        let (fwd_name, a) = match s.continuation_between((l, k), n1, n2) {
            Some(c) => (c.name.clone(), alpha_map(s, (l, k), &c.name)?),
            None if n1 == n2 => ("id".to_string(), GradedMap::identity(&s.cf(l, k))),
            None => return Err(Error::AlphaMissing(format!("{n1} → {n2} on {}", s.tuple_name(&t)))),
        };
        let ind = induced_cohomology_map(&a, &p1.complex, &p2.complex, &p1.pres, &p2.pres)?;
        let iso = is_iso(ring, &ind);
        let mut homotopy = false;
        if let Some(back) = s.continuation_between((l, k), n2, n1) {
            if let Some(id) = s.f_of((l, k), n1) {
                let h = s.data.dpp.get(&(l, k)).and_then(|v| {
                    v.iter()
                        .find(|h| h.first == fwd_name && h.second == back.name && h.direct == id)
                });
                if let Some(h) = h {
                    let m = s.cf(l, k);
                    let beta = GradedMap::new(m.clone(), m, -1, h.beta.clone())?;
                    let comp = compose_graded_maps(&a, &alpha_map(s, (l, k), &back.name)?)?;
                    homotopy = check_homotopy(&comp, &alpha_map(s, (l, k), id)?, &beta, &p1.complex, &p1.complex).is_ok();
                }
            }
        } else if n1 == n2 {
            homotopy = true;
        }
        if !iso {
            failures.push(format!("α-induced map on {} is not an isomorphism", s.tuple_name(&t)));
        }
        if !homotopy && s.profile == super::model::Profile::Full {
            failures.push(format!("no verified homotopy for the continuation on {}", s.tuple_name(&t)));
        }
        pairs.push(PairComparison {
            pair: (s.name(l).to_string(), s.name(k).to_string()),
            source_datum: n1.to_string(),
            target_datum: n2.to_string(),
            continuation: fwd_name,
            cohomology_iso: iso,
            homotopy_verified: homotopy,
        });
        induced.insert((l, k), ind);
        h1.insert((l, k), p1);
        h2.insert((l, k), p2);
    }
    let mut intertwined = true;
    for t in s.composable_tuples().into_iter().filter(|t| t.len() == 3) {
        let (p01, p12, p02) = ((t[0], t[1]), (t[1], t[2]), (t[0], t[2]));
        let m1 = product_table(s, &t, d1.get(&t).unwrap(), &h1[&p01], &h1[&p12], &h1[&p02])?;
        let m2 = product_table(s, &t, d2.get(&t).unwrap(), &h2[&p01], &h2[&p12], &h2[&p02])?;
        for (i, row) in m1.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let lhs = induced[&p02].apply(v);
                let ai = induced[&p01].apply(&sparse::unit(i, ring));
                let bj = induced[&p12].apply(&sparse::unit(j, ring));
                let mut rhs = Vec::new();
                for (x, p) in &ai {
                    for (y, q) in &bj {
                        rhs = sparse::axpy(ring, &rhs, &ring.mul(p, q), &m2[*x][*y]);
                    }
                }
                if lhs != rhs && intertwined {
                    intertwined = false;
                    failures.push(format!("products on {} are not intertwined by the comparison", s.tuple_name(&t)));
                }
            }
        }
    }
    Ok(IndependenceReport {
        pairs,
        products_intertwined: intertwined,
        failures,
    })
}
