//! Classification of units: strict, homotopy-unital, cohomological.

use std::collections::BTreeMap;

use serde::Serialize;

use super::category::{AInfCategory, AInfOps};
use super::hcat::cohomology_category_unchecked;
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{Complex, GradedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unitality {
    NonUnital,
    Cohomological,
    Unital,
    Strict,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitalityReport {
    pub per_object: BTreeMap<String, Unitality>,
    pub global: Unitality,
    pub notes: Vec<String>,
}

/// Exact strict-unit test for the designated unit of `x`.
pub fn strict_unit_failure(a: &AInfCategory, x: usize) -> Option<String> {
    let ring = a.ring;
    let Some(&u) = a.units.get(&x) else {
        return Some("no designated unit".into());
    };
    if !a.mu(&[x, x], &[u]).is_empty() {
        return Some("μ¹(1) ≠ 0".into());
    }
    for y in 0..a.objects.len() {
        let m = a.hom(x, y);
        for i in 0..m.rank() {
            if a.mu(&[x, x, y], &[u, i]) != sparse::unit(i, ring) {
                return Some(format!("μ²(1, {}) ≠ {}", m.label(i), m.label(i)));
            }
        }
        let m = a.hom(y, x);
        for i in 0..m.rank() {
            let s = ring.sign(m.degree(i).rem_euclid(2) == 1);
            if a.mu(&[y, x, x], &[i, u]) != vec![(i, s)] {
                return Some(format!("μ²({}, 1) ≠ ±{}", m.label(i), m.label(i)));
            }
        }
    }
    for (chain, table) in a.ops() {
        if chain.len() < 4 {
            continue;
        }
        for inputs in table.keys() {
            for (s, i) in inputs.iter().enumerate() {
                if chain[s] == x && chain[s + 1] == x && *i == u {
                    return Some(format!("μ{} along {} with a unit input is nonzero", inputs.len(), a.chain_name(chain)));
                }
            }
        }
    }
    None
}

/// Searches for a degree −1 map `h` with `d h + h d = φ − id`.
pub fn find_homotopy_to_identity(c: &Complex, phi: &[SVec]) -> Option<GradedMap> {
    let ring = c.ring();
    let m = &c.module;
    let n = m.rank();
    // unknowns (x, y): coefficient of y in h(x), with |y| = |x| − 1
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |y| m.degree(*y) == m.degree(x) - 1).map(move |y| (x, y)))
        .collect();
    let d = c.differential.columns();
    // equation index x * n + z
    let mut cols = Vec::with_capacity(unknowns.len());
    for (x0, y0) in &unknowns {
        let mut col: SVec = d[*y0].iter().map(|(z, s)| (x0 * n + z, s.clone())).collect();
        for x in 0..n {
            let c = sparse::get(&d[x], *x0);
            if !c.is_zero() {
                col = sparse::add(ring, &col, &vec![(x * n + y0, c)]);
            }
        }
        cols.push(sparse::collect(ring, col));
    }
    let mut target = Vec::new();
    for x in 0..n {
        let v = sparse::sub(ring, &phi[x], &sparse::unit(x, ring));
        target = sparse::add(ring, &target, &v.into_iter().map(|(z, s)| (x * n + z, s)).collect());
    }
    let sol = sparse::solve(ring, &cols, &target)?;
    let mut hcols: Vec<SVec> = vec![Vec::new(); n];
    for (k, s) in sol {
        let (x, y) = unknowns[k];
        hcols[x] = sparse::add(ring, &hcols[x], &vec![(y, s)]);
    }
    GradedMap::new(m.clone(), m.clone(), -1, hcols).ok()
}

/// Classifies each object and the category as a whole.
pub fn classify_unitality(a: &AInfCategory) -> UnitalityReport {
    let ring = a.ring;
    let n = a.objects.len();
    let mut per_object = BTreeMap::new();
    let mut notes = Vec::new();
    let h = cohomology_category_unchecked(a, &a.unit_vectors()).ok();
    for x in 0..n {
        let name = a.objects[x].clone();
        if strict_unit_failure(a, x).is_none() {
            per_object.insert(name, Unitality::Strict);
            continue;
        }
        let Some(h) = &h else {
            per_object.insert(name, Unitality::NonUnital);
            continue;
        };
        let Some(e) = h.solve_identity(x) else {
            per_object.insert(name, Unitality::NonUnital);
            continue;
        };
        if h.hom(x, x).is_zero() {
            per_object.insert(name, Unitality::Unital);
            continue;
        }
        // chain-level representative of the identity class
        let p = h.presentation(x, x).expect("nonzero endomorphisms");
        let mut rep = Vec::new();
        for (k, s) in &e {
            rep = sparse::axpy(ring, &rep, s, p.representative(*k));
        }
        let mut witnessed = true;
        for y in 0..n {
            for (left, (s, t)) in [(true, (x, y)), (false, (y, x))] {
                let m = a.hom(s, t);
                if m.is_zero() {
                    continue;
                }
                let phi: Vec<SVec> = (0..m.rank())
                    .map(|i| {
                        let e_i = sparse::unit(i, ring);
                        if left {
                            a.mu_vec(&[x, x, y], &[rep.clone(), e_i])
                        } else {
                            let v = a.mu_vec(&[y, x, x], &[e_i, rep.clone()]);
                            sparse::scale(ring, &ring.sign(m.degree(i).rem_euclid(2) == 1), &v)
                        }
                    })
                    .collect();
                let ok = a
                    .hom_complex(s, t)
                    .ok()
                    .and_then(|c| find_homotopy_to_identity(&c, &phi))
                    .is_some();
                if !ok {
                    witnessed = false;
                }
            }
        }
        if witnessed {
            per_object.insert(name, Unitality::Unital);
        } else {
            notes.push(format!("{}: homotopy not found at this bound", a.objects[x]));
            per_object.insert(name, Unitality::Cohomological);
        }
    }
    let global = per_object.values().copied().min().unwrap_or(Unitality::Strict);
    UnitalityReport {
        per_object,
        global,
        notes,
    }
}
