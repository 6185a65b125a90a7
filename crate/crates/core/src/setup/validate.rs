//! Axiom checks for weak Floer setups.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::model::{face_positions, subtuple, Composable, Datum, Profile, WeakFloerSetup};
use crate::ainf::relations::relation_residual;
use crate::ainf::AInfOps;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{check_chain_map, check_homotopy, compose_graded_maps, Complex, GradedMap, GradedModule, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub status: Status,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetupReport {
    pub profile: Profile,
    pub checks: Vec<AxiomCheck>,
}

impl SetupReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .map(|c| format!("{}: {}", c.axiom, c.details.first().cloned().unwrap_or_default()))
    }
}

const MAX_DETAILS: usize = 20;

fn check(axiom: &str, details: Vec<String>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.to_string(),
        status: if details.is_empty() { Status::Pass } else { Status::Fail },
        details: details.into_iter().take(MAX_DETAILS).collect(),
    }
}

fn skipped(axiom: &str) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.to_string(),
        status: Status::Skipped,
        details: Vec::new(),
    }
}

/// The category on positions `0..k` of one tuple whose operations are the
/// restrictions of a single datum.
pub(crate) struct DatumChain<'a> {
    setup: &'a WeakFloerSetup,
    tuple: Vec<usize>,
    datum: String,
    homs: Vec<GradedModule>,
    zero: GradedModule,
}

impl<'a> DatumChain<'a> {
    pub(crate) fn new(setup: &'a WeakFloerSetup, tuple: &[usize], datum: &str) -> Self {
        let n = tuple.len();
        let mut homs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                homs.push(if i < j {
                    setup.cf(tuple[i], tuple[j])
                } else {
                    GradedModule::zero(setup.ring)
                });
            }
        }
        DatumChain {
            setup,
            tuple: tuple.to_vec(),
            datum: datum.to_string(),
            homs,
            zero: GradedModule::zero(setup.ring),
        }
    }
}

impl AInfOps for DatumChain<'_> {
    fn ring(&self) -> Ring {
        self.setup.ring
    }

    fn object_names(&self) -> Vec<String> {
        self.tuple.iter().map(|i| self.setup.name(*i).to_string()).collect()
    }

    fn object_count(&self) -> usize {
        self.tuple.len()
    }

    fn hom(&self, x: usize, y: usize) -> &GradedModule {
        let n = self.tuple.len();
        if x < n && y < n {
            &self.homs[x * n + y]
        } else {
            &self.zero
        }
    }

    fn mu(&self, chain: &[usize], inputs: &[usize]) -> SVec {
        if chain.windows(2).any(|w| w[0] >= w[1]) {
            return Vec::new();
        }
        let Some(name) = self.setup.restrict(&self.tuple, &self.datum, chain) else {
            return Vec::new();
        };
        let sub = subtuple(&self.tuple, chain);
        self.setup
            .datum(&sub, &name)
            .and_then(|d| d.ops.get(inputs).cloned())
            .unwrap_or_default()
    }

    fn max_arity(&self) -> usize {
        self.tuple.len() - 1
    }
}

/// `(CF(L,K), μ¹_δ)` for a datum on a pair.
pub fn datum_complex(s: &WeakFloerSetup, pair: (usize, usize), datum: &str) -> Result<Complex> {
    let m = s.cf(pair.0, pair.1);
    let d = s
        .datum(&[pair.0, pair.1], datum)
        .ok_or_else(|| Error::Schema(format!("no datum {datum} on {}", s.tuple_name(&[pair.0, pair.1]))))?;
    let cols = (0..m.rank()).map(|i| d.ops.get(&vec![i]).cloned().unwrap_or_default()).collect();
    let dm = GradedMap::new(m.clone(), m.clone(), 1, cols)?;
    Complex::new(m, dm)
}

pub fn alpha_map(s: &WeakFloerSetup, pair: (usize, usize), name: &str) -> Result<GradedMap> {
    let c = s
        .continuation(pair, name)
        .ok_or_else(|| Error::AlphaMissing(format!("{name} on {}", s.tuple_name(&[pair.0, pair.1]))))?;
    let m = s.cf(pair.0, pair.1);
    GradedMap::new(m.clone(), m, 0, c.alpha.clone())
}

fn check_lagrangians(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    if s.lagrangians.is_empty() {
        d.push("no Lagrangians".to_string());
    }
    let mut seen = BTreeSet::new();
    for l in &s.lagrangians {
        if !seen.insert(l) {
            d.push(format!("duplicate Lagrangian {l}"));
        }
    }
    check("lagrangians", d)
}

fn check_composable(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    if let Composable::Explicit(set) = &s.composable {
        for t in set {
            let distinct: BTreeSet<&usize> = t.iter().collect();
            if t.len() < 2 || distinct.len() != t.len() || t.iter().any(|i| *i >= s.lagrangians.len()) {
                d.push(format!("tuple {:?} is not a tuple of distinct Lagrangians", t));
                continue;
            }
            if t.len() > 2 {
                for j in 0..t.len() {
                    let f = subtuple(t, &face_positions(t.len(), j));
                    if !set.contains(&f) {
                        d.push(format!("{} is composable but its face {} is not", s.tuple_name(t), s.tuple_name(&f)));
                    }
                }
            }
            for i in 0..t.len() - 1 {
                let mut u = t.clone();
                u.swap(i, i + 1);
                if !set.contains(&u) {
                    d.push(format!("{} is composable but its permutation {} is not", s.tuple_name(t), s.tuple_name(&u)));
                }
            }
        }
    }
    check("composable-tuples", d)
}

fn check_complexes(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for (l, k) in s.cf.keys() {
        if !s.is_composable(&[*l, *k]) {
            d.push(format!("CF given on non-composable pair {}", s.tuple_name(&[*l, *k])));
        }
    }
    for t in s.composable_tuples() {
        if s.data(&t).is_empty() {
            d.push(format!("no Floer datum on {}", s.tuple_name(&t)));
        }
    }
    check("floer-complexes", d)
}

fn check_operation_shapes(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for (t, data) in &s.data.d {
        if !s.is_composable(t) {
            d.push(format!("data given on non-composable tuple {}", s.tuple_name(t)));
            continue;
        }
        let k = t.len() - 1;
        let mods: Vec<GradedModule> = (0..k).map(|i| s.cf(t[i], t[i + 1])).collect();
        let out = s.cf(t[0], t[k]);
        let mut names = BTreeSet::new();
        for datum in data {
            if !names.insert(&datum.name) {
                d.push(format!("duplicate datum {} on {}", datum.name, s.tuple_name(t)));
            }
            for (inputs, v) in &datum.ops {
                if inputs.len() != k || inputs.iter().zip(&mods).any(|(i, m)| *i >= m.rank()) {
                    d.push(format!("operation of {} on {} has malformed inputs", datum.name, s.tuple_name(t)));
                    continue;
                }
                let deg: i32 = inputs.iter().zip(&mods).map(|(i, m)| m.degree(*i)).sum::<i32>() + 2 - k as i32;
                for (o, _) in v {
                    if *o >= out.rank() || out.degree(*o) != deg {
                        d.push(format!(
                            "operation of {} on {} has an output of the wrong degree",
                            datum.name,
                            s.tuple_name(t)
                        ));
                    }
                }
            }
        }
    }
    check("operation-degrees", d)
}

fn check_restrictions(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for (t, data) in &s.data.d {
        if t.len() < 3 {
            for datum in data {
                if !datum.faces.is_empty() {
                    d.push(format!("datum {} on pair {} has faces", datum.name, s.tuple_name(t)));
                }
            }
            continue;
        }
        for datum in data {
            if datum.faces.len() != t.len() {
                d.push(format!("datum {} on {} needs {} faces", datum.name, s.tuple_name(t), t.len()));
                continue;
            }
            for (j, f) in datum.faces.iter().enumerate() {
                let ft = subtuple(t, &face_positions(t.len(), j));
                if s.datum(&ft, f).is_none() {
                    d.push(format!("face {j} of {} on {} names unknown datum {f}", datum.name, s.tuple_name(t)));
                }
            }
        }
    }
    if d.is_empty() {
        for (t, data) in &s.data.d {
            if t.len() < 4 {
                continue;
            }
            for datum in data {
                for i in 0..t.len() {
                    for j in i + 1..t.len() {
                        let via_i = face_then(s, t, datum, i, j - 1);
                        let via_j = face_then(s, t, datum, j, i);
                        if via_i != via_j {
                            d.push(format!(
                                "restrictions of {} on {} disagree on removing positions {i},{j}",
                                datum.name,
                                s.tuple_name(t)
                            ));
                        }
                    }
                }
            }
        }
    }
    check("restriction-functoriality", d)
}

/// Removes position `a` and then position `b` of the face.
fn face_then(s: &WeakFloerSetup, t: &[usize], datum: &Datum, a: usize, b: usize) -> Option<String> {
    let ft = subtuple(t, &face_positions(t.len(), a));
    let fd = s.datum(&ft, &datum.faces[a])?;
    fd.faces.get(b).cloned()
}

/// Face families compatible on codimension-two faces, for a tuple of length at least three.
pub(crate) fn compatible_face_families(s: &WeakFloerSetup, t: &[usize], limit: usize) -> Option<Vec<Vec<String>>> {
    let n = t.len();
    let faces: Vec<Vec<usize>> = (0..n).map(|j| subtuple(t, &face_positions(n, j))).collect();
    let options: Vec<Vec<&Datum>> = faces.iter().map(|f| s.data(f).iter().collect()).collect();
    let total: usize = options.iter().map(|o| o.len()).product();
    if total > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    if options.iter().any(|o| o.is_empty()) {
        return Some(out);
    }
    loop {
        let fam: Vec<&Datum> = (0..n).map(|j| options[j][pick[j]]).collect();
        // codimension-two faces of a triple are single Lagrangians
        let ok = n == 3 || (0..n).all(|i| (i + 1..n).all(|j| fam[i].faces.get(j - 1) == fam[j].faces.get(i)));
        if ok {
            out.push(fam.iter().map(|d| d.name.clone()).collect());
        }
        let mut s_ = n;
        loop {
            if s_ == 0 {
                return Some(out);
            }
            s_ -= 1;
            pick[s_] += 1;
            if pick[s_] < options[s_].len() {
                break;
            }
            pick[s_] = 0;
        }
    }
}

fn check_contractibility(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    let mut notes = Vec::new();
    for t in s.composable_tuples() {
        if t.len() < 3 {
            continue;
        }
        match compatible_face_families(s, &t, 200_000) {
            None => notes.push(format!("{}: too many face families to enumerate", s.tuple_name(&t))),
            Some(fams) => {
                for fam in fams {
                    if !s.data(&t).iter().any(|x| x.faces == fam) {
                        d.push(format!("no datum on {} restricting to faces ({})", s.tuple_name(&t), fam.join(",")));
                    }
                }
            }
        }
    }
    let mut c = check("contractibility", d);
    if c.status == Status::Pass && !notes.is_empty() {
        c.status = Status::Skipped;
        c.details = notes;
    }
    c
}

/// Residual of the A∞-relations of one datum along its full tuple.
pub(crate) fn datum_relation_failure(s: &WeakFloerSetup, t: &[usize], datum: &str) -> Option<String> {
    let view = DatumChain::new(s, t, datum);
    let k = t.len() - 1;
    let chain: Vec<usize> = (0..=k).collect();
    let ranks: Vec<usize> = (0..k).map(|i| view.hom(i, i + 1).rank()).collect();
    let total: usize = ranks.iter().product();
    for mut code in 0..total {
        let mut inputs = vec![0; k];
        for p in (0..k).rev() {
            inputs[p] = code % ranks[p];
            code /= ranks[p];
        }
        let r = relation_residual(&view, &chain, &inputs);
        if !r.is_empty() {
            let labels: Vec<String> = inputs
                .iter()
                .enumerate()
                .map(|(p, i)| view.hom(p, p + 1).label(*i).to_string())
                .collect();
            return Some(format!(
                "datum {datum} on {} fails on ({}) with residual {}",
                s.tuple_name(t),
                labels.join(", "),
                view.hom(0, k).format_vector(&r)
            ));
        }
    }
    None
}

fn check_relations(s: &WeakFloerSetup) -> AxiomCheck {
    let jobs: Vec<(Vec<usize>, String)> = s
        .data
        .d
        .iter()
        .flat_map(|(t, ds)| ds.iter().map(move |d| (t.clone(), d.name.clone())))
        .collect();
    let d: Vec<String> = jobs
        .par_iter()
        .filter_map(|(t, name)| datum_relation_failure(s, t, name))
        .collect();
    check("a-infinity-relations", d)
}

fn check_continuations(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for ((l, k), cs) in &s.data.dp {
        let pair = (*l, *k);
        let pn = s.tuple_name(&[*l, *k]);
        for c in cs {
            let (Ok(src), Ok(tgt)) = (datum_complex(s, pair, &c.source), datum_complex(s, pair, &c.target)) else {
                d.push(format!("continuation {} on {pn} has unknown endpoints", c.name));
                continue;
            };
            match alpha_map(s, pair, &c.name) {
                Err(e) => d.push(format!("continuation {} on {pn}: {e}", c.name)),
                Ok(a) => {
                    if let Err(e) = check_chain_map(&a, &src, &tgt) {
                        d.push(format!("continuation {} on {pn}: {e}", c.name));
                    }
                }
            }
        }
    }
    for (l, k) in s.composable_pairs() {
        for a in s.data(&[l, k]) {
            for b in s.data(&[l, k]) {
                if s.continuation_between((l, k), &a.name, &b.name).is_none() {
                    d.push(format!("no continuation {} → {} on {}", a.name, b.name, s.tuple_name(&[l, k])));
                }
            }
        }
    }
    check("continuation-maps", d)
}

fn check_unit_continuations(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for (l, k) in s.composable_pairs() {
        let pn = s.tuple_name(&[l, k]);
        for a in s.data(&[l, k]) {
            let Some(f) = s.f_of((l, k), &a.name) else {
                d.push(format!("f undefined on {} over {pn}", a.name));
                continue;
            };
            let Some(c) = s.continuation((l, k), f) else {
                d.push(format!("f({}) = {f} is not a continuation on {pn}", a.name));
                continue;
            };
            if c.source != a.name || c.target != a.name {
                d.push(format!("f({}) = {f} does not start and end at {} on {pn}", a.name, a.name));
            }
            let m = s.cf(l, k);
            let id = GradedMap::identity(&m);
            if c.alpha != id.columns() {
                d.push(format!("f({}) = {f} does not have identity α on {pn}", a.name));
            }
        }
    }
    check("unit-continuations", d)
}

fn check_continuation_homotopies(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for ((l, k), hs) in &s.data.dpp {
        let pair = (*l, *k);
        let pn = s.tuple_name(&[*l, *k]);
        for h in hs {
            let get = |n: &str| s.continuation(pair, n);
            let (Some(a1), Some(a2), Some(a3)) = (get(&h.first), get(&h.second), get(&h.direct)) else {
                d.push(format!("homotopy {} on {pn} names unknown continuations", h.name));
                continue;
            };
            if a1.target != a2.source || a3.source != a1.source || a3.target != a2.target {
                d.push(format!("homotopy {} on {pn} has mismatched endpoints", h.name));
                continue;
            }
            let res = (|| -> Result<()> {
                let src = datum_complex(s, pair, &a1.source)?;
                let tgt = datum_complex(s, pair, &a2.target)?;
                let m = s.cf(*l, *k);
                let beta = GradedMap::new(m.clone(), m, -1, h.beta.clone())?;
                let comp = compose_graded_maps(&alpha_map(s, pair, &a1.name)?, &alpha_map(s, pair, &a2.name)?)?;
                check_homotopy(&comp, &alpha_map(s, pair, &a3.name)?, &beta, &src, &tgt)
            })();
            if let Err(e) = res {
                d.push(format!("homotopy {} on {pn}: {e}", h.name));
            }
        }
    }
    for (l, k) in s.composable_pairs() {
        let empty = Vec::new();
        let cs = s.data.dp.get(&(l, k)).unwrap_or(&empty);
        let hs = s.data.dpp.get(&(l, k));
        for a1 in cs {
            for a2 in cs.iter().filter(|c| c.source == a1.target) {
                for a3 in cs.iter().filter(|c| c.source == a1.source && c.target == a2.target) {
                    let found = hs.map_or(false, |v| {
                        v.iter().any(|h| h.first == a1.name && h.second == a2.name && h.direct == a3.name)
                    });
                    if !found {
                        d.push(format!(
                            "no homotopy over ({}, {}, {}) on {}",
                            a1.name,
                            a2.name,
                            a3.name,
                            s.tuple_name(&[l, k])
                        ));
                    }
                }
            }
        }
    }
    check("continuation-homotopies", d)
}

/// Positions of the pair acted on by the continuation in slot `i`.
pub(crate) fn slot_pair(slot: usize) -> [usize; 2] {
    match slot {
        0 => [0, 1],
        1 => [1, 2],
        _ => [0, 2],
    }
}

/// Evaluates both sides of a product homotopy identity and returns the first
/// input pair where it fails.
pub(crate) fn product_homotopy_failure(s: &WeakFloerSetup, t: &[usize], h: &super::model::ProductHomotopy) -> Result<Option<String>> {
    let ring = s.ring;
    if t.len() != 3 || h.slot > 2 {
        return Err(Error::Schema(format!("product homotopy {} has a bad slot or tuple", h.name)));
    }
    let base = s
        .datum(t, &h.base)
        .ok_or_else(|| Error::Schema(format!("unknown datum {}", h.base)))?;
    let other = s
        .datum(t, &h.other)
        .ok_or_else(|| Error::Schema(format!("unknown datum {}", h.other)))?;
    let sp = slot_pair(h.slot);
    let pair = (t[sp[0]], t[sp[1]]);
    let prime = s
        .continuation(pair, &h.prime)
        .ok_or_else(|| Error::AlphaMissing(format!("{} on {}", h.prime, s.tuple_name(&[pair.0, pair.1]))))?;
    // face index of the slot pair in the triple: removing the complementary position
    let face_of = |pos: [usize; 2]| 3 - pos[0] - pos[1];
    let fi = face_of(sp);
    let (want_src, want_tgt) = if h.slot == 2 {
        (&other.faces[fi], &base.faces[fi])
    } else {
        (&base.faces[fi], &other.faces[fi])
    };
    if &prime.source != want_src || &prime.target != want_tgt {
        return Err(Error::Schema(format!("product homotopy {} has continuation with wrong endpoints", h.name)));
    }
    for j in 0..3 {
        if j != fi && base.faces[j] != other.faces[j] {
            return Err(Error::Schema(format!("product homotopy {} changes a face it should fix", h.name)));
        }
    }
    let m01 = s.cf(t[0], t[1]);
    let m12 = s.cf(t[1], t[2]);
    let m02 = s.cf(t[0], t[2]);
    // inputs: first face (0,1) is face 2, second (1,2) is face 0, output (0,2) is face 1
    let in_side = if h.slot == 2 { other } else { base };
    let d01 = datum_complex(s, (t[0], t[1]), &in_side.faces[2])?;
    let d12 = datum_complex(s, (t[1], t[2]), &in_side.faces[0])?;
    let d02 = datum_complex(s, (t[0], t[2]), &base.faces[1])?;
    let mu = |d: &Datum, a: &SVec, b: &SVec| -> SVec {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(v) = d.ops.get(&vec![*i, *j]) {
                    out = sparse::axpy(ring, &out, &ring.mul(x, y), v);
                }
            }
        }
        out
    };
    let gamma = |a: &SVec, b: &SVec| -> SVec {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(v) = h.gamma.get(&(*i, *j)) {
                    out = sparse::axpy(ring, &out, &ring.mul(x, y), v);
                }
            }
        }
        out
    };
    for ((i, j), v) in &h.gamma {
        if *i >= m01.rank() || *j >= m12.rank() {
            return Err(Error::ShapeMismatch(format!("γ of {} has inputs out of range", h.name)));
        }
        let deg = m01.degree(*i) + m12.degree(*j) - 1;
        if v.iter().any(|(o, _)| *o >= m02.rank() || m02.degree(*o) != deg) {
            return Err(Error::ShapeMismatch(format!("γ of {} has output of the wrong degree", h.name)));
        }
    }
    for i in 0..m01.rank() {
        for j in 0..m12.rank() {
            let a = sparse::unit(i, ring);
            let b = sparse::unit(j, ring);
            let sgn = ring.sign((m01.degree(i) - 1).rem_euclid(2) == 1);
            let mut lhs = d02.d(&gamma(&a, &b));
            lhs = sparse::sub(ring, &lhs, &gamma(&d01.d(&a), &b));
            lhs = sparse::axpy(ring, &lhs, &ring.neg(&sgn), &gamma(&a, &d12.d(&b)));
            let other_side = match h.slot {
                0 => mu(other, &sparse::apply(ring, &prime.alpha, &a), &b),
                1 => mu(other, &a, &sparse::apply(ring, &prime.alpha, &b)),
                _ => sparse::apply(ring, &prime.alpha, &mu(other, &a, &b)),
            };
            let rhs = sparse::sub(ring, &other_side, &mu(base, &a, &b));
            if lhs != rhs {
                return Ok(Some(format!(
                    "product homotopy {} on {} fails on ({}, {})",
                    h.name,
                    s.tuple_name(t),
                    m01.label(i),
                    m12.label(j)
                )));
            }
        }
    }
    Ok(None)
}

fn check_product_homotopies(s: &WeakFloerSetup) -> AxiomCheck {
    let mut d = Vec::new();
    for (t, hs) in &s.data.dppp {
        for h in hs {
            match product_homotopy_failure(s, t, h) {
                Ok(None) => {}
                Ok(Some(m)) => d.push(m),
                Err(e) => d.push(format!("{} on {}: {e}", h.name, s.tuple_name(t))),
            }
        }
    }
    for t in s.composable_tuples().into_iter().filter(|t| t.len() == 3) {
        for slot in 0..3 {
            let sp = slot_pair(slot);
            let fi = 3 - sp[0] - sp[1];
            let pair = (t[sp[0]], t[sp[1]]);
            let empty = Vec::new();
            let cs = s.data.dp.get(&pair).unwrap_or(&empty);
            for base in s.data(&t) {
                for c in cs {
                    let fits = if slot == 2 { c.target == base.faces[fi] } else { c.source == base.faces[fi] };
                    if !fits {
                        continue;
                    }
                    let found = s.data.dppp.get(&t).map_or(false, |v| {
                        v.iter().any(|h| h.slot == slot && h.base == base.name && h.prime == c.name)
                    });
                    if !found {
                        d.push(format!(
                            "no product homotopy in slot {slot} over ({}, {}) on {}",
                            base.name,
                            c.name,
                            s.tuple_name(&t)
                        ));
                    }
                }
            }
        }
    }
    check("product-homotopies", d)
}

/// Checks every axiom applicable to the setup's profile.
pub fn validate_setup(s: &WeakFloerSetup) -> SetupReport {
    let mut checks = vec![
        check_lagrangians(s),
        check_composable(s),
        check_complexes(s),
        check_operation_shapes(s),
    ];
    let shapes_ok = checks.iter().all(|c| c.status != Status::Fail);
    match s.profile {
        Profile::Envelope => {
            checks.push(skipped("restriction-functoriality"));
            checks.push(skipped("contractibility"));
            checks.push(if shapes_ok { check_relations(s) } else { skipped("a-infinity-relations") });
            for a in ["continuation-maps", "unit-continuations", "continuation-homotopies", "product-homotopies"] {
                checks.push(skipped(a));
            }
        }
        Profile::Full => {
            let r = check_restrictions(s);
            let r_ok = r.status != Status::Fail;
            checks.push(r);
            if r_ok && shapes_ok {
                checks.push(check_contractibility(s));
                checks.push(check_relations(s));
            } else {
                checks.push(skipped("contractibility"));
                checks.push(skipped("a-infinity-relations"));
            }
            checks.push(check_continuations(s));
            checks.push(check_unit_continuations(s));
            checks.push(check_continuation_homotopies(s));
            checks.push(check_product_homotopies(s));
        }
    }
    SetupReport {
        profile: s.profile,
        checks,
    }
}

/// Fails with [`Error::ValidationRequired`] unless the setup validates.
pub fn require_valid(s: &WeakFloerSetup) -> Result<()> {
    let r = validate_setup(s);
    match r.first_failure() {
        None => Ok(()),
        Some(m) => Err(Error::ValidationRequired(m)),
    }
}

/// Promotes an envelope-profile setup to the full profile with identity
/// continuations and zero homotopies.
pub fn promote_to_full(s: &WeakFloerSetup) -> WeakFloerSetup {
    let mut out = s.clone();
    out.profile = Profile::Full;
    let ring = s.ring;
    for (l, k) in s.composable_pairs() {
        let m = s.cf(l, k);
        let mut fmap = BTreeMap::new();
        let mut cs = Vec::new();
        let mut hs = Vec::new();
        for a in s.data(&[l, k]) {
            let name = format!("f:{}", a.name);
            fmap.insert(a.name.clone(), name.clone());
            cs.push(super::model::Continuation {
                name,
                source: a.name.clone(),
                target: a.name.clone(),
                alpha: (0..m.rank()).map(|i| sparse::unit(i, ring)).collect(),
            });
        }
        for a in s.data(&[l, k]) {
            let f = format!("f:{}", a.name);
            hs.push(super::model::ContinuationHomotopy {
                name: format!("h:{}", a.name),
                first: f.clone(),
                second: f.clone(),
                direct: f,
                beta: vec![Vec::new(); m.rank()],
            });
        }
        out.data.f.insert((l, k), fmap);
        out.data.dp.insert((l, k), cs);
        out.data.dpp.insert((l, k), hs);
    }
    for t in s.composable_tuples().into_iter().filter(|t| t.len() == 3) {
        let mut hs = Vec::new();
        for base in s.data(&t) {
            for slot in 0..3 {
                let fi = 3 - slot_pair(slot)[0] - slot_pair(slot)[1];
                hs.push(super::model::ProductHomotopy {
                    name: format!("g{slot}:{}", base.name),
                    slot,
                    base: base.name.clone(),
                    other: base.name.clone(),
                    prime: format!("f:{}", base.faces[fi]),
                    gamma: BTreeMap::new(),
                });
            }
        }
        out.data.dppp.insert(t, hs);
    }
    out
}
