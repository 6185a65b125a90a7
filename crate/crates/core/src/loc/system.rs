//! Multiplicative systems of degree-0 classes in a cohomology category and
//! the right Ore conditions.

use serde::Serialize;

use crate::ainf::HCategory;
use crate::linalg::sparse::{self, Echelon, SVec};
use crate::linalg::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub source: usize,
    pub target: usize,
    pub vector: SVec,
}

/// A finite set of degree-0 classes, closed under the operations checked by
/// [`check_right_multiplicative_system`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicativeSystem {
    pub classes: Vec<Class>,
}

impl MultiplicativeSystem {
    /// The identities of `h` followed by the given classes, without duplicates.
    pub fn with_identities(h: &HCategory, classes: Vec<Class>) -> Self {
        let mut out = MultiplicativeSystem::default();
        for x in 0..h.object_count() {
            if let Some(e) = h.identity(x) {
                out.push(Class {
                    source: x,
                    target: x,
                    vector: e.clone(),
                });
            }
        }
        for c in classes {
            out.push(c);
        }
        out
    }

    pub fn push(&mut self, c: Class) -> usize {
        match self.find(c.source, c.target, &c.vector) {
            Some(i) => i,
            None => {
                self.classes.push(c);
                self.classes.len() - 1
            }
        }
    }

    pub fn find(&self, source: usize, target: usize, v: &SVec) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.source == source && c.target == target && &c.vector == v)
    }

    pub fn into_target(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(move |i| self.classes[*i].target == x)
    }

    pub fn out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(move |i| self.classes[*i].source == x)
    }

    pub fn is_identity(&self, h: &HCategory, i: usize) -> bool {
        let c = &self.classes[i];
        c.source == c.target && h.identity(c.source) == Some(&c.vector)
    }

    pub fn name(&self, h: &HCategory, i: usize) -> String {
        let c = &self.classes[i];
        if self.is_identity(h, i) {
            return format!("1_{}", h.objects[c.source]);
        }
        h.hom(c.source, c.target).format_vector(&c.vector)
    }

    /// Non-identity classes that are not composites of two non-identity classes.
    pub fn irreducible(&self, h: &HCategory) -> Vec<bool> {
        let n = self.classes.len();
        let mut irr: Vec<bool> = (0..n).map(|i| !self.is_identity(h, i)).collect();
        for a in 0..n {
            if self.is_identity(h, a) {
                continue;
            }
            for b in self.out_of(self.classes[a].target).collect::<Vec<_>>() {
                if self.is_identity(h, b) {
                    continue;
                }
                let (ca, cb) = (&self.classes[a], &self.classes[b]);
                let v = h.compose(ca.source, ca.target, cb.target, &ca.vector, &cb.vector);
                if let Some(k) = self.find(ca.source, cb.target, &v) {
                    irr[k] = false;
                }
            }
        }
        irr
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RmsReport {
    pub conditions: Vec<ConditionResult>,
}

impl RmsReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.condition == name)
    }

    /// Whether identities, composition, Ore and cancellation all hold.
    pub fn is_right_multiplicative(&self) -> bool {
        ["identities", "composition", "ore", "cancellation"]
            .iter()
            .all(|n| self.condition(n).map_or(false, |c| c.passed))
    }

    pub fn first_failure(&self) -> Option<String> {
        self.conditions
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", c.condition, c.witness.clone().unwrap_or_default()))
    }
}

/// Finds a vector of `F^dim` outside every given subspace, or `None` when
/// their union is everything.
pub fn uncovered_vector(ring: Ring, dim: usize, subspaces: &[Echelon]) -> Option<SVec> {
    if dim == 0 || subspaces.iter().any(|s| s.rank() == dim) {
        return None;
    }
    if let Some(elems) = ring.elements() {
        let q = elems.len();
        if (q as f64).powi(dim as i32) <= 65536.0 {
            let total = q.pow(dim as u32);
            for mut code in 1..total {
                let mut v = Vec::new();
                for i in 0..dim {
                    let x = &elems[code % q];
                    code /= q;
                    if !x.is_zero() {
                        v.push((i, x.clone()));
                    }
                }
                if !subspaces.iter().any(|s| s.contains(&v)) {
                    return Some(v);
                }
            }
            return None;
        }
    }
    // a proper subspace meets the moment curve in fewer than `dim` points
    let mut t = 0i64;
    loop {
        let tt = ring.from_int(t);
        let mut p = ring.one();
        let mut v = Vec::new();
        for i in 0..dim {
            if !p.is_zero() {
                v.push((i, p.clone()));
            }
            p = ring.mul(&p, &tt);
        }
        if !subspaces.iter().any(|s| s.contains(&v)) {
            return Some(v);
        }
        t += 1;
    }
}

fn embed(idx: &[usize], v: &SVec) -> SVec {
    v.iter().map(|(i, x)| (idx[*i], x.clone())).collect()
}

/// Checks identities, closure under composition, the right Ore condition,
/// right cancellation, the existence of non-identity arrows into every
/// object and of a weakly terminal object in every slice.
pub fn check_right_multiplicative_system(h: &HCategory, c: &MultiplicativeSystem) -> RmsReport {
    let ring = h.ring;
    let n = h.object_count();
    let mut conditions = Vec::new();

    let mut w = None;
    for x in 0..n {
        let ok = h.identity(x).map_or(false, |e| c.find(x, x, e).is_some());
        if !ok {
            w = Some(format!("identity of {} is not in the system", h.objects[x]));
            break;
        }
    }
    conditions.push(ConditionResult {
        condition: "identities".into(),
        passed: w.is_none(),
        witness: w,
    });

    let mut w = None;
    'outer: for a in 0..c.classes.len() {
        for b in c.out_of(c.classes[a].target).collect::<Vec<_>>() {
            let (ca, cb) = (&c.classes[a], &c.classes[b]);
            let v = h.compose(ca.source, ca.target, cb.target, &ca.vector, &cb.vector);
            if c.find(ca.source, cb.target, &v).is_none() {
                w = Some(format!("{} ∘ {} is not in the system", c.name(h, b), c.name(h, a)));
                break 'outer;
            }
        }
    }
    conditions.push(ConditionResult {
        condition: "composition".into(),
        passed: w.is_none(),
        witness: w,
    });

    conditions.push(ore_condition(h, c, ring));
    conditions.push(cancellation_condition(h, c, ring));

    let mut w = None;
    for x in 0..n {
        if !c.into_target(x).any(|i| c.classes[i].source != x) {
            w = Some(format!("no system arrow into {} from another object", h.objects[x]));
            break;
        }
    }
    conditions.push(ConditionResult {
        condition: "nontrivial-arrows".into(),
        passed: w.is_none(),
        witness: w,
    });

    let mut w = None;
    for x in 0..n {
        let s = super::slice::Slice::new(h, c, x);
        if s.weakly_terminal.is_empty() {
            w = Some(format!("slice over {} has no weakly terminal object", h.objects[x]));
            break;
        }
    }
    conditions.push(ConditionResult {
        condition: "finite-cofinal".into(),
        passed: w.is_none(),
        witness: w,
    });
    RmsReport { conditions }
}

fn ore_condition(h: &HCategory, c: &MultiplicativeSystem, ring: Ring) -> ConditionResult {
    let n = h.object_count();
    for (ci, cl) in c.classes.iter().enumerate() {
        let (yw, y) = (cl.source, cl.target);
        for x in 0..n {
            let hom = h.hom(x, y);
            for d in hom.degrees() {
                let idx = hom.indices_in(d);
                let mut subs = Vec::new();
                for xi in c.into_target(x) {
                    let xw = c.classes[xi].source;
                    let cx = &c.classes[xi].vector;
                    let image: Vec<SVec> = h
                        .hom(xw, yw)
                        .indices_in(d)
                        .iter()
                        .map(|k| h.compose(xw, yw, y, &sparse::unit(*k, ring), &cl.vector))
                        .collect();
                    let im = Echelon::from_vectors(ring, image.iter());
                    let cols: Vec<SVec> = idx
                        .iter()
                        .map(|g| im.reduce(&h.compose(xw, x, y, cx, &sparse::unit(*g, ring))))
                        .collect();
                    let ker = sparse::kernel(ring, &cols);
                    subs.push(Echelon::from_vectors(ring, ker.iter()));
                }
                if let Some(v) = uncovered_vector(ring, idx.len(), &subs) {
                    let g = embed(&idx, &v);
                    return ConditionResult {
                        condition: "ore".into(),
                        passed: false,
                        witness: Some(format!(
                            "{} → {} ← {} with g = {}, c = {} has no completing square",
                            h.objects[x],
                            h.objects[y],
                            h.objects[yw],
                            hom.format_vector(&g),
                            c.name(h, ci)
                        )),
                    };
                }
            }
        }
    }
    ConditionResult {
        condition: "ore".into(),
        passed: true,
        witness: None,
    }
}

fn cancellation_condition(h: &HCategory, c: &MultiplicativeSystem, ring: Ring) -> ConditionResult {
    let n = h.object_count();
    for (ci, cl) in c.classes.iter().enumerate() {
        let (y, y2) = (cl.source, cl.target);
        for x in 0..n {
            let hom = h.hom(x, y);
            for d in hom.degrees() {
                let idx = hom.indices_in(d);
                let post: Vec<SVec> = idx
                    .iter()
                    .map(|g| h.compose(x, y, y2, &sparse::unit(*g, ring), &cl.vector))
                    .collect();
                let null: Vec<SVec> = sparse::kernel(ring, &post).iter().map(|k| embed(&idx, k)).collect();
                if null.is_empty() {
                    continue;
                }
                let mut subs = Vec::new();
                for xi in c.into_target(x) {
                    let xw = c.classes[xi].source;
                    let cols: Vec<SVec> = null
                        .iter()
                        .map(|g| h.compose(xw, x, y, &c.classes[xi].vector, g))
                        .collect();
                    let ker = sparse::kernel(ring, &cols);
                    subs.push(Echelon::from_vectors(ring, ker.iter()));
                }
                if let Some(v) = uncovered_vector(ring, null.len(), &subs) {
                    let mut g = Vec::new();
                    for (k, s) in &v {
                        g = sparse::axpy(ring, &g, s, &null[*k]);
                    }
                    return ConditionResult {
                        condition: "cancellation".into(),
                        passed: false,
                        witness: Some(format!(
                            "{} ∘ g = 0 for g = {} but no system arrow into {} kills g",
                            c.name(h, ci),
                            hom.format_vector(&g),
                            h.objects[x]
                        )),
                    };
                }
            }
        }
    }
    ConditionResult {
        condition: "cancellation".into(),
        passed: true,
        witness: None,
    }
}
