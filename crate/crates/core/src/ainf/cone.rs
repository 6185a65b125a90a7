//! One-sided twisted complexes: shifts and mapping cones.
//!
//! Operations on shifted objects follow `μ_Σ(a₁,…,a_k) = (−1)^{σ₀} μ(a₁,…,a_k)`,
//! where `σ₀` is the shift of the source of `a₁`; an element of
//! `hom(S^σ X, S^τ Y)` coming from `a ∈ hom(X,Y)` has degree `|a| + σ − τ`.
//! Twisted operations insert the twisting cochains in every gap.

use std::collections::{BTreeMap, HashMap};

use super::category::{AInfCategory, AInfOps};
use super::relations::chains;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{Generator, GradedModule, Ring};

/// A twisted complex over the base: shifted components with a strictly
/// lower-triangular twisting cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedObject {
    pub name: String,
    /// `(base object, shift)`
    pub components: Vec<(usize, i32)>,
    /// `(from component, to component, element of the base hom)`, with `from < to`
    pub delta: Vec<(usize, usize, SVec)>,
}

impl TwistedObject {
    pub fn plain(name: &str, x: usize) -> Self {
        TwistedObject {
            name: name.to_string(),
            components: vec![(x, 0)],
            delta: Vec::new(),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.components.len() == 1 && self.components[0].1 == 0 && self.delta.is_empty()
    }

    /// All δ-paths from component `from` to component `to`, as lists of δ indices.
    fn paths(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        if from == to {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (k, (u, v, _)) in self.delta.iter().enumerate() {
            if *u == from && *v <= to {
                for mut p in self.paths(*v, to) {
                    p.insert(0, k);
                    out.push(p);
                }
            }
        }
        out
    }
}

/// A closed degree-0 morphism to take the cone of.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub morphism: SVec,
}

/// The base category extended by twisted complexes, with lazily evaluated operations.
#[derive(Clone, Debug)]
pub struct TwistedExtension {
    pub base: AInfCategory,
    pub objects: Vec<TwistedObject>,
    homs: BTreeMap<(usize, usize), (GradedModule, Vec<(usize, usize, usize)>)>,
    lookup: HashMap<(usize, usize, usize, usize, usize), usize>,
    paths: Vec<BTreeMap<(usize, usize), Vec<Vec<usize>>>>,
    zero: GradedModule,
}

impl TwistedExtension {
    /// Extends the base by the cones of the given morphisms.
    pub fn with_cones(base: &AInfCategory, cones: &[ConeSpec]) -> Result<Self> {
        let mut objects: Vec<TwistedObject> = base
            .objects
            .iter()
            .enumerate()
            .map(|(i, n)| TwistedObject::plain(n, i))
            .collect();
        for c in cones {
            let m = base.hom(c.source, c.target);
            if !c.morphism.is_empty() && m.vector_degree(&c.morphism) != Some(0) {
                return Err(Error::NotDegreeZero(c.name.clone()));
            }
            if !base.hom_complex(c.source, c.target)?.d(&c.morphism).is_empty() {
                return Err(Error::NotClosed(c.name.clone()));
            }
            objects.push(TwistedObject {
                name: c.name.clone(),
                components: vec![(c.source, 1), (c.target, 0)],
                delta: vec![(0, 1, c.morphism.clone())],
            });
        }
        Ok(Self::new(base.clone(), objects))
    }

    pub fn new(base: AInfCategory, objects: Vec<TwistedObject>) -> Self {
        let ring = base.ring;
        let mut homs = BTreeMap::new();
        let mut lookup = HashMap::new();
        for (s, ts) in objects.iter().enumerate() {
            for (t, tt) in objects.iter().enumerate() {
                let plain = ts.is_plain() && tt.is_plain();
                let mut gens = Vec::new();
                let mut index = Vec::new();
                for (p, (xp, sp)) in ts.components.iter().enumerate() {
                    for (q, (xq, sq)) in tt.components.iter().enumerate() {
                        let m = base.hom(*xp, *xq);
                        for i in 0..m.rank() {
                            lookup.insert((s, t, p, q, i), gens.len());
                            index.push((p, q, i));
                            gens.push(Generator {
                                label: if plain {
                                    m.label(i).to_string()
                                } else {
                                    format!("{}@{}{}", m.label(i), p, q)
                                },
                                degree: m.degree(i) + sp - sq,
                            });
                        }
                    }
                }
                if !gens.is_empty() {
                    let module = GradedModule::new(ring, gens).expect("component tags keep labels unique");
                    homs.insert((s, t), (module, index));
                }
            }
        }
        let paths = objects
            .iter()
            .map(|o| {
                let n = o.components.len();
                let mut m = BTreeMap::new();
                for u in 0..n {
                    for v in 0..n {
                        let ps = o.paths(u, v);
                        if !ps.is_empty() {
                            m.insert((u, v), ps);
                        }
                    }
                }
                m
            })
            .collect();
        TwistedExtension {
            zero: GradedModule::zero(ring),
            base,
            objects,
            homs,
            lookup,
            paths,
        }
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    /// Unit of each object: `Σ_p (−1)^{σ_p} 1_{X_p}`.
    pub fn unit_vectors(&self) -> BTreeMap<usize, SVec> {
        let ring = self.base.ring;
        let mut out = BTreeMap::new();
        for (s, o) in self.objects.iter().enumerate() {
            let mut v = Vec::new();
            let mut complete = true;
            for (p, (x, sh)) in o.components.iter().enumerate() {
                match self.base.units.get(x) {
                    Some(u) => {
                        let k = self.lookup[&(s, s, p, p, *u)];
                        v = sparse::add(ring, &v, &vec![(k, ring.sign(sh.rem_euclid(2) == 1))]);
                    }
                    None => complete = false,
                }
            }
            if complete {
                out.insert(s, v);
            }
        }
        out
    }

    /// Materializes all operations up to `max_arity`.
    pub fn materialize(&self, max_arity: usize) -> AInfCategory {
        let mut a = AInfCategory::new(self.base.ring, self.objects.iter().map(|o| o.name.clone()).collect());
        for ((s, t), (m, _)) in &self.homs {
            a.set_hom(*s, *t, m.clone());
        }
        for (x, u) in &self.base.units {
            a.units.insert(*x, *u);
        }
        for k in 1..=max_arity {
            for chain in chains(self, k) {
                let ranks: Vec<usize> = (0..k).map(|s| self.hom(chain[s], chain[s + 1]).rank()).collect();
                let total: usize = ranks.iter().product();
                for mut t in 0..total {
                    let mut inputs = vec![0; k];
                    for s in (0..k).rev() {
                        inputs[s] = t % ranks[s];
                        t /= ranks[s];
                    }
                    let v = self.mu(&chain, &inputs);
                    if !v.is_empty() {
                        a.set_op(&chain, &inputs, v);
                    }
                }
            }
        }
        a
    }
}

impl AInfOps for TwistedExtension {
    fn ring(&self) -> Ring {
        self.base.ring
    }

    fn object_names(&self) -> Vec<String> {
        self.objects.iter().map(|o| o.name.clone()).collect()
    }

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom(&self, x: usize, y: usize) -> &GradedModule {
        self.homs.get(&(x, y)).map_or(&self.zero, |h| &h.0)
    }

    fn max_arity(&self) -> usize {
        self.base.present_arity()
    }

    fn mu(&self, chain: &[usize], inputs: &[usize]) -> SVec {
        let ring = self.base.ring;
        let k = inputs.len();
        let maxa = self.base.present_arity();
        if k > maxa {
            return Vec::new();
        }
        // (p, q, base index) per input
        let mut parts = Vec::with_capacity(k);
        for s in 0..k {
            let (_, idx) = match self.homs.get(&(chain[s], chain[s + 1])) {
                Some(h) => h,
                None => return Vec::new(),
            };
            parts.push(idx[inputs[s]]);
        }
        // gaps between consecutive inputs must be bridged by δ-paths
        let mut gap_paths: Vec<&Vec<Vec<usize>>> = Vec::with_capacity(k.saturating_sub(1));
        for s in 1..k {
            let (_, q, _) = parts[s - 1];
            let (p, _, _) = parts[s];
            match self.paths[chain[s]].get(&(q, p)) {
                Some(ps) => gap_paths.push(ps),
                None => return Vec::new(),
            }
        }
        let first = &self.objects[chain[0]];
        let last = &self.objects[chain[k]];
        let mut out: SVec = Vec::new();
        let (p1, _, _) = parts[0];
        let (_, qk, _) = parts[k - 1];
        for start in 0..first.components.len() {
            let Some(lead) = self.paths[chain[0]].get(&(start, p1)) else {
                continue;
            };
            for end in 0..last.components.len() {
                let Some(trail) = self.paths[chain[k]].get(&(qk, end)) else {
                    continue;
                };
                let sign = ring.sign(first.components[start].1.rem_euclid(2) == 1);
                let mut choice = vec![0usize; gap_paths.len()];
                loop {
                    for lp in lead {
                        for tp in trail {
                            let total = k
                                + lp.len()
                                + tp.len()
                                + choice.iter().enumerate().map(|(g, c)| gap_paths[g][*c].len()).sum::<usize>();
                            if total > maxa {
                                continue;
                            }
                            let v = self.evaluate(chain, &parts, lp, &gap_paths, &choice, tp, start, end);
                            if !v.is_empty() {
                                for (i, x) in v {
                                    let kk = self.lookup[&(chain[0], chain[k], start, end, i)];
                                    out = sparse::add(ring, &out, &vec![(kk, ring.mul(&sign, &x))]);
                                }
                            }
                        }
                    }
                    let mut g = gap_paths.len();
                    let mut done = true;
                    while g > 0 {
                        g -= 1;
                        choice[g] += 1;
                        if choice[g] < gap_paths[g].len() {
                            done = false;
                            break;
                        }
                        choice[g] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        out
    }
}

impl TwistedExtension {
    #[allow(clippy::too_many_arguments)]
    fn evaluate(
        &self,
        chain: &[usize],
        parts: &[(usize, usize, usize)],
        lead: &[usize],
        gaps: &[&Vec<Vec<usize>>],
        choice: &[usize],
        trail: &[usize],
        start: usize,
        _end: usize,
    ) -> SVec {
        let ring = self.base.ring;
        let mut objs = Vec::new();
        let mut args: Vec<SVec> = Vec::new();
        let push_delta = |o: &TwistedObject, path: &[usize], objs: &mut Vec<usize>, args: &mut Vec<SVec>| {
            for d in path {
                let (_, v, el) = &o.delta[*d];
                args.push(el.clone());
                objs.push(o.components[*v].0);
            }
        };
        let first = &self.objects[chain[0]];
        objs.push(first.components[start].0);
        push_delta(first, lead, &mut objs, &mut args);
        for (s, (_, q, i)) in parts.iter().enumerate() {
            args.push(sparse::unit(*i, ring));
            objs.push(self.objects[chain[s + 1]].components[*q].0);
            if s + 1 < parts.len() {
                let o = &self.objects[chain[s + 1]];
                push_delta(o, &gaps[s][choice[s]], &mut objs, &mut args);
            }
        }
        push_delta(&self.objects[chain[parts.len()]], trail, &mut objs, &mut args);
        self.base.mu_vec(&objs, &args)
    }
}

/// The base category extended by the cone of one closed degree-0 morphism,
/// materialized up to `max_arity`.
pub fn cone(a: &AInfCategory, f: &ConeSpec, max_arity: usize) -> Result<AInfCategory> {
    Ok(TwistedExtension::with_cones(a, std::slice::from_ref(f))?.materialize(max_arity))
}
