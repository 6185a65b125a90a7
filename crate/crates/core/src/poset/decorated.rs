//! Decorated posets, their A∞-categories `𝒪_P` and the no-duplicates check.

use std::collections::BTreeMap;

use crate::ainf::{cohomology_category, AInfCategory, HCategory};
use crate::error::{Error, Result};
use crate::io::PosetSpec;
use crate::loc::{Class, MultiplicativeSystem};
use crate::setup::{unit_label, CompatibleCollection, WeakFloerSetup};
use crate::wrap::ContinuationSystem;

/// A finite poset whose totally ordered tuples carry Floer data.
///
/// Chains are stored in descending order `p_k > … > p₀`, which is path order
/// in `𝒪_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedPoset {
    pub names: Vec<String>,
    pub lagrangians: Vec<usize>,
    /// `greater[p][q]` iff `p > q`.
    greater: Vec<Vec<bool>>,
    pub eta: BTreeMap<Vec<usize>, String>,
    pub wrapping_sequences: Vec<Vec<usize>>,
}

impl DecoratedPoset {
    /// Builds the poset generated by `relations` (`(p, q)` means `p > q`),
    /// decorating every chain by `decorate` on its Lagrangian tuple.
    pub fn new(
        names: Vec<String>,
        lagrangians: Vec<usize>,
        relations: &[(usize, usize)],
        decorate: impl Fn(&[usize]) -> Option<String>,
    ) -> Result<Self> {
        let n = names.len();
        let mut greater = vec![vec![false; n]; n];
        for &(p, q) in relations {
            greater[p][q] = true;
        }
        for k in 0..n {
            for p in 0..n {
                if greater[p][k] {
                    for q in 0..n {
                        if greater[k][q] {
                            greater[p][q] = true;
                        }
                    }
                }
            }
        }
        if let Some(p) = (0..n).find(|p| greater[*p][*p]) {
            return Err(Error::Schema(format!("order relation has a cycle through {}", names[p])));
        }
        let mut poset = DecoratedPoset {
            names,
            lagrangians,
            greater,
            eta: BTreeMap::new(),
            wrapping_sequences: Vec::new(),
        };
        for chain in poset.chains() {
            let t = poset.tuple(&chain);
            let d = decorate(&t).ok_or_else(|| Error::DecorationInconsistent(format!("no datum for {}", poset.chain_name(&chain))))?;
            poset.eta.insert(chain, d);
        }
        Ok(poset)
    }

    /// The poset of a setup file, decorated by `δ`.
    pub fn from_spec(spec: &PosetSpec, delta: &CompatibleCollection) -> Result<Self> {
        let names = spec.elements.iter().map(|(n, _)| n.clone()).collect();
        let lags = spec.elements.iter().map(|(_, l)| *l).collect();
        let mut p = Self::new(names, lags, &spec.order, |t| delta.get(t).map(str::to_string))?;
        p.wrapping_sequences = spec.wrapping_sequences.clone();
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_greater(&self, p: usize, q: usize) -> bool {
        self.greater[p][q]
    }

    pub fn tuple(&self, chain: &[usize]) -> Vec<usize> {
        chain.iter().map(|p| self.lagrangians[*p]).collect()
    }

    pub fn chain_name(&self, chain: &[usize]) -> String {
        let names: Vec<&str> = chain.iter().map(|p| self.names[*p].as_str()).collect();
        format!("({})", names.join(" > "))
    }

    /// All descending chains with at least two elements, lexicographically.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|p| vec![p]).collect();
        while let Some(c) = stack.pop() {
            if c.len() >= 2 {
                out.push(c.clone());
            }
            let last = *c.last().unwrap();
            for q in (0..n).rev() {
                if self.greater[last][q] {
                    let mut d = c.clone();
                    d.push(q);
                    stack.push(d);
                }
            }
        }
        out
    }

    /// `P^{≤p}`, in index order.
    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|q| *q == p || self.greater[p][*q]).collect()
    }

    /// Adds `p > q` and its transitive consequences.
    pub(crate) fn add_relation(&mut self, p: usize, q: usize) {
        let n = self.len();
        let ups: Vec<usize> = (0..n).filter(|a| *a == p || self.greater[*a][p]).collect();
        let downs: Vec<usize> = (0..n).filter(|b| *b == q || self.greater[q][*b]).collect();
        for a in &ups {
            for b in &downs {
                self.greater[*a][*b] = true;
            }
        }
    }

    pub(crate) fn push_element(&mut self, name: String, lagrangian: usize) -> usize {
        self.names.push(name);
        self.lagrangians.push(lagrangian);
        for row in &mut self.greater {
            row.push(false);
        }
        self.greater.push(vec![false; self.names.len()]);
        self.names.len() - 1
    }

    /// Checks that each chain is decorated by a datum of its composable tuple
    /// whose faces are the decorations of the subchains.
    pub fn check_decoration(&self, s: &WeakFloerSetup) -> Result<()> {
        for chain in self.chains() {
            let t = self.tuple(&chain);
            let name = self
                .eta
                .get(&chain)
                .ok_or_else(|| Error::DecorationInconsistent(format!("{} is undecorated", self.chain_name(&chain))))?;
            if !s.is_composable(&t) {
                return Err(Error::DecorationInconsistent(format!("{} is not composable", s.tuple_name(&t))));
            }
            let d = s
                .datum(&t, name)
                .ok_or_else(|| Error::DecorationInconsistent(format!("{name} is not a datum of {}", s.tuple_name(&t))))?;
            if chain.len() > 2 {
                for j in 0..chain.len() {
                    let mut face = chain.clone();
                    face.remove(j);
                    if d.faces.get(j) != self.eta.get(&face) {
                        return Err(Error::DecorationInconsistent(format!(
                            "face {j} of {} disagrees with {}",
                            self.chain_name(&chain),
                            self.chain_name(&face)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `hom(p,q) = CF(L_p, L_q)` for `p > q`, strict units, and the operations
/// of `η` on chains.
pub fn build_o_p(p: &DecoratedPoset, s: &WeakFloerSetup) -> Result<AInfCategory> {
    p.check_decoration(s)?;
    let mut a = AInfCategory::new(s.ring, p.names.clone());
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.is_greater(x, y) {
                a.set_hom(x, y, s.cf(p.lagrangians[x], p.lagrangians[y]));
            }
        }
    }
    for (chain, name) in &p.eta {
        let t = p.tuple(chain);
        let d = s.datum(&t, name).expect("checked decoration");
        for (inputs, out) in &d.ops {
            a.add_op(chain, inputs, out)?;
        }
    }
    a.adjoin_strict_units(unit_label)?;
    Ok(a)
}

/// `𝒪_P` with its cohomology and the system `I_{P,C}`.
pub struct PosetCategory {
    pub poset: DecoratedPoset,
    pub ainf: AInfCategory,
    pub h: HCategory,
    pub system: MultiplicativeSystem,
    /// Index of the class of `cs` behind each class of `system`, `None` for identities.
    pub origin: Vec<Option<usize>>,
}

impl PosetCategory {
    pub fn build(p: &DecoratedPoset, cs: &ContinuationSystem) -> Result<Self> {
        let ainf = build_o_p(p, &cs.setup)?;
        let h = cohomology_category(&ainf, &ainf.unit_vectors())?;
        let mut system = MultiplicativeSystem::with_identities(&h, Vec::new());
        let mut origin = vec![None; system.classes.len()];
        for x in 0..p.len() {
            for y in 0..p.len() {
                if !p.is_greater(x, y) {
                    continue;
                }
                let (lx, ly) = (p.lagrangians[x], p.lagrangians[y]);
                for (i, c) in cs.system.classes.iter().enumerate() {
                    if c.source != lx || c.target != ly || cs.system.is_identity(&cs.h, i) {
                        continue;
                    }
                    let vector = match h.presentation(x, y) {
                        Some(pr) => pr.project(0, &cs.cycles[i])?,
                        None => Vec::new(),
                    };
                    let before = system.classes.len();
                    system.push(Class { source: x, target: y, vector });
                    if system.classes.len() > before {
                        origin.push(Some(i));
                    }
                }
            }
        }
        Ok(PosetCategory {
            poset: p.clone(),
            ainf,
            h,
            system,
            origin,
        })
    }
}

/// A pair of distinct elements with isomorphic decorated down-sets.
pub fn find_duplicate(p: &DecoratedPoset) -> Result<Option<(usize, usize)>> {
    if p.len() > 12 {
        return Err(Error::Unsupported(format!("exhaustive isomorphism search on {} elements", p.len())));
    }
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if down_sets_isomorphic(p, a, b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

fn down_sets_isomorphic(p: &DecoratedPoset, a: usize, b: usize) -> bool {
    let da = p.down_set(a);
    let db = p.down_set(b);
    if da.len() != db.len() {
        return false;
    }
    let below = |x: usize| (0..p.len()).filter(|y| p.is_greater(x, *y)).count();
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; p.len()];
    fn extend(
        p: &DecoratedPoset,
        da: &[usize],
        db: &[usize],
        k: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        below: &dyn Fn(usize) -> usize,
    ) -> bool {
        if k == da.len() {
            return p.chains().iter().filter(|c| c.iter().all(|x| da.contains(x))).all(|c| {
                let mapped: Vec<usize> = c.iter().map(|x| image[*x]).collect();
                p.eta.get(c) == p.eta.get(&mapped)
            });
        }
        let x = da[k];
        for &y in db {
            if used[y] || p.lagrangians[x] != p.lagrangians[y] || below(x) != below(y) {
                continue;
            }
            let consistent = da[..k].iter().all(|&z| {
                let w = image[z];
                p.is_greater(x, z) == p.is_greater(y, w) && p.is_greater(z, x) == p.is_greater(w, y)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(p, da, db, k + 1, image, used, below) {
                return true;
            }
            used[y] = false;
            image[x] = usize::MAX;
        }
        false
    }
    extend(p, &da, &db, 0, &mut image, &mut used, &below)
}
