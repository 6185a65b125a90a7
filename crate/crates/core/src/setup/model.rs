//! Weak Floer setups: Lagrangian labels, composable tuples, CF modules and
//! the Floer-data system with its homotopy-coherence data.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::sparse::SVec;
use crate::linalg::{GradedModule, Ring};

/// Name of the single datum carried by every tuple in the envelope profile.
pub const ENVELOPE_DATUM: &str = "0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Envelope,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composable {
    /// Every tuple of pairwise distinct Lagrangians.
    AllDistinct,
    /// Listed tuples of length at least two.
    Explicit(BTreeSet<Vec<usize>>),
}

/// One element of `D(L₀,…,L_k)` with its codimension-one faces and operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Datum {
    pub name: String,
    /// Face `j` is the datum on the tuple with position `j` removed; empty for pairs.
    pub faces: Vec<String>,
    /// `μᵏ` on basis inputs of `CF(L₀,L₁), …, CF(L_{k−1},L_k)`.
    pub ops: BTreeMap<Vec<usize>, SVec>,
}

/// An element of `D′(L,K)`: a chain map between the complexes of two data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuation {
    pub name: String,
    pub source: String,
    pub target: String,
    pub alpha: Vec<SVec>,
}

/// An element of `D″(L,K)`: `dβ + βd = α_second ∘ α_first − α_direct`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuationHomotopy {
    pub name: String,
    pub first: String,
    pub second: String,
    pub direct: String,
    pub beta: Vec<SVec>,
}

/// An element of `D‴_slot(L₀,L₁,L₂)`: a homotopy between `μ²_base` and
/// `μ²_other` composed with `α_prime` on the slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductHomotopy {
    pub name: String,
    pub slot: usize,
    pub base: String,
    pub other: String,
    pub prime: String,
    pub gamma: BTreeMap<(usize, usize), SVec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FloerDataSystem {
    pub d: BTreeMap<Vec<usize>, Vec<Datum>>,
    pub dp: BTreeMap<(usize, usize), Vec<Continuation>>,
    pub dpp: BTreeMap<(usize, usize), Vec<ContinuationHomotopy>>,
    pub dppp: BTreeMap<Vec<usize>, Vec<ProductHomotopy>>,
    /// `f: D(L,K) → D′(L,K)` by datum name.
    pub f: BTreeMap<(usize, usize), BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakFloerSetup {
    pub ring: Ring,
    pub lagrangians: Vec<String>,
    pub composable: Composable,
    pub cf: BTreeMap<(usize, usize), GradedModule>,
    pub profile: Profile,
    pub data: FloerDataSystem,
}

/// A restriction-compatible choice of one datum per composable tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompatibleCollection {
    pub delta: BTreeMap<Vec<usize>, String>,
}

impl CompatibleCollection {
    pub fn get(&self, tuple: &[usize]) -> Option<&str> {
        self.delta.get(tuple).map(|s| s.as_str())
    }
}

/// Positions `0..n` with `j` removed.
pub fn face_positions(n: usize, j: usize) -> Vec<usize> {
    (0..n).filter(|i| *i != j).collect()
}

pub fn subtuple(tuple: &[usize], positions: &[usize]) -> Vec<usize> {
    positions.iter().map(|p| tuple[*p]).collect()
}

fn all_distinct(t: &[usize]) -> bool {
    let s: BTreeSet<&usize> = t.iter().collect();
    s.len() == t.len()
}

impl WeakFloerSetup {
    pub fn new(ring: Ring, lagrangians: Vec<String>, composable: Composable) -> Self {
        WeakFloerSetup {
            ring,
            lagrangians,
            composable,
            cf: BTreeMap::new(),
            profile: Profile::Envelope,
            data: FloerDataSystem::default(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lagrangians.iter().position(|l| l == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.lagrangians[i]
    }

    pub fn tuple_name(&self, t: &[usize]) -> String {
        format!("({})", t.iter().map(|i| self.name(*i)).collect::<Vec<_>>().join(","))
    }

    pub fn is_composable(&self, t: &[usize]) -> bool {
        if t.len() < 2 {
            return t.len() == 1;
        }
        match &self.composable {
            Composable::AllDistinct => all_distinct(t),
            Composable::Explicit(set) => set.contains(t),
        }
    }

    /// All composable tuples of length at least two, by length then lexicographically.
    pub fn composable_tuples(&self) -> Vec<Vec<usize>> {
        match &self.composable {
            Composable::Explicit(set) => {
                let mut v: Vec<Vec<usize>> = set.iter().cloned().collect();
                v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                v
            }
            Composable::AllDistinct => {
                let n = self.lagrangians.len();
                let mut out = Vec::new();
                let mut layer: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
                while !layer.is_empty() {
                    let mut next = Vec::new();
                    for t in &layer {
                        for i in 0..n {
                            if !t.contains(&i) {
                                let mut u = t.clone();
                                u.push(i);
                                next.push(u);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                out
            }
        }
    }

    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.composable_tuples()
            .into_iter()
            .filter(|t| t.len() == 2)
            .map(|t| (t[0], t[1]))
            .collect()
    }

    pub fn cf(&self, l: usize, k: usize) -> GradedModule {
        self.cf.get(&(l, k)).cloned().unwrap_or_else(|| GradedModule::zero(self.ring))
    }

    pub fn cf_ref(&self, l: usize, k: usize) -> Option<&GradedModule> {
        self.cf.get(&(l, k))
    }

    pub fn data(&self, t: &[usize]) -> &[Datum] {
        self.data.d.get(t).map_or(&[], |v| v.as_slice())
    }

    pub fn datum(&self, t: &[usize], name: &str) -> Option<&Datum> {
        self.data(t).iter().find(|d| d.name == name)
    }

    /// Restriction of a datum on `tuple` to the subsequence at `positions`.
    pub fn restrict(&self, tuple: &[usize], name: &str, positions: &[usize]) -> Option<String> {
        if positions.len() == tuple.len() {
            return Some(name.to_string());
        }
        if positions.len() < 2 {
            return None;
        }
        let j = (0..tuple.len()).find(|i| !positions.contains(i))?;
        let d = self.datum(tuple, name)?;
        let face = d.faces.get(j)?;
        let ft: Vec<usize> = subtuple(tuple, &face_positions(tuple.len(), j));
        let shifted: Vec<usize> = positions.iter().map(|p| if *p > j { p - 1 } else { *p }).collect();
        self.restrict(&ft, face, &shifted)
    }

    pub fn continuation(&self, pair: (usize, usize), name: &str) -> Option<&Continuation> {
        self.data.dp.get(&pair)?.iter().find(|c| c.name == name)
    }

    /// First element of `D′(L,K)` from `source` to `target`.
    pub fn continuation_between(&self, pair: (usize, usize), source: &str, target: &str) -> Option<&Continuation> {
        self.data
            .dp
            .get(&pair)?
            .iter()
            .find(|c| c.source == source && c.target == target)
    }

    pub fn f_of(&self, pair: (usize, usize), datum: &str) -> Option<&str> {
        self.data.f.get(&pair)?.get(datum).map(|s| s.as_str())
    }

    /// Replaces the data system by one datum per composable tuple carrying
    /// the given operations, as used by the envelope profile.
    pub fn set_envelope_operations(&mut self, ops: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, SVec>>) {
        let mut d = BTreeMap::new();
        for t in self.composable_tuples() {
            let faces = if t.len() > 2 {
                vec![ENVELOPE_DATUM.to_string(); t.len()]
            } else {
                Vec::new()
            };
            d.insert(
                t.clone(),
                vec![Datum {
                    name: ENVELOPE_DATUM.to_string(),
                    faces,
                    ops: ops.get(&t).cloned().unwrap_or_default(),
                }],
            );
        }
        self.data = FloerDataSystem {
            d,
            ..Default::default()
        };
        self.profile = Profile::Envelope;
    }

    /// The collection picking the envelope datum everywhere.
    pub fn envelope_collection(&self) -> CompatibleCollection {
        CompatibleCollection {
            delta: self
                .composable_tuples()
                .into_iter()
                .filter_map(|t| self.data(&t).first().map(|d| (t.clone(), d.name.clone())))
                .collect(),
        }
    }

    /// Restriction to a subset of Lagrangians, keeping every datum on tuples inside it.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<WeakFloerSetup> {
        let mut pos = BTreeMap::new();
        for (new, old) in keep.iter().enumerate() {
            if *old >= self.lagrangians.len() || pos.insert(*old, new).is_some() {
                return Err(Error::Schema("invalid Lagrangian subset".into()));
            }
        }
        let map_t = |t: &[usize]| -> Option<Vec<usize>> { t.iter().map(|i| pos.get(i).copied()).collect() };
        let composable = match &self.composable {
            Composable::AllDistinct => Composable::AllDistinct,
            Composable::Explicit(s) => Composable::Explicit(s.iter().filter_map(|t| map_t(t)).collect()),
        };
        let mut out = WeakFloerSetup::new(self.ring, keep.iter().map(|i| self.lagrangians[*i].clone()).collect(), composable);
        out.profile = self.profile;
        for ((l, k), m) in &self.cf {
            if let (Some(a), Some(b)) = (pos.get(l), pos.get(k)) {
                out.cf.insert((*a, *b), m.clone());
            }
        }
        for (t, v) in &self.data.d {
            if let Some(u) = map_t(t) {
                out.data.d.insert(u, v.clone());
            }
        }
        for (t, v) in &self.data.dppp {
            if let Some(u) = map_t(t) {
                out.data.dppp.insert(u, v.clone());
            }
        }
        let map_p = |p: &(usize, usize)| -> Option<(usize, usize)> { Some((*pos.get(&p.0)?, *pos.get(&p.1)?)) };
        for (p, v) in &self.data.dp {
            if let Some(q) = map_p(p) {
                out.data.dp.insert(q, v.clone());
            }
        }
        for (p, v) in &self.data.dpp {
            if let Some(q) = map_p(p) {
                out.data.dpp.insert(q, v.clone());
            }
        }
        for (p, v) in &self.data.f {
            if let Some(q) = map_p(p) {
                out.data.f.insert(q, v.clone());
            }
        }
        Ok(out)
    }
}
