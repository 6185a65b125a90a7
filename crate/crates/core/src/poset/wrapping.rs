//! Wrapping sequences in decorated posets, their extension under a
//! factorization oracle, and the comparison `τ` with `𝓕_{E_δ}`.

use serde::Serialize;

use super::compare::{zigzag, HFunctor, HomComparison};
use super::decorated::{DecoratedPoset, PosetCategory};
use super::entangle::VertexWitness;
use crate::ainf::AInfOps;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::loc::{gz_localize, FractionCategory};
use crate::wrap::ContinuationSystem;

#[derive(Clone, Debug, Serialize)]
pub struct WrappingReport {
    pub sequence: Vec<String>,
    /// Designated classes on consecutive pairs.
    pub classes: Vec<String>,
    /// Why the sequence has no usable classes, if so.
    pub missing_class: Option<String>,
    /// `colimᵢ HF(L_{pᵢ}, K) → HW(L_{p₀}, K)` for every `K`.
    pub defining: Vec<HomComparison>,
    /// `colimᵢ H𝒪_P(pᵢ, q) → H𝒲_{P,C}(p₀, q)` for every `q`.
    pub poset_side: Vec<HomComparison>,
}

impl WrappingReport {
    pub fn passed(&self) -> bool {
        self.missing_class.is_none() && self.defining.iter().all(|c| c.iso) && self.poset_side.iter().all(|c| c.iso)
    }
}

/// `𝒪_P` with both localizations needed to verify wrapping sequences.
pub struct SequenceVerifier<'a> {
    pub cs: &'a ContinuationSystem,
    pub poset: PosetCategory,
    pub poset_fraction: FractionCategory,
    pub fraction: FractionCategory,
}

impl<'a> SequenceVerifier<'a> {
    pub fn new(p: &DecoratedPoset, cs: &'a ContinuationSystem) -> Result<Self> {
        let poset = PosetCategory::build(p, cs)?;
        let poset_fraction = gz_localize(&poset.h, &poset.system, poset.system.classes.len())?;
        let fraction = gz_localize(&cs.h, &cs.system, cs.system.classes.len())?;
        Ok(SequenceVerifier {
            cs,
            poset,
            poset_fraction,
            fraction,
        })
    }

    pub fn verify(&self, seq: &[usize]) -> Result<WrappingReport> {
        let pc = &self.poset;
        let p = &pc.poset;
        let (h, sys) = (&pc.h, &pc.system);
        let ring = h.ring;
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        for w in seq.windows(2) {
            if !p.is_greater(w[1], w[0]) {
                return Err(Error::NotTotallyOrdered(format!("{} is not above {}", p.names[w[1]], p.names[w[0]])));
            }
        }
        let p0 = seq[0];
        for i in sys.into_target(p0) {
            let q = sys.classes[i].source;
            if !seq.iter().any(|s| *s == q || p.is_greater(*s, q)) {
                return Err(Error::NotCofinal(format!("{} maps to {} but lies above no element of the sequence", p.names[q], p.names[p0])));
            }
        }
        let mut report = WrappingReport {
            sequence: seq.iter().map(|s| p.names[*s].clone()).collect(),
            classes: Vec::new(),
            missing_class: None,
            defining: Vec::new(),
            poset_side: Vec::new(),
        };
        let mut composite: SVec = h.identity(p0).cloned().unwrap_or_default();
        for w in seq.windows(2) {
            let Some(c) = sys.into_target(w[0]).find(|i| sys.classes[*i].source == w[1]) else {
                report.missing_class = Some(format!("no class from {} to {}", p.names[w[1]], p.names[w[0]]));
                return Ok(report);
            };
            report.classes.push(format!("{}: {} → {}", sys.name(h, c), p.names[w[1]], p.names[w[0]]));
            composite = h.compose(w[1], w[0], p0, &sys.classes[c].vector, &composite);
        }
        let pn = *seq.last().unwrap();
        let (Some(ip), Some(ie)) = (sys.find(pn, p0, &composite), self.class_in_setup(pn, p0, &composite)) else {
            report.missing_class = Some(format!("the composite {} → {} is not in the system", p.names[pn], p.names[p0]));
            return Ok(report);
        };
        let (ln, l0) = (p.lagrangians[pn], p.lagrangians[p0]);
        let cs = self.cs;
        for k in 0..cs.h.object_count() {
            let cols: Vec<SVec> = (0..cs.h.hom(ln, k).rank())
                .map(|g| self.fraction.fraction(l0, k, ie, &sparse::unit(g, ring)).expect("class lies over its target"))
                .collect();
            report.defining.push(comparison(
                cs.h.objects[l0].clone(),
                cs.h.objects[k].clone(),
                cs.h.hom(ln, k),
                self.fraction.h.hom(l0, k),
                &cols,
                ring,
            ));
        }
        for q in 0..p.len() {
            let cols: Vec<SVec> = (0..h.hom(pn, q).rank())
                .map(|g| self.poset_fraction.fraction(p0, q, ip, &sparse::unit(g, ring)).expect("class lies over its target"))
                .collect();
            report.poset_side.push(comparison(
                p.names[p0].clone(),
                p.names[q].clone(),
                h.hom(pn, q),
                self.poset_fraction.h.hom(p0, q),
                &cols,
                ring,
            ));
        }
        Ok(report)
    }

    /// The class of the continuation system behind an `H𝒪_P(x,y)` vector.
    fn class_in_setup(&self, x: usize, y: usize, v: &SVec) -> Option<usize> {
        let p = &self.poset.poset;
        let image = to_setup_hom(self.cs, p, x, y, v);
        self.cs.system.find(p.lagrangians[x], p.lagrangians[y], &image)
    }
}

fn comparison(
    source: String,
    target: String,
    from: &crate::linalg::GradedModule,
    to: &crate::linalg::GradedModule,
    cols: &[SVec],
    ring: crate::linalg::Ring,
) -> HomComparison {
    let map_rank = sparse::rank(ring, cols);
    HomComparison {
        source,
        target,
        source_rank: from.rank(),
        target_rank: to.rank(),
        map_rank,
        iso: from.ranks() == to.ranks() && map_rank == from.rank(),
    }
}

/// `H𝒪_P(x,y) → H𝓕(L_x, L_y)`: units go to units, the rest is the identity of `CF`.
fn to_setup_hom(cs: &ContinuationSystem, p: &DecoratedPoset, x: usize, y: usize, v: &SVec) -> SVec {
    if x == y {
        let e = cs.h.identity(p.lagrangians[x]).cloned().unwrap_or_default();
        let s = sparse::get(v, 0);
        sparse::scale(cs.h.ring, &s, &e)
    } else {
        v.clone()
    }
}

/// Checks that `seq` is a wrapping sequence of `P` for the classes of `C`.
pub fn verify_wrapping_sequence(p: &DecoratedPoset, cs: &ContinuationSystem, seq: &[usize]) -> Result<WrappingReport> {
    SequenceVerifier::new(p, cs)?.verify(seq)
}

/// A query: a Lagrangian with a class of `C` into `target` such that it
/// extends every tuple of `below` to a composable tuple.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationQuery {
    pub step: usize,
    pub element: String,
    pub target: usize,
    /// Lagrangian tuples of the chains the answer must sit on top of.
    pub below: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorizationAnswer {
    pub lagrangian: usize,
    /// Class of the continuation system from `lagrangian` to the query target.
    pub class: usize,
}

pub trait FactorizationOracle {
    fn factor(&self, query: &FactorizationQuery) -> Option<FactorizationAnswer>;
}

/// Answers with the first class of the continuation system into the target
/// whose source extends every tuple.
pub struct ContinuationOracle<'a> {
    pub cs: &'a ContinuationSystem,
}

impl FactorizationOracle for ContinuationOracle<'_> {
    fn factor(&self, q: &FactorizationQuery) -> Option<FactorizationAnswer> {
        let sys = &self.cs.system;
        sys.into_target(q.target)
            .filter(|i| !sys.is_identity(&self.cs.h, *i) && sys.classes[*i].source != q.target)
            .find(|i| {
                let l = sys.classes[*i].source;
                q.below.iter().all(|t| {
                    let mut full = vec![l];
                    full.extend(t);
                    self.cs.setup.is_composable(&full)
                })
            })
            .map(|i| FactorizationAnswer {
                lagrangian: sys.classes[i].source,
                class: i,
            })
    }
}

pub struct RefusingOracle;

impl FactorizationOracle for RefusingOracle {
    fn factor(&self, _: &FactorizationQuery) -> Option<FactorizationAnswer> {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub added: Vec<String>,
    pub downward_closed: bool,
    /// Why `𝒪_{P′}` could not be localized at `I_{P′,C}`, if so.
    pub localization: Option<String>,
    /// Each original element with its sequence and whether it verified.
    pub sequences: Vec<(String, Vec<String>, bool)>,
    /// `H𝒲_{P,C} → H𝒲_{P′,C}` on every pair of original elements.
    pub homs: Vec<HomComparison>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.downward_closed && self.localization.is_none() && self.sequences.iter().all(|s| s.2) && self.homs.iter().all(|h| h.iso)
    }
}

pub struct Extension {
    pub poset: DecoratedPoset,
    /// Index in the extension of each original element.
    pub inclusion: Vec<usize>,
    pub report: ExtensionReport,
}

/// Adjoins `steps` elements `i₀ < i₁ < …`, each above a growing downward
/// closed part of `P`, taking Lagrangians from `oracle` so that the elements
/// over each `p` continue a wrapping sequence starting at `p`.
pub fn extend_to_sufficiently_wrapped(
    p: &DecoratedPoset,
    cs: &ContinuationSystem,
    oracle: &dyn FactorizationOracle,
    steps: usize,
) -> Result<Extension> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|x| (p.down_set(*x).len(), *x));
    let mut ext = p.clone();
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut added = Vec::new();
    for k in 0..steps {
        if n == 0 {
            break;
        }
        let base = order[k % n];
        let covered: Vec<usize> = order[..(k + 1).min(n)].to_vec();
        let mut lower: Vec<usize> = covered.iter().flat_map(|x| ext.down_set(*x)).chain(added.iter().copied()).collect();
        lower.sort_unstable();
        lower.dedup();
        let below: Vec<Vec<usize>> = {
            let mut tuples: Vec<Vec<usize>> = lower.iter().map(|x| vec![ext.lagrangians[*x]]).collect();
            tuples.extend(ext.chains().iter().filter(|c| lower.contains(&c[0])).map(|c| ext.tuple(c)));
            tuples.sort();
            tuples.dedup();
            tuples
        };
        let prev = over[base].last().copied().unwrap_or(base);
        let query = FactorizationQuery {
            step: k,
            element: p.names[base].clone(),
            target: ext.lagrangians[prev],
            below,
        };
        let answer = oracle.factor(&query).ok_or_else(|| {
            Error::OracleRefused(format!(
                "step {k}: a factorization into {} over {}",
                cs.setup.name(query.target),
                query.element
            ))
        })?;
        let new = ext.push_element(format!("i{k}"), answer.lagrangian);
        for x in &lower {
            ext.add_relation(new, *x);
        }
        for chain in ext.chains() {
            if chain[0] == new {
                let t = ext.tuple(&chain);
                let d = cs
                    .delta
                    .get(&t)
                    .ok_or_else(|| Error::DecorationInconsistent(format!("no datum for {}", ext.chain_name(&chain))))?;
                ext.eta.insert(chain, d.to_string());
            }
        }
        over[base].push(new);
        added.push(new);
    }
    let verifier = SequenceVerifier::new(&ext, cs);
    let localization = verifier.as_ref().err().map(|e| e.to_string());
    let mut sequences = Vec::new();
    for x in 0..n {
        let mut seq = vec![x];
        seq.extend(&over[x]);
        let ok = match &verifier {
            Ok(v) => v.verify(&seq).map(|r| r.passed()).unwrap_or(false),
            Err(_) => false,
        };
        sequences.push((p.names[x].clone(), seq.iter().map(|s| ext.names[*s].clone()).collect(), ok));
        if !over[x].is_empty() {
            ext.wrapping_sequences.push(seq);
        }
    }
    let downward_closed = (0..n).all(|x| ext.down_set(x) == p.down_set(x));
    let small = PosetCategory::build(p, cs)?;
    let big = PosetCategory::build(&ext, cs)?;
    let same = |_: usize, _: usize, v: &SVec| v.clone();
    let homs = HFunctor {
        source: (&small.h, &small.system),
        target: (&big.h, &big.system),
        objects: (0..n).collect(),
        homs: &same,
    }
    .compare()?;
    Ok(Extension {
        report: ExtensionReport {
            added: added.iter().map(|a| ext.names[*a].clone()).collect(),
            downward_closed,
            localization,
            sequences,
            homs,
        },
        inclusion: (0..n).collect(),
        poset: ext,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    /// `ι` is a strict functor `𝒪_{P_δ} → 𝓕_{E_δ}`.
    pub iota_strict: bool,
    pub sequences: Vec<WrappingReport>,
    /// `τ` on every pair of elements.
    pub homs: Vec<HomComparison>,
    /// Every vertex of `E_δ`, joined by classes of `C` to an element's Lagrangian.
    pub vertices: Vec<VertexWitness>,
}

impl TauReport {
    pub fn fully_faithful(&self) -> bool {
        self.homs.iter().all(|h| h.iso)
    }

    pub fn essentially_surjective(&self) -> bool {
        self.vertices.iter().all(|v| v.zigzag.is_some())
    }

    pub fn passed(&self) -> bool {
        self.iota_strict && self.fully_faithful() && self.essentially_surjective()
    }
}

fn iota_is_strict(pc: &PosetCategory, cs: &ContinuationSystem) -> bool {
    let p = &pc.poset;
    p.chains().iter().all(|chain| {
        let t = p.tuple(chain);
        let ranks: Vec<usize> = chain.windows(2).map(|w| pc.ainf.hom(w[0], w[1]).rank()).collect();
        let total: usize = ranks.iter().product();
        (0..total).all(|mut code| {
            let mut inputs = vec![0; ranks.len()];
            for s in (0..ranks.len()).rev() {
                inputs[s] = code % ranks[s];
                code /= ranks[s];
            }
            pc.ainf.mu(chain, &inputs) == cs.envelope.mu(&t, &inputs)
        })
    })
}

/// Compares the localization of `𝒪_{P_δ}` at `I_{P_δ,C}` with that of the
/// envelope at `C` through `τ`.
pub fn tau_compare(p: &DecoratedPoset, cs: &ContinuationSystem) -> Result<TauReport> {
    let verifier = SequenceVerifier::new(p, cs)?;
    let mut sequences = Vec::new();
    let mut on_sequence = vec![false; p.len()];
    for seq in &p.wrapping_sequences {
        let r = verifier.verify(seq)?;
        if r.passed() {
            for x in seq {
                on_sequence[*x] = true;
            }
        }
        sequences.push(r);
    }
    if let Some(x) = (0..p.len()).find(|x| !on_sequence[*x]) {
        return Err(Error::NotSufficientlyWrapped(p.names[x].clone()));
    }
    let pc = &verifier.poset;
    let to_setup = |x: usize, y: usize, v: &SVec| to_setup_hom(cs, p, x, y, v);
    let homs = HFunctor {
        source: (&pc.h, &pc.system),
        target: (&cs.h, &cs.system),
        objects: p.lagrangians.clone(),
        homs: &to_setup,
    }
    .compare()?;

    let vertices = (0..cs.h.object_count())
        .map(|v| VertexWitness {
            vertex: cs.h.objects[v].clone(),
            zigzag: zigzag(&cs.h, &cs.system, v, |u| p.lagrangians.contains(&u)),
        })
        .collect();
    Ok(TauReport {
        iota_strict: iota_is_strict(pc, cs),
        sequences,
        homs,
        vertices,
    })
}
