//! Slices of a multiplicative system over an object and colimits over them.

use std::collections::VecDeque;

use super::system::MultiplicativeSystem;
use crate::ainf::HCategory;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{diagram_colimit, sequence_colimit, Diagram, GradedMap, GradedModule, SequenceColimit};

/// The category of system arrows `X' → X`.
///
/// A morphism `a → b` is a system class `c: X_b → X_a` with `a ∘ c = b`;
/// homs into a fixed object are contravariant in it, so colimits run in the
/// direction of these morphisms.
#[derive(Clone, Debug)]
pub struct Slice {
    pub object: usize,
    /// System class indices with target `object`.
    pub objects: Vec<usize>,
    /// `(a, b, c)` with `a, b` positions in `objects`.
    pub morphisms: Vec<(usize, usize, usize)>,
    pub weakly_terminal: Vec<usize>,
    pub identity: Option<usize>,
}

impl Slice {
    pub fn new(h: &HCategory, sys: &MultiplicativeSystem, x: usize) -> Self {
        let objects: Vec<usize> = sys.into_target(x).collect();
        let mut morphisms = Vec::new();
        for (ia, &a) in objects.iter().enumerate() {
            for (ib, &b) in objects.iter().enumerate() {
                let (ca, cb) = (&sys.classes[a], &sys.classes[b]);
                for c in sys.out_of(cb.source) {
                    let cc = &sys.classes[c];
                    if cc.target != ca.source {
                        continue;
                    }
                    if h.compose(cb.source, ca.source, x, &cc.vector, &ca.vector) == cb.vector {
                        morphisms.push((ia, ib, c));
                    }
                }
            }
        }
        let n = objects.len();
        let weakly_terminal = (0..n)
            .filter(|t| (0..n).all(|s| morphisms.iter().any(|(a, b, _)| *a == s && b == t)))
            .collect();
        let identity = objects.iter().position(|&i| sys.is_identity(h, i));
        Slice {
            object: x,
            objects,
            morphisms,
            weakly_terminal,
            identity,
        }
    }

    /// Shortest path of irreducible system arrows from the identity to a
    /// weakly terminal object, ties broken by class index.
    pub fn cofinal_chain(&self, h: &HCategory, sys: &MultiplicativeSystem) -> Result<Chain> {
        let start = self
            .identity
            .ok_or_else(|| Error::SystemInvalid(format!("identity of {} missing from the system", h.objects[self.object])))?;
        let irr = sys.irreducible(h);
        let n = self.objects.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if self.weakly_terminal.contains(&v) {
                end = Some(v);
                break;
            }
            let mut out: Vec<(usize, usize)> = self
                .morphisms
                .iter()
                .filter(|(a, b, c)| *a == v && irr[*c] && !seen[*b])
                .map(|(_, b, c)| (*c, *b))
                .collect();
            out.sort();
            for (c, b) in out {
                if !seen[b] {
                    seen[b] = true;
                    prev[b] = Some((v, c));
                    queue.push_back(b);
                }
            }
        }
        let end = end.ok_or_else(|| {
            Error::NonCofinalPrefix(format!(
                "no chain of irreducible system arrows reaches a weakly terminal object over {}",
                h.objects[self.object]
            ))
        })?;
        let mut stages = vec![self.objects[end]];
        let mut steps = Vec::new();
        let mut v = end;
        while let Some((u, c)) = prev[v] {
            stages.push(self.objects[u]);
            steps.push(c);
            v = u;
        }
        stages.reverse();
        steps.reverse();
        Ok(Chain {
            object: self.object,
            stages,
            steps,
        })
    }
}

/// `X = X₀ ← X₁ ← …` recorded as slice stages with connecting system arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub object: usize,
    /// System classes `Xᵢ → X`.
    pub stages: Vec<usize>,
    /// `steps[i]: X_{i+1} → X_i`.
    pub steps: Vec<usize>,
}

fn precompose_columns(h: &HCategory, xs: usize, xt: usize, y: usize, c: &SVec) -> Vec<SVec> {
    (0..h.hom(xt, y).rank())
        .map(|g| h.compose(xs, xt, y, c, &sparse::unit(g, h.ring)))
        .collect()
}

/// `colim H(Xᵢ, Y)` along the first `depth + 1` stages of a chain.
pub fn chain_colimit(h: &HCategory, sys: &MultiplicativeSystem, chain: &Chain, y: usize, depth: usize, window: usize) -> Result<SequenceColimit> {
    let k = chain.stages.len().min(depth + 1);
    let src = |i: usize| sys.classes[chain.stages[i]].source;
    let modules: Vec<GradedModule> = (0..k).map(|i| h.hom(src(i), y).clone()).collect();
    let mut maps = Vec::new();
    for i in 0..k - 1 {
        let c = &sys.classes[chain.steps[i]].vector;
        let cols = precompose_columns(h, src(i + 1), src(i), y, c);
        maps.push(GradedMap::new(modules[i].clone(), modules[i + 1].clone(), 0, cols)?);
    }
    let mut out = sequence_colimit(&modules, &maps, window)?;
    if k == chain.stages.len() {
        out.stabilized = true;
    }
    Ok(out)
}

/// Colimit of `H(−, Y)` over the whole slice.
#[derive(Clone, Debug)]
pub struct SliceColimit {
    pub module: GradedModule,
    /// Structure map from each slice object.
    pub structure: Vec<Vec<SVec>>,
    /// For each colimit basis vector, a slice object and basis vector mapping onto it.
    pub representatives: Vec<(usize, usize)>,
}

pub fn slice_colimit(h: &HCategory, sys: &MultiplicativeSystem, slice: &Slice, y: usize) -> Result<SliceColimit> {
    let src = |i: usize| sys.classes[slice.objects[i]].source;
    let modules: Vec<GradedModule> = (0..slice.objects.len())
        .map(|i| {
            let m = h.hom(src(i), y);
            let gens = m
                .generators()
                .iter()
                .map(|g| crate::linalg::Generator {
                    label: format!("{}@{}", g.label, h.objects[src(i)]),
                    degree: g.degree,
                })
                .collect();
            GradedModule::new(h.ring, gens)
        })
        .collect::<Result<_>>()?;
    let arrows = slice
        .morphisms
        .iter()
        .map(|(a, b, c)| (*a, *b, precompose_columns(h, src(*b), src(*a), y, &sys.classes[*c].vector)))
        .collect();
    let col = diagram_colimit(h.ring, &Diagram { modules, arrows })?;
    let mut representatives = vec![None; col.module.rank()];
    for (v, cols) in col.structure.iter().enumerate() {
        for (i, img) in cols.iter().enumerate() {
            if let [(k, s)] = img.as_slice() {
                if s.is_one() && representatives[*k].is_none() {
                    representatives[*k] = Some((v, i));
                }
            }
        }
    }
    let representatives = representatives
        .into_iter()
        .map(|r| r.expect("colimit basis vectors come from unit vectors"))
        .collect();
    Ok(SliceColimit {
        module: col.module,
        structure: col.structure,
        representatives,
    })
}
