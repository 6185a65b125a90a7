//! Quotients by cones of morphism classes, truncated by bar length, and
//! wrapping colimits along chains.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::system::Class;
use crate::ainf::{AInfCategory, AInfOps, ConeSpec, HCategory, TwistedExtension};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Echelon, SVec};
use crate::linalg::{sequence_colimit, GradedMap, GradedModule, Scalar};

/// A word `a₀ ⊗ … ⊗ aₙ` through cone objects `B₁, …, Bₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Word {
    objects: Vec<usize>,
    letters: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairQuotient {
    pub source: String,
    pub target: String,
    /// H⁰ rank of the truncation at each depth `0..=depth`.
    pub ranks: Vec<usize>,
    /// Whether `depth d−1 → d` induces an isomorphism on H⁰, for `d ≥ 1`.
    pub transitions_iso: Vec<bool>,
    /// Smallest depth whose last `window` transitions are isomorphisms.
    pub stabilized_at: Option<usize>,
    /// Dimension of the kernel of `H⁰(X,Y) → H⁰` of the deepest truncation.
    pub kernel_from_base: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedQuotient {
    pub depth: usize,
    pub window: usize,
    pub cones: Vec<String>,
    pub pairs: Vec<PairQuotient>,
}

impl TruncatedQuotient {
    pub fn pair(&self, source: &str, target: &str) -> Option<&PairQuotient> {
        self.pairs.iter().find(|p| p.source == source && p.target == target)
    }

    pub fn stabilized(&self) -> bool {
        self.pairs.iter().all(|p| p.stabilized_at.is_some())
    }
}

struct Words<'a> {
    ext: &'a TwistedExtension,
    cones: Vec<usize>,
    min: HashMap<(usize, usize), i32>,
    max: HashMap<(usize, usize), i32>,
}

impl<'a> Words<'a> {
    fn new(ext: &'a TwistedExtension, cones: Vec<usize>) -> Self {
        let mut min = HashMap::new();
        let mut max = HashMap::new();
        let n = ext.object_count();
        for x in 0..n {
            for y in 0..n {
                let m = ext.hom(x, y);
                if let (Some(lo), Some(hi)) = (m.degrees().first().copied(), m.degrees().last().copied()) {
                    min.insert((x, y), lo);
                    max.insert((x, y), hi);
                }
            }
        }
        Words { ext, cones, min, max }
    }

    /// Words from `x` to `y` with exactly `n` cone objects and quotient
    /// degree in `lo..=hi`, in canonical order.
    fn enumerate(&self, x: usize, y: usize, n: usize, lo: i32, hi: i32) -> Vec<(Word, i32)> {
        let mut out = Vec::new();
        let mut objs = vec![x];
        self.objects_rec(y, n, &mut objs, &mut |objs: &[usize]| {
            let mut letters = Vec::new();
            self.letters_rec(objs, 0, -(n as i32), lo, hi, &mut letters, &mut out);
        });
        out
    }

    fn objects_rec(&self, y: usize, n: usize, objs: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let last = *objs.last().unwrap();
        if objs.len() == n + 1 {
            if self.min.contains_key(&(last, y)) {
                objs.push(y);
                f(objs);
                objs.pop();
            }
            return;
        }
        for &b in &self.cones {
            if self.min.contains_key(&(last, b)) {
                objs.push(b);
                self.objects_rec(y, n, objs, f);
                objs.pop();
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn letters_rec(&self, objs: &[usize], pos: usize, deg: i32, lo: i32, hi: i32, letters: &mut Vec<usize>, out: &mut Vec<(Word, i32)>) {
        let k = objs.len() - 1;
        if pos == k {
            if (lo..=hi).contains(&deg) {
                out.push((
                    Word {
                        objects: objs.to_vec(),
                        letters: letters.clone(),
                    },
                    deg,
                ));
            }
            return;
        }
        let (rmin, rmax): (i32, i32) = (pos + 1..k).fold((0, 0), |(a, b), j| {
            (a + self.min[&(objs[j], objs[j + 1])], b + self.max[&(objs[j], objs[j + 1])])
        });
        let m = self.ext.hom(objs[pos], objs[pos + 1]);
        for i in 0..m.rank() {
            let d = deg + m.degree(i);
            if d + rmin > hi || d + rmax < lo {
                continue;
            }
            letters.push(i);
            self.letters_rec(objs, pos + 1, d, lo, hi, letters, out);
            letters.pop();
        }
    }

    /// Bar differential `Σ ± a₀ ⊗ … ⊗ μᵏ(aᵢ, …) ⊗ … ⊗ aₙ`.
    fn differential(&self, w: &Word) -> Vec<(Word, Scalar)> {
        let ring = self.ext.ring();
        let n = w.letters.len();
        let arity = self.ext.max_arity().max(1);
        let mut out: HashMap<Word, Scalar> = HashMap::new();
        let mut reduced = 0i32;
        for i in 0..n {
            for k in 1..=arity.min(n - i) {
                let v = self.ext.mu(&w.objects[i..=i + k], &w.letters[i..i + k]);
                if v.is_empty() {
                    continue;
                }
                let sign = ring.sign(reduced.rem_euclid(2) == 1);
                let mut objects = w.objects[..=i].to_vec();
                objects.extend_from_slice(&w.objects[i + k..]);
                for (b, c) in v {
                    let mut letters = w.letters[..i].to_vec();
                    letters.push(b);
                    letters.extend_from_slice(&w.letters[i + k..]);
                    let key = Word {
                        objects: objects.clone(),
                        letters,
                    };
                    let e = out.entry(key).or_insert_with(Scalar::zero);
                    *e = ring.add(e, &ring.mul(&sign, &c));
                }
            }
            reduced += self.ext.hom(w.objects[i], w.objects[i + 1]).degree(w.letters[i]) - 1;
        }
        let mut v: Vec<(Word, Scalar)> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| (&a.0.objects, &a.0.letters).cmp(&(&b.0.objects, &b.0.letters)));
        v
    }
}

fn pair_quotient(words: &Words, x: usize, y: usize, depth: usize, window: usize) -> Result<PairQuotient> {
    let ring = words.ext.ring();
    let mut index: [HashMap<Word, usize>; 3] = Default::default();
    let mut by_depth: [Vec<usize>; 3] = Default::default();
    for n in 0..=depth {
        for (w, d) in words.enumerate(x, y, n, -1, 1) {
            let slot = (d + 1) as usize;
            let k = index[slot].len();
            index[slot].insert(w, k);
        }
        for (s, counts) in by_depth.iter_mut().enumerate() {
            counts.push(index[s].len());
        }
    }
    let mut order: [Vec<Word>; 3] = Default::default();
    for s in 0..3 {
        let mut ws: Vec<(usize, Word)> = index[s].iter().map(|(w, k)| (*k, w.clone())).collect();
        ws.sort_by_key(|p| p.0);
        order[s] = ws.into_iter().map(|p| p.1).collect();
    }
    let column = |from: usize, w: &Word| -> Result<SVec> {
        let mut v = Vec::new();
        for (t, c) in words.differential(w) {
            let k = index[from + 1].get(&t).ok_or_else(|| {
                Error::ShapeMismatch(format!("bar differential leaves the truncation at {:?}", t.objects))
            })?;
            v.push((*k, c));
        }
        Ok(sparse::collect(ring, v))
    };
    let d_minus: Vec<SVec> = order[0].iter().map(|w| column(0, w)).collect::<Result<_>>()?;
    let d_zero: Vec<SVec> = order[1].iter().map(|w| column(1, w)).collect::<Result<_>>()?;

    let cycles: Vec<Vec<SVec>> = (0..=depth).map(|d| sparse::kernel(ring, &d_zero[..by_depth[1][d]])).collect();
    let boundaries: Vec<Echelon> = (0..=depth)
        .map(|d| Echelon::from_vectors(ring, d_minus[..by_depth[0][d]].iter()))
        .collect();
    let ranks: Vec<usize> = (0..=depth).map(|d| cycles[d].len() - boundaries[d].rank()).collect();
    let image_rank = |from: usize, to: usize| -> usize {
        let mut e = boundaries[to].clone();
        for z in &cycles[from] {
            e.insert(z);
        }
        e.rank() - boundaries[to].rank()
    };
    let transitions_iso: Vec<bool> = (1..=depth)
        .map(|d| {
            let r = image_rank(d - 1, d);
            r == ranks[d - 1] && r == ranks[d]
        })
        .collect();
    let stabilized_at = (window..=depth).find(|&d| transitions_iso[d - window..d].iter().all(|b| *b));
    let kernel_from_base = ranks[0] - image_rank(0, depth);
    let names = words.ext.object_names();
    Ok(PairQuotient {
        source: names[x].clone(),
        target: names[y].clone(),
        ranks,
        transitions_iso,
        stabilized_at,
        kernel_from_base,
    })
}

/// Adjoins the cones of `w` to `a` and computes H⁰ of the bar-type quotient
/// homs between objects of `a`, truncated at each depth up to `depth`.
pub fn localize_by_cones(a: &AInfCategory, w: &[ConeSpec], depth: usize, window: usize) -> Result<TruncatedQuotient> {
    let ext = TwistedExtension::with_cones(a, w).map_err(|e| match e {
        Error::NotClosed(s) | Error::NotDegreeZero(s) => Error::NotClosedRepresentative(s),
        e => e,
    })?;
    let n = a.object_count();
    let words = Words::new(&ext, (n..ext.object_count()).collect());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let pairs = pairs
        .par_iter()
        .map(|&(x, y)| pair_quotient(&words, x, y, depth, window))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedQuotient {
        depth,
        window,
        cones: w.iter().map(|c| c.name.clone()).collect(),
        pairs,
    })
}

/// `X₀ ← X₁ ← …` with `maps[i]: X_{i+1} → X_i`.
#[derive(Clone, Debug)]
pub struct WrappingChain {
    pub objects: Vec<usize>,
    pub maps: Vec<SVec>,
}

#[derive(Clone, Debug)]
pub struct WrappingColimit {
    pub module: GradedModule,
    pub stabilized: bool,
    /// Every class of `W` induced an isomorphism of colimits.
    pub hypothesis_held: bool,
}

fn chain_sequence(h: &HCategory, chain: &WrappingChain, y: usize, window: usize) -> Result<crate::linalg::SequenceColimit> {
    let modules: Vec<GradedModule> = chain.objects.iter().map(|x| h.hom(*x, y).clone()).collect();
    let mut maps = Vec::new();
    for i in 0..chain.maps.len() {
        let (xs, xt) = (chain.objects[i + 1], chain.objects[i]);
        let cols = (0..modules[i].rank())
            .map(|g| h.compose(xs, xt, y, &chain.maps[i], &sparse::unit(g, h.ring)))
            .collect();
        maps.push(GradedMap::new(modules[i].clone(), modules[i + 1].clone(), 0, cols)?);
    }
    sequence_colimit(&modules, &maps, window)
}

/// `colim H(Xᵢ, Y)`, after checking that every class `K → K′` of `w`
/// induces an isomorphism `colim H(Xᵢ, K) → colim H(Xᵢ, K′)`.
pub fn hom_via_wrapping_colimit(h: &HCategory, w: &[Class], chain: &WrappingChain, y: usize, window: usize) -> Result<WrappingColimit> {
    let ring = h.ring;
    if chain.maps.len() + 1 != chain.objects.len() {
        return Err(Error::ShapeMismatch("a chain needs one map per step".into()));
    }
    for c in w {
        let sk = chain_sequence(h, chain, c.source, window)?;
        let sk2 = chain_sequence(h, chain, c.target, window)?;
        let mut cols = Vec::new();
        for k in 0..sk.colimit.rank() {
            let (stage, i) = (0..sk.structure.len())
                .find_map(|s| {
                    sk.structure[s]
                        .columns()
                        .iter()
                        .position(|v| v.len() == 1 && v[0].0 == k && v[0].1.is_one())
                        .map(|i| (s, i))
                })
                .expect("colimit basis vectors come from unit vectors");
            let x = chain.objects[stage];
            let post = h.compose(x, c.source, c.target, &sparse::unit(i, ring), &c.vector);
            cols.push(sk2.structure[stage].apply(&post));
        }
        let iso = sk.colimit.ranks() == sk2.colimit.ranks() && sparse::rank(ring, &cols) == sk.colimit.rank();
        if !iso {
            return Err(Error::HypothesisFailed(format!(
                "{} → {}",
                h.objects[c.source], h.objects[c.target]
            )));
        }
    }
    let s = chain_sequence(h, chain, y, window)?;
    Ok(WrappingColimit {
        module: s.colimit,
        stabilized: s.stabilized,
        hypothesis_held: true,
    })
}
