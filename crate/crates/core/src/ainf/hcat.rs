//! Graded linear categories at the cohomology level.
//!
//! Composition is written `g ∘ f` for `f: X → Y`, `g: Y → Z` and is obtained
//! from an A∞-category as `(−1)^{|f|} [μ²(f, g)]`, which is strictly
//! associative and unital on classes.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::category::AInfOps;
use super::relations::check_ainf_relations;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{cohomology, CohomologyPresentation, GradedModule, Ring};

#[derive(Clone, Debug)]
pub struct HCategory {
    pub ring: Ring,
    pub objects: Vec<String>,
    homs: BTreeMap<(usize, usize), GradedModule>,
    /// `comp[(x,y,z)][f][g] = g ∘ f`
    comp: BTreeMap<(usize, usize, usize), Vec<Vec<SVec>>>,
    identities: BTreeMap<usize, SVec>,
    presentations: BTreeMap<(usize, usize), CohomologyPresentation>,
    zero: GradedModule,
}

impl HCategory {
    /// Builds a category from explicit composition tables.
    pub fn from_tables(
        ring: Ring,
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), GradedModule>,
        comp: BTreeMap<(usize, usize, usize), Vec<Vec<SVec>>>,
        identities: BTreeMap<usize, SVec>,
    ) -> Self {
        HCategory {
            ring,
            objects,
            homs: homs.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
            comp,
            identities,
            presentations: BTreeMap::new(),
            zero: GradedModule::zero(ring),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &GradedModule {
        self.homs.get(&(x, y)).unwrap_or(&self.zero)
    }

    pub fn presentation(&self, x: usize, y: usize) -> Option<&CohomologyPresentation> {
        self.presentations.get(&(x, y))
    }

    pub fn identity(&self, x: usize) -> Option<&SVec> {
        self.identities.get(&x)
    }

    /// `g ∘ f` for `f ∈ H(x,y)`, `g ∈ H(y,z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: &SVec, g: &SVec) -> SVec {
        let Some(t) = self.comp.get(&(x, y, z)) else {
            return Vec::new();
        };
        let ring = self.ring;
        let mut out = Vec::new();
        for (i, a) in f {
            for (j, b) in g {
                let v = &t[*i][*j];
                if !v.is_empty() {
                    out = sparse::axpy(ring, &out, &ring.mul(a, b), v);
                }
            }
        }
        out
    }

    /// Composes a path `f₁, …, f_k` along `chain` as `f_k ∘ … ∘ f₁`.
    pub fn compose_path(&self, chain: &[usize], fs: &[SVec]) -> SVec {
        let mut acc = fs[0].clone();
        for s in 1..fs.len() {
            acc = self.compose(chain[0], chain[s], chain[s + 1], &acc, &fs[s]);
        }
        acc
    }

    /// Degree-0 part of `H(x,y)` as basis indices.
    pub fn degree_zero(&self, x: usize, y: usize) -> Vec<usize> {
        self.hom(x, y).indices_in(0)
    }

    /// Exhaustive associativity check on basis classes; returns a witness on failure.
    pub fn check_associativity(&self) -> std::result::Result<(), String> {
        let n = self.objects.len();
        let ring = self.ring;
        let quads: Vec<(usize, usize, usize, usize)> = (0..n)
            .flat_map(|w| (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (w, x, y, z)))))
            .filter(|(w, x, y, z)| !self.hom(*w, *x).is_zero() && !self.hom(*x, *y).is_zero() && !self.hom(*y, *z).is_zero())
            .collect();
        let bad = quads.par_iter().find_map_first(|(w, x, y, z)| {
            for f in 0..self.hom(*w, *x).rank() {
                for g in 0..self.hom(*x, *y).rank() {
                    for h in 0..self.hom(*y, *z).rank() {
                        let (f, g, h) = (sparse::unit(f, ring), sparse::unit(g, ring), sparse::unit(h, ring));
                        let gf = self.compose(*w, *x, *y, &f, &g);
                        let hg = self.compose(*x, *y, *z, &g, &h);
                        let l = self.compose(*w, *y, *z, &gf, &h);
                        let r = self.compose(*w, *x, *z, &f, &hg);
                        if l != r {
                            return Some(format!(
                                "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {}) along {},{},{},{}",
                                self.hom(*y, *z).format_vector(&h),
                                self.hom(*x, *y).format_vector(&g),
                                self.hom(*w, *x).format_vector(&f),
                                self.hom(*y, *z).format_vector(&h),
                                self.hom(*x, *y).format_vector(&g),
                                self.hom(*w, *x).format_vector(&f),
                                self.objects[*w],
                                self.objects[*x],
                                self.objects[*y],
                                self.objects[*z]
                            ));
                        }
                    }
                }
            }
            None
        });
        match bad {
            Some(w) => Err(w),
            None => Ok(()),
        }
    }

    /// Checks that each stored identity acts as a two-sided unit.
    pub fn check_unital(&self) -> std::result::Result<(), String> {
        let n = self.objects.len();
        let ring = self.ring;
        for x in 0..n {
            let Some(e) = self.identities.get(&x) else {
                return Err(format!("no identity on {}", self.objects[x]));
            };
            for y in 0..n {
                for f in 0..self.hom(x, y).rank() {
                    let f = sparse::unit(f, ring);
                    if self.compose(x, x, y, e, &f) != f {
                        return Err(format!("identity of {} fails on hom to {}", self.objects[x], self.objects[y]));
                    }
                }
                for g in 0..self.hom(y, x).rank() {
                    let g = sparse::unit(g, ring);
                    if self.compose(y, x, x, &g, e) != g {
                        return Err(format!("identity of {} fails on hom from {}", self.objects[x], self.objects[y]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves for a class `e ∈ H⁰(x,x)` acting as a two-sided identity.
    pub fn solve_identity(&self, x: usize) -> Option<SVec> {
        let ring = self.ring;
        let n = self.objects.len();
        let cands = self.degree_zero(x, x);
        // stack all conditions into one long vector indexed by (block, coordinate)
        let mut blocks: Vec<(usize, usize, bool, usize)> = Vec::new();
        for y in 0..n {
            for f in 0..self.hom(x, y).rank() {
                blocks.push((y, f, true, self.hom(x, y).rank()));
            }
            for g in 0..self.hom(y, x).rank() {
                blocks.push((y, g, false, self.hom(y, x).rank()));
            }
        }
        let mut offsets = Vec::new();
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.3;
        }
        let embed = |k: usize, v: SVec| -> SVec { v.into_iter().map(|(i, s)| (offsets[k] + i, s)).collect() };
        let mut cols = Vec::new();
        for c in &cands {
            let e = sparse::unit(*c, ring);
            let mut col = Vec::new();
            for (k, (y, i, right, _)) in blocks.iter().enumerate() {
                let f = sparse::unit(*i, ring);
                let v = if *right {
                    self.compose(x, x, *y, &e, &f)
                } else {
                    self.compose(*y, x, x, &f, &e)
                };
                col = sparse::add(ring, &col, &embed(k, v));
            }
            cols.push(col);
        }
        let mut target = Vec::new();
        for (k, (_, i, _, _)) in blocks.iter().enumerate() {
            target = sparse::add(ring, &target, &embed(k, sparse::unit(*i, ring)));
        }
        let sol = sparse::solve(ring, &cols, &target)?;
        let e: SVec = sol.into_iter().map(|(k, s)| (cands[k], s)).collect();
        if e.is_empty() && !blocks.is_empty() {
            return None;
        }
        if blocks.is_empty() && cands.is_empty() {
            // zero endomorphism ring: the zero class is the identity
            return Some(Vec::new());
        }
        Some(e)
    }

    /// Whether `f ∈ H⁰(x,y)` is an isomorphism; returns its inverse.
    pub fn inverse(&self, x: usize, y: usize, f: &SVec) -> Option<SVec> {
        let ring = self.ring;
        let ex = self.identity(x)?;
        let ey = self.identity(y)?;
        let cands = self.degree_zero(y, x);
        // g ∘ f = 1_x and f ∘ g = 1_y, linear in g
        let rx = self.hom(x, x).rank();
        let cols: Vec<SVec> = cands
            .iter()
            .map(|c| {
                let g = sparse::unit(*c, ring);
                let a = self.compose(x, y, x, f, &g);
                let b: SVec = self.compose(y, x, y, &g, f).into_iter().map(|(i, s)| (rx + i, s)).collect();
                sparse::add(ring, &a, &b)
            })
            .collect();
        let target = sparse::add(ring, ex, &ey.iter().map(|(i, s)| (rx + i, s.clone())).collect());
        let sol = sparse::solve(ring, &cols, &target)?;
        Some(sol.into_iter().map(|(k, s)| (cands[k], s)).collect())
    }

    /// Rank table `(x, y) → degree → rank`.
    pub fn rank_table(&self) -> BTreeMap<(String, String), BTreeMap<i32, usize>> {
        let mut t = BTreeMap::new();
        for x in 0..self.objects.len() {
            for y in 0..self.objects.len() {
                t.insert((self.objects[x].clone(), self.objects[y].clone()), self.hom(x, y).ranks());
            }
        }
        t
    }
}

/// The cohomology category of an A∞-category over a field.
pub fn cohomology_category<A: AInfOps + ?Sized>(a: &A, units: &BTreeMap<usize, SVec>) -> Result<HCategory> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::Unsupported("cohomology categories need a field".into()));
    }
    let rel = check_ainf_relations(a, 3);
    if !rel.passed() {
        let w = &rel.violations[0];
        return Err(Error::RelationFailure(format!(
            "arity {} along {} on ({}) leaves {}",
            w.arity,
            w.chain.join(","),
            w.inputs.join(", "),
            w.residual
        )));
    }
    cohomology_category_unchecked(a, units)
}

/// As [`cohomology_category`] without the relation precheck.
pub fn cohomology_category_unchecked<A: AInfOps + ?Sized>(a: &A, units: &BTreeMap<usize, SVec>) -> Result<HCategory> {
    let ring = a.ring();
    let n = a.object_count();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| !a.hom(*x, *y).is_zero())
        .collect();
    let pres: Vec<((usize, usize), CohomologyPresentation)> = pairs
        .par_iter()
        .map(|(x, y)| Ok(((*x, *y), cohomology(&a.hom_complex(*x, *y)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let presentations: BTreeMap<(usize, usize), CohomologyPresentation> = pres.into_iter().collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .filter(|(x, y, z)| {
            presentations.get(&(*x, *y)).map_or(false, |h| h.total_rank() > 0)
                && presentations.get(&(*y, *z)).map_or(false, |h| h.total_rank() > 0)
        })
        .collect();
    let tables: Vec<((usize, usize, usize), Vec<Vec<SVec>>)> = triples
        .par_iter()
        .map(|(x, y, z)| {
            let hf = &presentations[&(*x, *y)];
            let hg = &presentations[&(*y, *z)];
            let hz = presentations.get(&(*x, *z));
            let mut t = Vec::new();
            for f in 0..hf.classes().rank() {
                let mut row = Vec::new();
                let df = hf.classes().degree(f);
                for g in 0..hg.classes().rank() {
                    let dg = hg.classes().degree(g);
                    let v = a.mu_vec(&[*x, *y, *z], &[hf.representative(f).clone(), hg.representative(g).clone()]);
                    let v = sparse::scale(ring, &ring.sign(df.rem_euclid(2) == 1), &v);
                    let c = match hz {
                        Some(h) if !v.is_empty() => h.project(df + dg, &v)?,
                        _ => Vec::new(),
                    };
                    row.push(c);
                }
                t.push(row);
            }
            Ok(((*x, *y, *z), t))
        })
        .collect::<Result<Vec<_>>>()?;
    let homs = presentations
        .iter()
        .map(|(k, h)| (*k, h.classes().clone()))
        .collect();
    let mut h = HCategory::from_tables(ring, a.object_names(), homs, tables.into_iter().collect(), BTreeMap::new());
    h.presentations = presentations;
    for x in 0..n {
        let from_unit = units.get(&x).and_then(|u| {
            let p = h.presentations.get(&(x, x))?;
            p.project(0, u).ok()
        });
        let e = match from_unit {
            Some(e) => Some(e),
            None => h.solve_identity(x),
        };
        if let Some(e) = e {
            h.identities.insert(x, e);
        }
    }
    Ok(h)
}
