//! Cochain complexes and their cohomology over fields and over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::graded::{compose_graded_maps, Generator, GradedMap, GradedModule};
use super::scalar::{Ring, Scalar};
use super::snf::{mat_mul, smith_normal_form, IntMatrix};
use super::sparse::{self, Echelon, SVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub module: GradedModule,
    pub differential: GradedMap,
}

impl Complex {
    pub fn new(module: GradedModule, differential: GradedMap) -> Result<Self> {
        if differential.source != module || differential.target != module || differential.degree != 1 {
            return Err(Error::ShapeMismatch(
                "differential must be a degree +1 endomorphism of the module".into(),
            ));
        }
        for (j, c) in differential.columns().iter().enumerate() {
            if !differential.apply(c).is_empty() {
                return Err(Error::NotAComplex(module.label(j).to_string()));
            }
        }
        Ok(Complex {
            module,
            differential,
        })
    }

    pub fn with_zero_differential(module: GradedModule) -> Self {
        let differential = GradedMap::zero(module.clone(), module.clone(), 1);
        Complex {
            module,
            differential,
        }
    }

    pub fn ring(&self) -> Ring {
        self.module.ring
    }

    pub fn d(&self, v: &SVec) -> SVec {
        self.differential.apply(v)
    }
}

/// Cohomology in a single degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: i32,
    /// Free rank (the dimension over a field).
    pub rank: usize,
    /// Invariant factors greater than one; empty over a field.
    pub torsion: Vec<BigInt>,
    /// Cycle representatives: free generators first, then torsion generators.
    pub representatives: Vec<SVec>,
    kind: Presentation,
}

#[derive(Clone, Debug)]
enum Presentation {
    Field {
        boundaries: Echelon,
        reps: Echelon,
    },
    Integral {
        /// global indices of the degree
        indices: Vec<usize>,
        /// v⁻¹ of the differential's Smith form, and the count of its nonzero pivots
        v_inv: IntMatrix,
        pivots: usize,
        /// row transform of the boundary lattice inside the cycle lattice
        u2: IntMatrix,
        diag: Vec<BigInt>,
    },
}

/// Cohomology of a complex with canonical representatives and projections.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation {
    pub ring: Ring,
    pub degrees: BTreeMap<i32, DegreeCohomology>,
    classes: GradedModule,
    offsets: BTreeMap<i32, usize>,
}

impl CohomologyPresentation {
    pub fn rank(&self, d: i32) -> usize {
        self.degrees.get(&d).map_or(0, |h| h.rank)
    }

    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        self.degrees
            .iter()
            .filter(|(_, h)| h.rank > 0 || !h.torsion.is_empty())
            .map(|(d, h)| (*d, h.rank))
            .collect()
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.values().map(|h| h.rank).sum()
    }

    pub fn torsion(&self, d: i32) -> Vec<BigInt> {
        self.degrees.get(&d).map_or(Vec::new(), |h| h.torsion.clone())
    }

    /// The free module on the classes, flattened over degrees (fields only).
    pub fn classes(&self) -> &GradedModule {
        &self.classes
    }

    /// Representative cycle of a flattened class index.
    pub fn representative(&self, k: usize) -> &SVec {
        let d = self.classes.degree(k);
        &self.degrees[&d].representatives[k - self.offsets[&d]]
    }

    /// Projects a homogeneous cycle of degree `d` to its class, in flattened coordinates.
    pub fn project(&self, d: i32, z: &SVec) -> Result<SVec> {
        if z.is_empty() {
            return Ok(Vec::new());
        }
        let h = self
            .degrees
            .get(&d)
            .ok_or_else(|| Error::ShapeMismatch(format!("no degree {d} in complex")))?;
        match &h.kind {
            Presentation::Field { boundaries, reps } => {
                let r = boundaries.reduce(z);
                let coords = reps
                    .coordinates(&r)
                    .ok_or_else(|| Error::NotClosed(format!("vector in degree {d} is not a cycle")))?;
                let order: BTreeMap<usize, usize> = reps.pivots().enumerate().map(|(k, p)| (p, k)).collect();
                let off = self.offsets[&d];
                Ok(sparse::collect(
                    self.ring,
                    coords.into_iter().map(|(p, x)| (off + order[&p], x)),
                ))
            }
            Presentation::Integral { .. } => Err(Error::Unsupported(
                "vector projection over the integers; use project_integral".into(),
            )),
        }
    }

    /// Class coordinates over the integers: free part, then torsion parts reduced.
    pub fn project_integral(&self, d: i32, z: &SVec) -> Result<Vec<BigInt>> {
        let h = self
            .degrees
            .get(&d)
            .ok_or_else(|| Error::ShapeMismatch(format!("no degree {d} in complex")))?;
        let Presentation::Integral {
            indices,
            v_inv,
            pivots,
            u2,
            diag,
        } = &h.kind
        else {
            return Err(Error::Unsupported("integral projection over a field".into()));
        };
        let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let mut dense = vec![BigInt::zero(); indices.len()];
        for (i, x) in z {
            dense[pos[i]] = x.numer();
        }
        let w_full: Vec<BigInt> = v_inv
            .iter()
            .map(|row| row.iter().zip(&dense).map(|(a, b)| a * b).sum())
            .collect();
        if w_full[..*pivots].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotClosed(format!("vector in degree {d} is not a cycle")));
        }
        let w = &w_full[*pivots..];
        let y: Vec<BigInt> = u2
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect();
        let nz = diag.iter().filter(|x| !x.is_zero()).count();
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for (i, yi) in y.iter().enumerate() {
            if i < nz {
                if !diag[i].is_one() {
                    tors.push(num_integer::Integer::mod_floor(yi, &diag[i]));
                }
            } else {
                free.push(yi.clone());
            }
        }
        free.extend(tors);
        Ok(free)
    }
}

/// Computes the cohomology of a complex.
pub fn cohomology(c: &Complex) -> Result<CohomologyPresentation> {
    let ring = c.ring();
    let m = &c.module;
    let mut degrees = BTreeMap::new();
    for d in m.degrees() {
        let h = if ring.is_field() {
            field_degree(c, d)
        } else {
            integral_degree(c, d)
        };
        degrees.insert(d, h);
    }
    let mut gens = Vec::new();
    let mut offsets = BTreeMap::new();
    for (d, h) in &degrees {
        offsets.insert(*d, gens.len());
        for (k, r) in h.representatives.iter().enumerate() {
            let lead = r.first().map_or("0".to_string(), |(i, _)| m.label(*i).to_string());
            let label = if ring.is_field() {
                format!("[{lead}]")
            } else {
                format!("[{lead}]#{k}")
            };
            gens.push(Generator { label, degree: *d });
        }
    }
    let classes = GradedModule::new(ring, gens)?;
    Ok(CohomologyPresentation {
        ring,
        degrees,
        classes,
        offsets,
    })
}

fn cycles_and_boundaries(c: &Complex, d: i32) -> (Vec<usize>, Vec<SVec>, Vec<SVec>) {
    let ring = c.ring();
    let idx = c.module.indices_in(d);
    let cols: Vec<SVec> = idx.iter().map(|j| c.differential.columns()[*j].clone()).collect();
    let z: Vec<SVec> = sparse::kernel(ring, &cols)
        .into_iter()
        .map(|v| v.into_iter().map(|(k, x)| (idx[k], x)).collect())
        .collect();
    let b: Vec<SVec> = c
        .module
        .indices_in(d - 1)
        .iter()
        .map(|j| c.differential.columns()[*j].clone())
        .collect();
    (idx, z, b)
}

fn field_degree(c: &Complex, d: i32) -> DegreeCohomology {
    let ring = c.ring();
    let (_, z, b) = cycles_and_boundaries(c, d);
    let boundaries = Echelon::from_vectors(ring, b.iter());
    let mut reps = Echelon::new(ring);
    for v in &z {
        reps.insert(&boundaries.reduce(v));
    }
    let representatives: Vec<SVec> = reps.rows().cloned().collect();
    DegreeCohomology {
        degree: d,
        rank: representatives.len(),
        torsion: Vec::new(),
        representatives,
        kind: Presentation::Field { boundaries, reps },
    }
}

fn int_entry(x: &Scalar) -> BigInt {
    x.numer()
}

fn integral_degree(c: &Complex, d: i32) -> DegreeCohomology {
    let idx = c.module.indices_in(d);
    let next = c.module.indices_in(d + 1);
    let prev = c.module.indices_in(d - 1);
    let n = idx.len();
    let pos_next: BTreeMap<usize, usize> = next.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    // matrix of dᵈ: rows = degree d+1, cols = degree d
    let mut a: IntMatrix = vec![vec![BigInt::zero(); n]; next.len()];
    for (k, j) in idx.iter().enumerate() {
        for (i, x) in &c.differential.columns()[*j] {
            a[pos_next[i]][k] = int_entry(x);
        }
    }
    let s = smith_normal_form(&a, next.len(), n);
    let r = s.rank;
    // kernel basis: columns r.. of v; coordinates via rows r.. of v⁻¹
    let kdim = n - r;
    let mut bmat: IntMatrix = vec![vec![BigInt::zero(); prev.len()]; kdim];
    for (col, j) in prev.iter().enumerate() {
        let mut dense = vec![BigInt::zero(); n];
        for (i, x) in &c.differential.columns()[*j] {
            dense[pos[i]] = int_entry(x);
        }
        for row in 0..kdim {
            bmat[row][col] = s.v_inv[r + row].iter().zip(&dense).map(|(p, q)| p * q).sum();
        }
    }
    let s2 = smith_normal_form(&bmat, kdim, prev.len());
    let nz = s2.diag.iter().filter(|x| !x.is_zero()).count();
    // generators: kernel basis times u2⁻¹
    let kbasis: IntMatrix = (0..n).map(|i| (r..n).map(|j| s.v[i][j].clone()).collect()).collect();
    let gens = if kdim > 0 { mat_mul(&kbasis, &s2.u_inv, kdim) } else { vec![Vec::new(); n] };
    let column = |j: usize| -> SVec {
        (0..n)
            .filter(|i| !gens[*i][j].is_zero())
            .map(|i| (idx[i], Scalar::from_bigint(gens[i][j].clone())))
            .collect()
    };
    let mut representatives = Vec::new();
    for j in nz..kdim {
        representatives.push(column(j));
    }
    let mut torsion = Vec::new();
    for j in 0..nz {
        if !s2.diag[j].is_one() {
            torsion.push(s2.diag[j].abs());
            representatives.push(column(j));
        }
    }
    DegreeCohomology {
        degree: d,
        rank: kdim - nz,
        torsion,
        representatives,
        kind: Presentation::Integral {
            indices: idx,
            v_inv: s.v_inv,
            pivots: r,
            u2: s2.u,
            diag: s2.diag,
        },
    }
}

fn sign(ring: Ring, k: i32) -> Scalar {
    ring.sign(k.rem_euclid(2) == 1)
}

/// Checks `d ∘ f = (−1)^{|f|} f ∘ d`, returning the first violating source label.
pub fn check_chain_map(f: &GradedMap, src: &Complex, tgt: &Complex) -> Result<()> {
    let ring = src.ring();
    if f.source != src.module || f.target != tgt.module {
        return Err(Error::ShapeMismatch("chain map does not match complexes".into()));
    }
    let s = sign(ring, f.degree);
    for j in 0..src.module.rank() {
        let e = sparse::unit(j, ring);
        let lhs = tgt.d(&f.apply(&e));
        let rhs = sparse::scale(ring, &s, &f.apply(&src.d(&e)));
        if lhs != rhs {
            return Err(Error::NotChainMap(src.module.label(j).to_string()));
        }
    }
    Ok(())
}

/// Checks `d h + h d = f − g` for a degree −1 map `h`, returning the first failing label.
pub fn check_homotopy(f: &GradedMap, g: &GradedMap, h: &GradedMap, src: &Complex, tgt: &Complex) -> Result<()> {
    let ring = src.ring();
    let diff = f.sub(g)?;
    let dh = compose_graded_maps(h, &tgt.differential)?;
    let hd = compose_graded_maps(&src.differential, h)?;
    let lhs = dh.add(&hd)?;
    for j in 0..src.module.rank() {
        if lhs.columns()[j] != diff.columns()[j] {
            let _ = ring;
            return Err(Error::NotChainMap(format!(
                "homotopy identity fails on {}",
                src.module.label(j)
            )));
        }
    }
    Ok(())
}

/// Induced map on cohomology, between the flattened class modules (fields only).
pub fn induced_cohomology_map(
    f: &GradedMap,
    src: &Complex,
    tgt: &Complex,
    hs: &CohomologyPresentation,
    ht: &CohomologyPresentation,
) -> Result<GradedMap> {
    check_chain_map(f, src, tgt)?;
    if !src.ring().is_field() {
        return Err(Error::Unsupported("induced maps over the integers".into()));
    }
    let mut cols = Vec::new();
    for k in 0..hs.classes().rank() {
        let d = hs.classes().degree(k);
        let img = f.apply(hs.representative(k));
        cols.push(if img.is_empty() {
            Vec::new()
        } else {
            ht.project(d + f.degree, &img)?
        });
    }
    GradedMap::new(hs.classes().clone(), ht.classes().clone(), f.degree, cols)
}

/// Convenience: cohomology ranks as plain integers per degree.
pub fn rank_table(h: &CohomologyPresentation) -> BTreeMap<i32, usize> {
    h.ranks()
}

/// Torsion coefficients as machine integers, for reports.
pub fn torsion_u64(h: &CohomologyPresentation, d: i32) -> Vec<u64> {
    h.torsion(d).iter().filter_map(|x| x.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(ring: Ring, k: i64) -> Complex {
        let m = GradedModule::from_pairs(ring, &[("a", 0), ("b", 1)]).unwrap();
        let d = GradedMap::new(m.clone(), m.clone(), 1, vec![vec![(1, ring.from_int(k))], vec![]]).unwrap();
        Complex::new(m, d).unwrap()
    }

    #[test]
    fn acyclic_identity_cone() {
        let h = cohomology(&two_term(Ring::PrimeField(2), 1)).unwrap();
        assert_eq!(h.total_rank(), 0);
    }

    #[test]
    fn multiplication_by_two_over_integers() {
        let h = cohomology(&two_term(Ring::Integers, 2)).unwrap();
        assert_eq!(h.rank(0), 0);
        assert_eq!(h.rank(1), 0);
        assert_eq!(h.torsion(1), vec![BigInt::from(2)]);
        let z = vec![(1, Scalar::from_int(3))];
        assert_eq!(h.project_integral(1, &z).unwrap(), vec![BigInt::from(1)]);
    }

    #[test]
    fn not_a_complex_is_reported() {
        let r = Ring::PrimeField(2);
        let m = GradedModule::from_pairs(r, &[("a", 0), ("b", 1), ("c", 2)]).unwrap();
        let d = GradedMap::new(m.clone(), m.clone(), 1, vec![vec![(1, r.one())], vec![(2, r.one())], vec![]]).unwrap();
        assert_eq!(Complex::new(m, d).unwrap_err(), Error::NotAComplex("a".into()));
    }

    #[test]
    fn zero_differential_keeps_ranks() {
        let r = Ring::Rationals;
        let m = GradedModule::from_pairs(r, &[("a", 0), ("b", 0), ("c", 3)]).unwrap();
        let h = cohomology(&Complex::with_zero_differential(m)).unwrap();
        assert_eq!(h.rank(0), 2);
        assert_eq!(h.rank(3), 1);
    }
}
