//! Finite A∞-categories with sparse multilinear operations.
//!
//! Inputs are listed in path order: for a chain `X₀ … X_k` the operation
//! `μᵏ` takes `a₁ ∈ hom(X₀,X₁), …, a_k ∈ hom(X_{k−1},X_k)` to
//! `hom(X₀,X_k)` and has degree `2 − k`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SVec};
use crate::linalg::{Complex, GradedMap, GradedModule, Ring, Scalar};

/// Read access to the operations of an A∞-category.
pub trait AInfOps: Sync {
    fn ring(&self) -> Ring;
    fn object_names(&self) -> Vec<String>;
    fn hom(&self, x: usize, y: usize) -> &GradedModule;
    /// `μᵏ` on basis inputs along `chain` (length `k + 1`).
    fn mu(&self, chain: &[usize], inputs: &[usize]) -> SVec;
    /// Largest arity with possibly nonzero operations.
    fn max_arity(&self) -> usize;

    fn object_count(&self) -> usize {
        self.object_names().len()
    }

    /// Multilinear extension of [`AInfOps::mu`] to arbitrary vectors.
    fn mu_vec(&self, chain: &[usize], inputs: &[SVec]) -> SVec {
        let ring = self.ring();
        let mut out = Vec::new();
        let mut idx = vec![0usize; inputs.len()];
        if inputs.iter().any(|v| v.is_empty()) {
            return out;
        }
        let mut basis = vec![0usize; inputs.len()];
        loop {
            let mut coef = ring.one();
            for (s, k) in idx.iter().enumerate() {
                basis[s] = inputs[s][*k].0;
                coef = ring.mul(&coef, &inputs[s][*k].1);
            }
            let v = self.mu(chain, &basis);
            if !v.is_empty() {
                out = sparse::axpy(ring, &out, &coef, &v);
            }
            let mut s = inputs.len();
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < inputs[s].len() {
                    break;
                }
                idx[s] = 0;
            }
        }
    }

    /// `(hom(x,y), μ¹)` as a complex.
    fn hom_complex(&self, x: usize, y: usize) -> Result<Complex> {
        let m = self.hom(x, y).clone();
        let cols = (0..m.rank()).map(|i| self.mu(&[x, y], &[i])).collect();
        let d = GradedMap::new(m.clone(), m.clone(), 1, cols)?;
        Complex::new(m, d)
    }
}

pub type OpTable = BTreeMap<Vec<usize>, SVec>;

/// A finite A∞-category with materialized operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfCategory {
    pub ring: Ring,
    pub objects: Vec<String>,
    homs: BTreeMap<(usize, usize), GradedModule>,
    ops: BTreeMap<Vec<usize>, OpTable>,
    /// Designated unit basis element of `hom(X,X)`.
    pub units: BTreeMap<usize, usize>,
    zero: GradedModule,
}

impl AInfCategory {
    pub fn new(ring: Ring, objects: Vec<String>) -> Self {
        AInfCategory {
            ring,
            objects,
            homs: BTreeMap::new(),
            ops: BTreeMap::new(),
            units: BTreeMap::new(),
            zero: GradedModule::zero(ring),
        }
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn set_hom(&mut self, x: usize, y: usize, m: GradedModule) {
        if m.is_zero() {
            self.homs.remove(&(x, y));
        } else {
            self.homs.insert((x, y), m);
        }
    }

    pub fn nonzero_homs(&self) -> impl Iterator<Item = (&(usize, usize), &GradedModule)> {
        self.homs.iter()
    }

    pub fn set_unit(&mut self, x: usize, label: &str) -> Result<()> {
        let i = self
            .hom(x, x)
            .index_of(label)
            .ok_or_else(|| Error::Schema(format!("unit {label:?} not in hom({0},{0})", self.objects[x])))?;
        if self.hom(x, x).degree(i) != 0 {
            return Err(Error::Schema(format!("unit {label:?} is not of degree 0")));
        }
        self.units.insert(x, i);
        Ok(())
    }

    /// Adds `out` to `μ(chain; inputs)`, checking the degree `Σ|aᵢ| + 2 − k`.
    pub fn add_op(&mut self, chain: &[usize], inputs: &[usize], out: &SVec) -> Result<()> {
        let k = inputs.len();
        if chain.len() != k + 1 || k == 0 {
            return Err(Error::ShapeMismatch("operation chain length must be arity + 1".into()));
        }
        let mut deg = 2 - k as i32;
        for (s, i) in inputs.iter().enumerate() {
            let m = self.hom(chain[s], chain[s + 1]);
            if *i >= m.rank() {
                return Err(Error::ShapeMismatch(format!("input {s} out of range")));
            }
            deg += m.degree(*i);
        }
        let target = self.hom(chain[0], chain[k]);
        for (i, _) in out {
            if *i >= target.rank() {
                return Err(Error::ShapeMismatch("output out of range".into()));
            }
            if target.degree(*i) != deg {
                return Err(Error::ShapeMismatch(format!(
                    "μ{k} entry along {} has output {} of degree {} instead of {deg}",
                    self.chain_name(chain),
                    target.label(*i),
                    target.degree(*i)
                )));
            }
        }
        if out.is_empty() {
            return Ok(());
        }
        let ring = self.ring;
        let table = self.ops.entry(chain.to_vec()).or_default();
        let e = table.entry(inputs.to_vec()).or_default();
        *e = sparse::add(ring, e, out);
        if e.is_empty() {
            table.remove(inputs);
        }
        Ok(())
    }

    pub fn set_op(&mut self, chain: &[usize], inputs: &[usize], out: SVec) {
        let table = self.ops.entry(chain.to_vec()).or_default();
        if out.is_empty() {
            table.remove(inputs);
        } else {
            table.insert(inputs.to_vec(), out);
        }
    }

    pub fn ops(&self) -> &BTreeMap<Vec<usize>, OpTable> {
        &self.ops
    }

    pub fn chain_name(&self, chain: &[usize]) -> String {
        chain.iter().map(|x| self.objects[*x].as_str()).collect::<Vec<_>>().join(",")
    }

    /// Adjoins a rank-one degree-0 unit to every `hom(X,X)` that lacks a
    /// designated unit, with strict unit operations.
    pub fn adjoin_strict_units(&mut self, label: impl Fn(&str) -> String) -> Result<()> {
        let ring = self.ring;
        for x in 0..self.objects.len() {
            if self.units.contains_key(&x) {
                continue;
            }
            let mut gens = self.hom(x, x).generators().to_vec();
            gens.push(crate::linalg::Generator {
                label: label(&self.objects[x]),
                degree: 0,
            });
            let u = gens.len() - 1;
            self.set_hom(x, x, GradedModule::new(ring, gens)?);
            self.units.insert(x, u);
        }
        self.install_unit_operations();
        Ok(())
    }

    /// Writes the strict unit identities `μ²(1,a) = a`, `μ²(a,1) = (−1)^{|a|} a`.
    pub fn install_unit_operations(&mut self) {
        let ring = self.ring;
        let units = self.units.clone();
        let keys: Vec<(usize, usize)> = self.homs.keys().copied().collect();
        for (x, y) in keys {
            let m = self.hom(x, y).clone();
            for a in 0..m.rank() {
                if let Some(u) = units.get(&x) {
                    self.set_op(&[x, x, y], &[*u, a], sparse::unit(a, ring));
                }
                if let Some(u) = units.get(&y) {
                    let s = ring.sign(m.degree(a).rem_euclid(2) == 1);
                    self.set_op(&[x, y, y], &[a, *u], vec![(a, s)]);
                }
            }
        }
    }

    pub fn unit_vector(&self, x: usize) -> Option<SVec> {
        self.units.get(&x).map(|u| sparse::unit(*u, self.ring))
    }

    pub fn unit_vectors(&self) -> BTreeMap<usize, SVec> {
        self.units.iter().map(|(x, u)| (*x, sparse::unit(*u, self.ring))).collect()
    }

    pub fn scalar_entries(&self) -> usize {
        self.ops.values().map(|t| t.len()).sum()
    }

    /// Largest arity present in the operation tables.
    pub fn present_arity(&self) -> usize {
        self.ops.keys().map(|c| c.len() - 1).max().unwrap_or(0)
    }

    pub fn op_value(&self, chain: &[usize], inputs: &[usize]) -> Option<&SVec> {
        self.ops.get(chain).and_then(|t| t.get(inputs))
    }

    pub fn scale_entry(&mut self, chain: &[usize], inputs: &[usize], s: &Scalar) {
        let ring = self.ring;
        if let Some(t) = self.ops.get_mut(chain) {
            if let Some(v) = t.get_mut(inputs) {
                *v = sparse::scale(ring, s, v);
            }
        }
    }
}

impl AInfOps for AInfCategory {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn object_names(&self) -> Vec<String> {
        self.objects.clone()
    }

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom(&self, x: usize, y: usize) -> &GradedModule {
        self.homs.get(&(x, y)).unwrap_or(&self.zero)
    }

    fn mu(&self, chain: &[usize], inputs: &[usize]) -> SVec {
        self.op_value(chain, inputs).cloned().unwrap_or_default()
    }

    fn max_arity(&self) -> usize {
        self.present_arity()
    }
}
