//! Finitely generated free graded modules and homogeneous maps between them.

use std::collections::{BTreeMap, HashMap};

use super::matrix::Matrix;
use super::scalar::Ring;
use super::sparse::{self, SVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub degree: i32,
}

/// A free graded module with a named, ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub ring: Ring,
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl GradedModule {
    pub fn new(ring: Ring, gens: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.label.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate basis label {:?}", g.label)));
            }
        }
        Ok(GradedModule { ring, gens, index })
    }

    pub fn from_pairs(ring: Ring, gens: &[(&str, i32)]) -> Result<Self> {
        Self::new(
            ring,
            gens.iter()
                .map(|(l, d)| Generator {
                    label: l.to_string(),
                    degree: *d,
                })
                .collect(),
        )
    }

    pub fn zero(ring: Ring) -> Self {
        GradedModule {
            ring,
            gens: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.gens[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.gens[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Basis indices of the given degree, in basis order.
    pub fn indices_in(&self, d: i32) -> Vec<usize> {
        (0..self.gens.len()).filter(|i| self.gens[*i].degree == d).collect()
    }

    pub fn rank_in(&self, d: i32) -> usize {
        self.gens.iter().filter(|g| g.degree == d).count()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.gens.iter().map(|g| g.degree).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for g in &self.gens {
            *m.entry(g.degree).or_insert(0) += 1;
        }
        m
    }

    /// Degree of a nonzero homogeneous vector, `None` if zero or mixed.
    pub fn vector_degree(&self, v: &SVec) -> Option<i32> {
        let mut d = None;
        for (i, _) in v {
            let e = self.gens[*i].degree;
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        d
    }

    /// Renders a vector as a sum of labelled generators.
    pub fn format_vector(&self, v: &SVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, x)| {
                if x.is_one() {
                    self.gens[*i].label.clone()
                } else {
                    format!("{}*{}", self.ring.format(x), self.gens[*i].label)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Direct sum with relabelled generators; returns the offsets of each part.
    pub fn direct_sum(ring: Ring, parts: &[(String, &GradedModule, i32)]) -> (Self, Vec<usize>) {
        let mut gens = Vec::new();
        let mut offsets = Vec::new();
        for (prefix, m, shift) in parts {
            offsets.push(gens.len());
            for g in &m.gens {
                gens.push(Generator {
                    label: format!("{prefix}{}", g.label),
                    degree: g.degree + shift,
                });
            }
        }
        (GradedModule::new(ring, gens).expect("prefixes keep labels unique"), offsets)
    }
}

/// A homogeneous linear map, stored by the images of source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub degree: i32,
    cols: Vec<SVec>,
}

impl GradedMap {
    pub fn new(source: GradedModule, target: GradedModule, degree: i32, cols: Vec<SVec>) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for source of rank {}",
                cols.len(),
                source.rank()
            )));
        }
        for (j, c) in cols.iter().enumerate() {
            for (i, _) in c {
                if *i >= target.rank() {
                    return Err(Error::ShapeMismatch(format!(
                        "image of {} leaves the target",
                        source.label(j)
                    )));
                }
                if target.degree(*i) != source.degree(j) + degree {
                    return Err(Error::ShapeMismatch(format!(
                        "image of {} has a component {} of the wrong degree",
                        source.label(j),
                        target.label(*i)
                    )));
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            cols,
        })
    }

    pub fn zero(source: GradedModule, target: GradedModule, degree: i32) -> Self {
        let n = source.rank();
        GradedMap {
            source,
            target,
            degree,
            cols: vec![Vec::new(); n],
        }
    }

    pub fn identity(m: &GradedModule) -> Self {
        let cols = (0..m.rank()).map(|i| sparse::unit(i, m.ring)).collect();
        GradedMap {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            cols,
        }
    }

    pub fn columns(&self) -> &[SVec] {
        &self.cols
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        sparse::apply(self.source.ring, &self.cols, v)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// The block from source degree `d` to target degree `d + degree`.
    pub fn block(&self, d: i32) -> Matrix {
        let src = self.source.indices_in(d);
        let tgt = self.target.indices_in(d + self.degree);
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let cols: Vec<SVec> = src
            .iter()
            .map(|j| self.cols[*j].iter().map(|(i, x)| (pos[i], x.clone())).collect())
            .collect();
        Matrix::from_columns(tgt.len(), &cols)
    }

    pub fn scale(&self, s: &super::scalar::Scalar) -> Self {
        let ring = self.source.ring;
        GradedMap {
            cols: self.cols.iter().map(|c| sparse::scale(ring, s, c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &GradedMap) -> Result<Self> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::ShapeMismatch("sum of maps with different shapes".into()));
        }
        let ring = self.source.ring;
        Ok(GradedMap {
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| sparse::add(ring, a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<Self> {
        self.add(&other.scale(&self.source.ring.minus_one()))
    }
}

/// `g ∘ f`; requires `target(f) = source(g)`.
pub fn compose_graded_maps(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    if f.target != g.source {
        return Err(Error::ShapeMismatch("target of f differs from source of g".into()));
    }
    let cols = f.cols.iter().map(|c| g.apply(c)).collect();
    Ok(GradedMap {
        source: f.source.clone(),
        target: g.target.clone(),
        degree: f.degree + g.degree,
        cols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_with_identity_and_zero() {
        let r = Ring::PrimeField(3);
        let m = GradedModule::from_pairs(r, &[("a", 0), ("b", 0)]).unwrap();
        let f = GradedMap::new(
            m.clone(),
            m.clone(),
            0,
            vec![vec![(0, r.from_int(1)), (1, r.from_int(2))], vec![(1, r.from_int(1))]],
        )
        .unwrap();
        let id = GradedMap::identity(&m);
        assert_eq!(compose_graded_maps(&f, &id).unwrap(), f);
        let z = GradedMap::zero(m.clone(), m.clone(), 0);
        assert!(compose_graded_maps(&f, &z).unwrap().is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_columns() {
        let r = Ring::PrimeField(2);
        let m = GradedModule::from_pairs(r, &[("a", 0), ("b", 1)]).unwrap();
        assert!(GradedMap::new(m.clone(), m, 0, vec![vec![(1, r.one())], vec![]]).is_err());
    }
}
