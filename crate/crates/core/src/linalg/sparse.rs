//! Sparse vectors and incremental row echelon bases over a field.

use std::collections::BTreeMap;

use super::scalar::{Ring, Scalar};

/// Sorted list of `(index, nonzero coefficient)` pairs.
pub type SVec = Vec<(usize, Scalar)>;

pub fn unit(i: usize, ring: Ring) -> SVec {
    vec![(i, ring.one())]
}

pub fn get(v: &SVec, i: usize) -> Scalar {
    match v.binary_search_by_key(&i, |(j, _)| *j) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Scalar::zero(),
    }
}

/// `a + s·b`.
pub fn axpy(ring: Ring, a: &SVec, s: &Scalar, b: &SVec) -> SVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, ring.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = ring.add(&a[i].1, &ring.mul(s, &b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add(ring: Ring, a: &SVec, b: &SVec) -> SVec {
    axpy(ring, a, &ring.one(), b)
}

pub fn sub(ring: Ring, a: &SVec, b: &SVec) -> SVec {
    axpy(ring, a, &ring.minus_one(), b)
}

pub fn scale(ring: Ring, s: &Scalar, v: &SVec) -> SVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter()
        .map(|(i, x)| (*i, ring.mul(s, x)))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

pub fn neg(ring: Ring, v: &SVec) -> SVec {
    scale(ring, &ring.minus_one(), v)
}

/// Builds a normalized vector from unsorted, possibly repeated entries.
pub fn collect(ring: Ring, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        let e = acc.entry(i).or_insert_with(Scalar::zero);
        *e = ring.add(e, &x);
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Applies a linear map given by the images of basis vectors.
pub fn apply(ring: Ring, cols: &[SVec], v: &SVec) -> SVec {
    let mut out = Vec::new();
    for (i, x) in v {
        out = axpy(ring, &out, x, &cols[*i]);
    }
    out
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Scalar> {
    let mut d = vec![Scalar::zero(); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

pub fn from_dense(d: &[Scalar]) -> SVec {
    d.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// A fully reduced row echelon basis of a subspace.
///
/// Every stored row has coefficient one at its pivot and zero at every other
/// pivot, so the stored rows are the reduced row echelon form of the span and
/// do not depend on insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: Ring,
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new(ring: Ring) -> Self {
        Echelon {
            ring,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_vectors<'a>(ring: Ring, vs: impl IntoIterator<Item = &'a SVec>) -> Self {
        let mut e = Echelon::new(ring);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec> {
        self.rows.values()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut out = v.clone();
        for (i, x) in v {
            if let Some(row) = self.rows.get(i) {
                out = axpy(self.ring, &out, &self.ring.neg(x), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (lead, x) = r[0].clone();
        let r = scale(self.ring, &self.ring.inv(&x).expect("field"), &r);
        for row in self.rows.values_mut() {
            let c = get(row, lead);
            if !c.is_zero() {
                *row = axpy(self.ring, row, &self.ring.neg(&c), &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    /// Coordinates of `v` with respect to the stored rows, keyed by pivot.
    pub fn coordinates(&self, v: &SVec) -> Option<Vec<(usize, Scalar)>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter(|(i, _)| self.rows.contains_key(i))
                .cloned()
                .collect(),
        )
    }
}

/// Kernel of the map with the given column images, as vectors in the source.
pub fn kernel(ring: Ring, cols: &[SVec]) -> Vec<SVec> {
    // semi-echelon on images, tracking source combinations
    let mut rows: BTreeMap<usize, (SVec, SVec)> = BTreeMap::new();
    let mut ker = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut img = c.clone();
        let mut tag = unit(j, ring);
        while let Some((lead, x)) = img.first().cloned() {
            match rows.get(&lead) {
                Some((row, rtag)) => {
                    let s = ring.neg(&x);
                    img = axpy(ring, &img, &s, row);
                    tag = axpy(ring, &tag, &s, rtag);
                }
                None => break,
            }
        }
        if img.is_empty() {
            ker.push(tag);
        } else {
            let inv = ring.inv(&img[0].1).expect("field");
            let lead = img[0].0;
            rows.insert(lead, (scale(ring, &inv, &img), scale(ring, &inv, &tag)));
        }
    }
    ker
}

/// Rank of the map with the given column images.
pub fn rank(ring: Ring, cols: &[SVec]) -> usize {
    Echelon::from_vectors(ring, cols.iter()).rank()
}

/// Solves `Σ xⱼ colsⱼ = target`, returning one solution if it exists.
pub fn solve(ring: Ring, cols: &[SVec], target: &SVec) -> Option<SVec> {
    let mut rows: BTreeMap<usize, (SVec, SVec)> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        let mut img = c.clone();
        let mut tag = unit(j, ring);
        while let Some((lead, x)) = img.first().cloned() {
            match rows.get(&lead) {
                Some((row, rtag)) => {
                    let s = ring.neg(&x);
                    img = axpy(ring, &img, &s, row);
                    tag = axpy(ring, &tag, &s, rtag);
                }
                None => break,
            }
        }
        if !img.is_empty() {
            let inv = ring.inv(&img[0].1).expect("field");
            let lead = img[0].0;
            rows.insert(lead, (scale(ring, &inv, &img), scale(ring, &inv, &tag)));
        }
    }
    let mut rem = target.clone();
    let mut sol = Vec::new();
    while let Some((lead, x)) = rem.first().cloned() {
        let (row, tag) = rows.get(&lead)?;
        rem = axpy(ring, &rem, &ring.neg(&x), row);
        sol = axpy(ring, &sol, &x, tag);
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ring: Ring, xs: &[i64]) -> SVec {
        from_dense(&xs.iter().map(|x| ring.from_int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_is_order_independent() {
        let q = Ring::Rationals;
        let a = v(q, &[1, 2, 3]);
        let b = v(q, &[0, 1, 1]);
        let e1 = Echelon::from_vectors(q, [&a, &b]);
        let e2 = Echelon::from_vectors(q, [&b, &add(q, &a, &b)]);
        let r1: Vec<_> = e1.rows().cloned().collect();
        let r2: Vec<_> = e2.rows().cloned().collect();
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_and_solve() {
        let f3 = Ring::PrimeField(3);
        let cols = vec![v(f3, &[1, 1]), v(f3, &[2, 2]), v(f3, &[0, 1])];
        let ker = kernel(f3, &cols);
        assert_eq!(ker.len(), 1);
        assert!(apply(f3, &cols, &ker[0]).is_empty());
        let t = v(f3, &[1, 0]);
        let x = solve(f3, &cols, &t).unwrap();
        assert_eq!(apply(f3, &cols, &x), t);
    }
}
