//! Random integer cochain complexes with known cohomology, and a cohomology
//! oracle built from determinantal divisors.

use rand::Rng;

use wrapcat_core::linalg::complex::torsion_u64;
use wrapcat_core::linalg::{cohomology, Complex, GradedMap, GradedModule, Ring, Scalar};

/// `d[k]` is a `dims[k+1] × dims[k]` matrix, stored by rows.
#[derive(Clone, Debug)]
pub struct IntComplex {
    pub dims: Vec<usize>,
    pub d: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCohomology {
    pub free: Vec<usize>,
    /// Invariant factors greater than one, ascending.
    pub torsion: Vec<Vec<u64>>,
}

pub const MAX_ENTRY: i64 = 9;

/// A sum of elementary complexes `ℤ` and `ℤ --n--> ℤ`, scrambled by
/// elementary changes of basis that keep every entry in `[-9, 9]`.
pub fn random_complex(rng: &mut impl Rng, max_rank: usize) -> (IntComplex, IntCohomology) {
    let len = rng.gen_range(2..=4);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=max_rank)).collect();
    let mut d: Vec<Vec<Vec<i64>>> = (0..len - 1).map(|k| vec![vec![0; dims[k]]; dims[k + 1]]).collect();
    let mut used = vec![0usize; len];
    let mut expected = IntCohomology {
        free: vec![0; len],
        torsion: vec![Vec::new(); len],
    };
    for k in 0..len {
        while used[k] < dims[k] {
            if k + 1 < len && used[k + 1] < dims[k + 1] && rng.gen_bool(0.6) {
                let n = rng.gen_range(1..=MAX_ENTRY) * if rng.gen_bool(0.5) { 1 } else { -1 };
                d[k][used[k + 1]][used[k]] = n;
                if n.abs() > 1 {
                    expected.torsion[k + 1].push(n.unsigned_abs());
                }
                used[k + 1] += 1;
            } else {
                expected.free[k] += 1;
            }
            used[k] += 1;
        }
    }
    for t in &mut expected.torsion {
        *t = invariant_factors(t);
    }
    let mut c = IntComplex { dims, d };
    for _ in 0..80 {
        let k = rng.gen_range(0..len);
        if c.dims[k] < 2 {
            continue;
        }
        let i = rng.gen_range(0..c.dims[k]);
        let j = (i + rng.gen_range(1..c.dims[k])) % c.dims[k];
        let lambda = [-2, -1, 1, 2][rng.gen_range(0..4)];
        let mut next = c.clone();
        if k > 0 {
            let rj = next.d[k - 1][j].clone();
            for (x, y) in next.d[k - 1][i].iter_mut().zip(rj) {
                *x += lambda * y;
            }
        }
        if k + 1 < len {
            for row in next.d[k].iter_mut() {
                row[j] -= lambda * row[i];
            }
        }
        if next.d.iter().flatten().flatten().all(|x| x.abs() <= MAX_ENTRY) {
            c = next;
        }
    }
    (c, expected)
}

/// Invariant factors of `⊕ ℤ/nᵢ`, ascending and without ones.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut powers: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &n in orders {
        let (mut n, mut p) = (n, 2);
        while n > 1 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                powers.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for qs in powers.values_mut() {
        qs.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in qs.iter().enumerate() {
            out[i] *= q;
        }
    }
    out.reverse();
    out
}

impl IntComplex {
    pub fn to_complex(&self) -> Complex {
        let ring = Ring::Integers;
        let mut offsets = vec![0];
        for n in &self.dims {
            offsets.push(offsets.last().unwrap() + n);
        }
        let labels: Vec<(String, i32)> = self
            .dims
            .iter()
            .enumerate()
            .flat_map(|(k, n)| (0..*n).map(move |i| (format!("c{k}_{i}"), k as i32)))
            .collect();
        let pairs: Vec<(&str, i32)> = labels.iter().map(|(l, k)| (l.as_str(), *k)).collect();
        let m = GradedModule::from_pairs(ring, &pairs).unwrap();
        let mut cols = Vec::new();
        for (k, n) in self.dims.iter().enumerate() {
            for i in 0..*n {
                let col = match self.d.get(k) {
                    None => Vec::new(),
                    Some(dk) => (0..self.dims[k + 1])
                        .filter(|r| dk[*r][i] != 0)
                        .map(|r| (offsets[k + 1] + r, Scalar::from_int(dk[r][i])))
                        .collect(),
                };
                cols.push(col);
            }
        }
        let map = GradedMap::new(m.clone(), m.clone(), 1, cols).unwrap();
        Complex::new(m, map).unwrap()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Fraction-free Gaussian elimination.
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                None => return 0,
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcds of the `i × i` minors for `i = 1, 2, …` until they vanish.
pub fn determinantal_divisors(m: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = gcd(g, determinant(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Free ranks and torsion of `ker d_k / im d_{k-1}` from the divisors of
/// each differential.
pub fn oracle_cohomology(c: &IntComplex) -> IntCohomology {
    let len = c.dims.len();
    let divisors: Vec<Vec<i128>> = c.d.iter().enumerate().map(|(k, m)| determinantal_divisors(m, c.dims[k])).collect();
    let rank = |k: isize| -> usize {
        if k < 0 || k as usize >= divisors.len() {
            0
        } else {
            divisors[k as usize].len()
        }
    };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..len {
        free.push(c.dims[k] - rank(k as isize) - rank(k as isize - 1));
        let mut t = Vec::new();
        if k > 0 {
            let dv = &divisors[k - 1];
            for i in 0..dv.len() {
                let prev = if i == 0 { 1 } else { dv[i - 1] };
                let s = dv[i] / prev;
                if s > 1 {
                    t.push(s as u64);
                }
            }
        }
        t.sort_unstable();
        torsion.push(t);
    }
    IntCohomology { free, torsion }
}

/// The library's cohomology in the oracle's format.
pub fn computed(c: &Complex, len: usize) -> IntCohomology {
    let h = cohomology(c).unwrap();
    let mut torsion: Vec<Vec<u64>> = (0..len).map(|k| torsion_u64(&h, k as i32)).collect();
    for t in &mut torsion {
        t.sort_unstable();
    }
    IntCohomology {
        free: (0..len).map(|k| h.rank(k as i32)).collect(),
        torsion,
    }
}
