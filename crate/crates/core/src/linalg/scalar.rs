//! Exact scalars and coefficient rings.
//!
//! A [`Scalar`] is a rational number stored inline as a pair of `i128` while it
//! fits and promoted to arbitrary precision otherwise. The representation is
//! canonical, so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    Small(i128, i128),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n as i128, 1))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_frac(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Scalar(Repr::Small(n, d))
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
            // keep i128::MIN out so negation never overflows
            if n != i128::MIN && d != i128::MIN {
                return Scalar(Repr::Small(n, d));
            }
        }
        Scalar(Repr::Big(r))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => i64::try_from(*n).ok(),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Scalar(Repr::Small(-n, *d)),
            Repr::Big(r) => Self::from_big(-r),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    if s != i128::MIN {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
            }
            let x = Ratio::new_raw(*a, *b);
            let y = Ratio::new_raw(*c, *d);
            if let Some(s) = num_traits::CheckedAdd::checked_add(&x, &y) {
                return Self::from_small_ratio(s);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    if p != i128::MIN {
                        return Scalar(Repr::Small(p, 1));
                    }
                }
            }
            let x = Ratio::new_raw(*a, *b);
            let y = Ratio::new_raw(*c, *d);
            if let Some(p) = num_traits::CheckedMul::checked_mul(&x, &y) {
                return Self::from_small_ratio(p);
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    /// Field inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => {
                if *n < 0 {
                    Scalar(Repr::Small(-d, -n))
                } else {
                    Scalar(Repr::Small(*d, *n))
                }
            }
            Repr::Big(r) => Self::from_big(r.recip()),
        })
    }

    fn from_small_ratio(r: Ratio<i128>) -> Self {
        let (n, d) = (*r.numer(), *r.denom());
        if n == i128::MIN || d == i128::MIN {
            return Self::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        Scalar(Repr::Small(n, d))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) if *b == 1 && *d == 1 => a.cmp(c),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Coefficient ring of every module in a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Rationals,
    PrimeField(u64),
    Integers,
}

impl Default for Ring {
    fn default() -> Self {
        Ring::PrimeField(2)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::Schema(format!("{p} is not prime")))
        }
    }

    /// Parses `Q`, `Z`, `F2` or `Fp:<p>`.
    pub fn parse(s: &str) -> Result<Ring> {
        match s {
            "Q" => Ok(Ring::Rationals),
            "Z" => Ok(Ring::Integers),
            "F2" => Ok(Ring::PrimeField(2)),
            _ => match s.strip_prefix("Fp:") {
                Some(p) => {
                    let p: u64 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Schema(format!("bad prime in {s:?}")))?;
                    Ring::prime_field(p)
                }
                None => Err(Error::Schema(format!("unknown coefficient ring {s:?}"))),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Rationals => "Q".into(),
            Ring::Integers => "Z".into(),
            Ring::PrimeField(2) => "F2".into(),
            Ring::PrimeField(p) => format!("Fp:{p}"),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// Over a prime field the denominator is inverted modulo `p`, so the
    /// denominator must be prime to `p`. Over the integers the value must be
    /// integral.
    pub fn reduce(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::Schema(format!("{x} is not an integer")))
                }
            }
            Ring::PrimeField(p) => {
                let p = *p as i128;
                let n = x.numer() % BigInt::from(p);
                let d = x.denom() % BigInt::from(p);
                let n = n.to_i128().unwrap().rem_euclid(p);
                let d = d.to_i128().unwrap().rem_euclid(p);
                if d == 0 {
                    return Err(Error::Schema(format!("{x} has no value mod {p}")));
                }
                Ok(Scalar::from_int(((n * mod_inv(d, p)) % p) as i64))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Ring::PrimeField(p) => Scalar::from_int(n.rem_euclid(*p as i64)),
            _ => Scalar::from_int(n),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn minus_one(&self) -> Scalar {
        self.from_int(-1)
    }

    pub fn sign(&self, odd: bool) -> Scalar {
        if odd {
            self.minus_one()
        } else {
            self.one()
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = *p as i128;
                Scalar::from_frac((small(a) + small(b)).rem_euclid(p), 1)
            }
            _ => a.add(b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = *p as i128;
                Scalar::from_frac((small(a) - small(b)).rem_euclid(p), 1)
            }
            _ => a.sub(b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = *p as i128;
                Scalar::from_frac((-small(a)).rem_euclid(p), 1)
            }
            _ => a.neg(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = *p as i128;
                Scalar::from_frac((small(a) * small(b)).rem_euclid(p), 1)
            }
            _ => a.mul(b),
        }
    }

    /// Multiplicative inverse, `None` when not a unit of the ring.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match self {
            Ring::PrimeField(p) => {
                let v = small(a);
                if v == 0 {
                    None
                } else {
                    Some(Scalar::from_frac(mod_inv(v, *p as i128), 1))
                }
            }
            Ring::Rationals => a.inv(),
            Ring::Integers => {
                if a.is_one() || *a == Scalar::from_int(-1) {
                    Some(a.clone())
                } else {
                    None
                }
            }
        }
    }

    /// Parses an exact scalar literal such as `3/2`, `-4` or `2 mod 5`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let (body, modulus) = match t.split_once("mod") {
            Some((b, m)) => {
                let m: u64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad modulus in scalar {s:?}")))?;
                (b.trim(), Some(m))
            }
            None => (t, None),
        };
        if let Some(m) = modulus {
            if *self != Ring::PrimeField(m) {
                return Err(Error::Schema(format!(
                    "scalar {s:?} is not in ring {}",
                    self.name()
                )));
            }
        }
        let value = match body.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad numerator in scalar {s:?}")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad denominator in scalar {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::Schema(format!("zero denominator in scalar {s:?}")));
                }
                Scalar::from_big(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = body
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad scalar {s:?}")))?;
                Scalar::from_bigint(n)
            }
        };
        self.reduce(&value)
    }

    /// Canonical string form used in reports.
    pub fn format(&self, x: &Scalar) -> String {
        match self {
            Ring::PrimeField(p) if *p != 2 => format!("{x} mod {p}"),
            _ => x.to_string(),
        }
    }

    /// Every element of the ring when it is finite.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Ring::PrimeField(p) => Some((0..*p as i64).map(Scalar::from_int).collect()),
            _ => None,
        }
    }
}

fn small(a: &Scalar) -> i128 {
    match &a.0 {
        Repr::Small(n, 1) => *n,
        _ => panic!("prime field element {a} is not a small integer"),
    }
}

fn mod_inv(a: i128, p: i128) -> i128 {
    let (mut old_r, mut r) = (a.rem_euclid(p), p);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p)
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::add(&self, &rhs)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_promotes_on_overflow() {
        let big = Scalar::from_frac(i128::MAX / 2 + 1, 1);
        let s = big.add(&big);
        assert_eq!(s.to_big(), BigRational::from_integer(BigInt::from(i128::MAX) + 1));
        let back = s.sub(&big);
        assert_eq!(back, big);
    }

    #[test]
    fn fractions_normalize() {
        assert_eq!(Scalar::from_frac(2, -4), Scalar::from_frac(-1, 2));
        assert_eq!(Scalar::from_frac(1, 3).add(&Scalar::from_frac(2, 3)), Scalar::one());
    }

    #[test]
    fn parse_scalars() {
        let q = Ring::Rationals;
        assert_eq!(q.parse_scalar("3/2").unwrap(), Scalar::from_frac(3, 2));
        assert!(q.parse_scalar("1/0").is_err());
        let f5 = Ring::PrimeField(5);
        assert_eq!(f5.parse_scalar("2 mod 5").unwrap(), Scalar::from_int(2));
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::from_int(4));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), Scalar::from_int(3));
        assert!(f5.parse_scalar("2 mod 7").is_err());
        assert!(Ring::Integers.parse_scalar("1/2").is_err());
        assert_eq!(f5.format(&Scalar::from_int(2)), "2 mod 5");
    }

    #[test]
    fn ring_names_round_trip() {
        for r in [Ring::Rationals, Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(7)] {
            assert_eq!(Ring::parse(&r.name()).unwrap(), r);
        }
        assert!(Ring::parse("Fp:4").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = Ring::PrimeField(7);
        for a in 1..7 {
            let x = f7.from_int(a);
            let y = f7.inv(&x).unwrap();
            assert!(f7.mul(&x, &y).is_one());
        }
    }
}
