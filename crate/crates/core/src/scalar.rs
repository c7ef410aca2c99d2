//! Exact scalars over Q or a prime field F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// F_p for a prime `p < 2^31`.
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for Q, p for F_p.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// Image of an integer.
    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => Scalar::Prime { value: n.rem_euclid(p as i64) as u32, p },
        }
    }

    /// The fraction `num/den`; `den` must be invertible in the field.
    pub fn frac(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den).inv().ok_or(Error::DivisionByZero)?;
        Ok(&self.int(num) * &d)
    }

    /// 1/2, or `NoHalf` in characteristic 2.
    pub fn half(&self) -> Result<Scalar> {
        self.int(2).inv().ok_or(Error::NoHalf)
    }

    /// Number of elements for a finite field.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p as u64),
        }
    }

    /// The element with canonical index `k` (0..p) of a finite field.
    pub fn element(&self, k: u64) -> Scalar {
        match *self {
            Field::Rational => self.int(k as i64),
            Field::Prime(p) => Scalar::Prime { value: (k % p as u64) as u32, p },
        }
    }

    /// Parses "Q", "F5", "5", "rational".
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "Q" | "q" | "rational" => Ok(Field::Rational),
            _ => {
                let digits = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).unwrap_or(t);
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
                Field::prime(p)
            }
        }
    }

    /// Parses a scalar written as an integer or `num/den`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad scalar `{s}`"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(n, d))),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &m) + &m) % &m;
                    u32::try_from(r).expect("residue below p")
                };
                let num = Scalar::Prime { value: reduce(&n), p };
                let den = Scalar::Prime { value: reduce(&d), p };
                let inv = den.inv().ok_or(Error::DivisionByZero)?;
                Ok(&num * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator, F_p values as representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, p } => Scalar::Prime { value: pow_mod(*value, *p - 2, *p), p: *p },
        })
    }

    /// Canonical index in a finite field; the numerator for an integral rational.
    pub fn index(&self) -> u64 {
        match self {
            Scalar::Prime { value, .. } => *value as u64,
            Scalar::Rational(q) => u64::try_from(q.to_integer()).unwrap_or(0),
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalars from different fields were combined"
        );
    }
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let m = p as u64;
    let (mut acc, mut base) = (1u64, b as u64 % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                let s = *a as u64 + *b as u64;
                Scalar::Prime { value: (s % *p as u64) as u32, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                let s = *a as u64 + *p as u64 - *b as u64;
                Scalar::Prime { value: (s % *p as u64) as u32, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                let s = *a as u64 * *b as u64;
                Scalar::Prime { value: (s % *p as u64) as u32, p: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime { value: (*p - *value) % *p, p: *p },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic_wraps() {
        let f = Field::prime(7).unwrap();
        assert_eq!(&f.int(5) + &f.int(4), f.int(2));
        assert_eq!(&f.int(2) - &f.int(5), f.int(4));
        assert_eq!(&f.int(3) * &f.int(5), f.int(1));
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
        assert_eq!(f.int(-1), f.int(6));
    }

    #[test]
    fn rationals_normalize() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!((&a * &q.int(2)).to_string(), "-3");
    }

    #[test]
    fn parse_into_prime_field() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(3));
        assert_eq!(f.parse_scalar("-2").unwrap(), f.int(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    fn rejects_composites_and_two_has_no_half() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).unwrap().half().is_err());
        assert_eq!(Field::parse("F3").unwrap(), Field::Prime(3));
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(3).one();
    }
}
