//! Exact rational arithmetic, the sawtooth function and Dedekind sums.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Rational {
        (0..e).fold(Rational::one(), |acc, _| &acc * self)
    }

    /// The value as an `i64` if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational, Error> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_bigints(n, d))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Rational {
        Rational::from_bigint(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $tr<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                Rational(self.0.$method(BigRational::from_integer(rhs.into())))
            }
        }
        impl<'a> $tr<i64> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                Rational((&self.0).$method(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl Div<i64> for Rational {
    type Output = Rational;
    fn div(self, rhs: i64) -> Rational {
        &self / &Rational::from_integer(rhs)
    }
}

impl<'a> Div<i64> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: i64) -> Rational {
        self / &Rational::from_integer(rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A surgery slope p/q in lowest terms with q >= 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope, Error> {
        if q < 1 || p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        Ok(Slope { p, q })
    }

    /// Integral slope p/1.
    pub fn integral(p: i64) -> Slope {
        Slope { p, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.p, self.q)
    }

    /// (p^2 + q^2 + 1) / q^2, the singleton correction term of a component.
    pub fn theta(&self) -> Rational {
        let (p, q) = (self.p as i128, self.q as i128);
        Rational::from_bigints(BigInt::from(p * p + q * q + 1), BigInt::from(q * q))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// ((x)): zero on integers, x - floor(x) - 1/2 otherwise.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - &x.floor() - Rational::new(1, 2)
    }
}

fn check_dedekind_args(p: i64, q: i64) -> Result<(), Error> {
    if q == 0 {
        return Err(Error::DedekindZeroModulus);
    }
    if p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// s(p, q) summed term by term over i = 1..|q|.
///
/// Each factor ((a/q)) with a not divisible by q equals (2r - q) / (2q) for
/// r = a mod q, so the sum is accumulated over integers and divided once.
pub fn dedekind_sum_direct(p: i64, q: i64) -> Result<Rational, Error> {
    check_dedekind_args(p, q)?;
    let q = q.unsigned_abs() as i128;
    let p = p as i128;
    let mut acc: i128 = 0;
    for i in 1..q {
        let r = (i * p).rem_euclid(q);
        if r != 0 {
            acc += (2 * i - q) * (2 * r - q);
        }
    }
    Ok(Rational::from_bigints(BigInt::from(acc), BigInt::from(4 * q * q)))
}

/// s(p, q) in O(log q) steps: reduce p modulo q, then apply reciprocity
/// s(p, q) = (p^2 + q^2 + 1) / (12pq) - 1/4 - s(q, p) until q = 1.
pub fn dedekind_sum_fast(p: i64, q: i64) -> Result<Rational, Error> {
    check_dedekind_args(p, q)?;
    let mut q = q.unsigned_abs() as i128;
    let mut p = (p as i128).rem_euclid(q);
    let mut acc = Rational::zero();
    let mut sign = 1i64;
    let quarter = Rational::new(1, 4);
    while q > 1 {
        // gcd(p, q) = 1 and q > 1 keep p >= 1 here.
        let term = Rational::from_bigints(BigInt::from(p * p + q * q + 1), BigInt::from(12 * p * q));
        acc += (term - &quarter) * sign;
        sign = -sign;
        let r = q.rem_euclid(p);
        q = p;
        p = r;
    }
    Ok(acc)
}

/// Right-hand side of the reciprocity law: (p^2 + q^2 + 1 - 3pq) / (12pq).
pub fn dedekind_reciprocity_rhs(p: i64, q: i64) -> Rational {
    let (p, q) = (p as i128, q as i128);
    Rational::from_bigints(BigInt::from(p * p + q * q + 1 - 3 * p * q), BigInt::from(12 * p * q))
}
