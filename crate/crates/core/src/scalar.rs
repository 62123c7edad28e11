//! Scalar types used by the exact linear algebra.
//!
//! Every predicate in this crate goes through [`Scalar::sign`], so the
//! implementations for [`Rational`] and [`QuadSurd`] are exact. The `f64`
//! implementation exists for cross-checks against floating point routines
//! and should never back a certificate.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Sign of an exact number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    /// Character used in sign-vector strings.
    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

/// Field element usable by the generic linear algebra.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn sign(&self) -> Sign;

    fn abs(&self) -> Self {
        match self.sign() {
            Sign::Negative => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Lossy conversion, only for reporting and sanity checks.
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn sign(&self) -> Sign {
        if *self > 0.0 {
            Sign::Positive
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is a perfect square; the extension would be trivial")]
    SquareRadicand(u64),
    #[error("radicand must be at least 2")]
    BadRadicand,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// An element `a + b*sqrt(q)` of a real quadratic field.
///
/// `q == 0` exactly when `b == 0`; such values are plain rationals and combine
/// with elements of any extension. Combining two irrational values with
/// different radicands is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    q: u64,
}

pub(crate) fn is_perfect_square(q: u64) -> bool {
    let r = q.sqrt();
    r * r == q
}

impl QuadSurd {
    pub fn rational(a: Rational) -> Self {
        QuadSurd {
            a,
            b: Rational::zero(),
            q: 0,
        }
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(Rational::from_i64(v))
    }

    /// Builds `a + b*sqrt(q)`; `q` must not be a perfect square.
    pub fn new(a: Rational, b: Rational, q: u64) -> Result<Self, ScalarError> {
        if q < 2 {
            return Err(ScalarError::BadRadicand);
        }
        if is_perfect_square(q) {
            return Err(ScalarError::SquareRadicand(q));
        }
        Ok(Self::normalized(a, b, q))
    }

    /// `sqrt(q)` itself.
    pub fn sqrt(q: u64) -> Result<Self, ScalarError> {
        Self::new(Rational::zero(), Rational::one(), q)
    }

    fn normalized(a: Rational, b: Rational, q: u64) -> Self {
        if b.is_zero() {
            QuadSurd { a, b, q: 0 }
        } else {
            QuadSurd { a, b, q }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand, or `None` for rational values.
    pub fn radicand(&self) -> Option<u64> {
        (self.q != 0).then_some(self.q)
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    fn common_q(&self, other: &Self) -> u64 {
        match (self.q, other.q) {
            (0, q) | (q, 0) => q,
            (p, q) if p == q => p,
            (p, q) => panic!("mixed quadratic extensions sqrt({p}) and sqrt({q})"),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.q)
    }

    /// Field norm `a^2 - q b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.q))
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadSurd {
    /// Formats as `a/b` or `a/b+c/d*sqrt(q)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        if self.q != 0 {
            if self.b.is_negative() {
                write!(f, "{}*sqrt({})", self.b, self.q)?;
            } else {
                write!(f, "+{}*sqrt({})", self.b, self.q)?;
            }
        }
        Ok(())
    }
}

impl FromStr for QuadSurd {
    type Err = ScalarError;

    /// Accepts `a`, `a/b`, `a/b+c/d*sqrt(q)`, `a/b-c/d*sqrt(q)` and
    /// `c/d*sqrt(q)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(pos) = t.find("sqrt(") else {
            return parse_rational(&t).map(QuadSurd::rational).ok_or_else(err);
        };
        let close = t[pos..].find(')').map(|i| i + pos).ok_or_else(err)?;
        if close != t.len() - 1 {
            return Err(err());
        }
        let q: u64 = t[pos + 5..close].parse().map_err(|_| err())?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split the coefficient of sqrt from the rational part at the last
        // sign that is not in leading position.
        let split = head
            .char_indices()
            .rfind(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a, b) = match split {
            Some(i) => (
                parse_rational(&head[..i]).ok_or_else(err)?,
                parse_signed_coefficient(&head[i..]).ok_or_else(err)?,
            ),
            None => (
                Rational::zero(),
                parse_signed_coefficient(head).ok_or_else(err)?,
            ),
        };
        QuadSurd::new(a, b, q)
    }
}

fn parse_signed_coefficient(s: &str) -> Option<Rational> {
    match s {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        _ => parse_rational(s.strip_prefix('+').unwrap_or(s)),
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

impl Zero for QuadSurd {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.q == 0 && self.a.is_zero()
    }
}

impl One for QuadSurd {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: QuadSurd) -> QuadSurd {
        let q = self.common_q(&rhs);
        Self::normalized(self.a + rhs.a, self.b + rhs.b, q)
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: QuadSurd) -> QuadSurd {
        let q = self.common_q(&rhs);
        Self::normalized(self.a - rhs.a, self.b - rhs.b, q)
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: QuadSurd) -> QuadSurd {
        let q = self.common_q(&rhs);
        if q == 0 {
            return Self::rational(self.a * rhs.a);
        }
        let qq = Rational::from_integer(BigInt::from(q));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * qq;
        let b = self.a * rhs.b + self.b * rhs.a;
        Self::normalized(a, b, q)
    }
}

impl Div for QuadSurd {
    type Output = QuadSurd;
    fn div(self, rhs: QuadSurd) -> QuadSurd {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.q == 0 {
            let q = self.q;
            return Self::normalized(self.a / &rhs.a, self.b / rhs.a, q);
        }
        let norm = rhs.norm();
        let num = self * rhs.conjugate();
        let q = num.q;
        Self::normalized(num.a / &norm, num.b / norm, q)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        Self::normalized(-self.a, -self.b, self.q)
    }
}

impl Scalar for QuadSurd {
    fn from_i64(v: i64) -> Self {
        Self::integer(v)
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    /// Sign of `a + b*sqrt(q)` from the signs of `a`, `b` and the comparison
    /// of `a^2` with `q b^2`.
    fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins.
        let qq = Rational::from_integer(BigInt::from(self.q));
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * qq;
        match a2.cmp(&b2q) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a^2 = q b^2 with b != 0 would make q a rational square.
            Ordering::Equal => unreachable!("q is not a perfect square"),
        }
    }

    fn to_f64(&self) -> f64 {
        let a = Scalar::to_f64(&self.a);
        let b = Scalar::to_f64(&self.b);
        a + b * (self.q as f64).sqrt()
    }
}

/// Common radicand of a collection of values, if they share one.
pub fn common_radicand<'a>(values: impl IntoIterator<Item = &'a QuadSurd>) -> Option<u64> {
    values.into_iter().find_map(|v| v.radicand())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn surd(a: i64, b: i64, q: u64) -> QuadSurd {
        QuadSurd::new(r(a, 1), r(b, 1), q).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(surd(3, -2, 2).sign(), Sign::Positive);
        assert_eq!(surd(1, -1, 2).sign(), Sign::Negative);
        assert_eq!(QuadSurd::zero().sign(), Sign::Zero);
        assert_eq!(surd(-3, 2, 2).sign(), Sign::Negative);
        assert_eq!(surd(0, -1, 5).sign(), Sign::Negative);
    }

    #[test]
    fn square_radicand_rejected() {
        assert_eq!(
            QuadSurd::sqrt(9).unwrap_err(),
            ScalarError::SquareRadicand(9)
        );
        assert!(QuadSurd::sqrt(1).is_err());
    }

    #[test]
    fn division_by_surd() {
        let x = surd(1, 1, 3);
        let y = surd(2, -1, 3);
        let z = x.clone() / y.clone();
        assert_eq!(z * y, x);
        let s3 = QuadSurd::sqrt(3).unwrap();
        assert_eq!(s3.clone() * s3, QuadSurd::integer(3));
    }

    #[test]
    fn parse_and_format() {
        for s in ["3", "-1/2", "1/2+3/4*sqrt(3)", "-2-1/3*sqrt(5)", "0+1*sqrt(2)"] {
            let v: QuadSurd = s.parse().unwrap();
            let back: QuadSurd = v.to_string().parse().unwrap();
            assert_eq!(v, back, "{s}");
        }
        let v: QuadSurd = "sqrt(3)".parse().unwrap();
        assert_eq!(v, QuadSurd::sqrt(3).unwrap());
        let v: QuadSurd = "-sqrt(3)".parse().unwrap();
        assert_eq!(v, -QuadSurd::sqrt(3).unwrap());
        assert!("1/0".parse::<QuadSurd>().is_err());
        assert!("sqrt(4)".parse::<QuadSurd>().is_err());
        assert!("x".parse::<QuadSurd>().is_err());
    }

    #[test]
    fn rational_surd_mix_keeps_radicand() {
        let x = QuadSurd::integer(2) + QuadSurd::sqrt(7).unwrap();
        assert_eq!(x.radicand(), Some(7));
        let y = x.clone() - QuadSurd::sqrt(7).unwrap();
        assert!(y.is_rational());
        assert_eq!(y, QuadSurd::integer(2));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixed_radicands_panic() {
        let _ = QuadSurd::sqrt(2).unwrap() + QuadSurd::sqrt(3).unwrap();
    }

    proptest! {
        #[test]
        fn sign_matches_float(a in -200i64..200, b in -200i64..200, q in prop::sample::select(vec![2u64, 3, 5, 6, 7])) {
            let x = QuadSurd::new(r(a, 7), r(b, 5), q).unwrap();
            let f = Scalar::to_f64(&x);
            let s = x.sign();
            if f.abs() > 1e-9 {
                prop_assert_eq!(s, if f > 0.0 { Sign::Positive } else { Sign::Negative });
            }
            let neg = (-x.clone()).sign();
            prop_assert!(matches!((s * neg).as_i8(), 0 | -1));
        }

        #[test]
        fn sign_is_multiplicative(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = surd(a, b, 3);
            let y = surd(c, d, 3);
            prop_assert_eq!((x.clone() * y.clone()).sign(), x.sign() * y.sign());
        }
    }
}
