//! Exact scalar fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations
//! ship with the crate: arbitrary-precision rationals ([`Rational`]) and
//! rational functions in one indeterminate ([`crate::ratfunc::RatFunc`]).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// An exact, commutative field.
///
/// Method names mirror the arithmetic operators; they take references so
/// generic code never needs to spell out operator bounds on `&Self`.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics when `other` is zero.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn inv(&self) -> Self {
        Self::one().div(self)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self^n` for any integer `n`; negative powers invert.
    fn powi(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `self += a * b`, the inner loop of every elimination.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Absolute value test used by the numeric quantum mode.
pub fn is_unit_modulus(q: &Rational) -> bool {
    One::is_one(&q.abs())
}
