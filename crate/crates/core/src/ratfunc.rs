//! The rational-function field `Q(q)`.
//!
//! A [`RatFunc`] is a quotient of two integer polynomials in `q`, kept in
//! lowest terms: numerator and denominator are coprime over `Q`, the
//! combined integer content is 1, and the denominator has positive leading
//! coefficient. This normal form makes equality structural.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};

/// Dense integer polynomial, coefficients from degree 0 upwards, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    /// `q^n` for `n >= 0`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Poly(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_default();
            let b = other.0.get(k).cloned().unwrap_or_default();
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.0.iter().cloned());
        Poly(coeffs)
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn divide_content(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.divide_content(&c)
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo-division by zero");
        let lc = d.lead().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let factor = r.lead().clone();
            r = r.scale(&lc).sub(&d.scale(&factor).shift(rd - dd));
        }
        r
    }

    /// Primitive gcd over `Z[q]` (positive leading coefficient).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact division; panics if `d` does not divide `self` over `Z`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().clone();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            assert!(rd >= dd, "inexact polynomial division");
            let (c, rem) = r.lead().div_rem(&lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            quot[rd - dd] = c.clone();
            r = r.sub(&d.scale(&c).shift(rd - dd));
        }
        Poly::from_coeffs(quot)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = <Rational as Zero>::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff_shown = !abs.is_one() || k == 0;
            if coeff_shown {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}q", if coeff_shown { "*" } else { "" })?,
                _ => write!(f, "{}q^{k}", if coeff_shown { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Element of `Q(q)` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// The indeterminate `q`.
    pub fn q() -> Self {
        RatFunc { num: Poly::monomial(1), den: Poly::monomial(0) }
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::monomial(0);
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let mut c = self.num.content().gcd(&self.den.content());
        if self.den.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            self.num = self.num.divide_content(&c);
            self.den = self.den.divide_content(&c);
        }
    }

    /// Evaluates at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::monomial(0) {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.0.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::monomial(0) }
    }
    fn one() -> Self {
        RatFunc { num: Poly::monomial(0), den: Poly::monomial(0) }
    }
    fn from_i64(n: i64) -> Self {
        RatFunc { num: Poly::constant(BigInt::from(n)), den: Poly::monomial(0) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}
