//! Exact scalar arithmetic: arbitrary-precision rationals, the real quadratic
//! extension ℚ(√d), and complex numbers built from the latter.
//!
//! Every symbolic quantity in this crate (squared norms, Casimir invariants,
//! eigenvalues, band lines) flows through these types; floating point appears
//! only as an optional display approximation. A value `a + b√d` keeps `d`
//! squarefree and positive, and two such values can only be combined when
//! their radicands agree or one of them is rational — there is no multi-radical
//! tower, because a single radical per group is all the theory needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

/// Errors from exact arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("incompatible radicands: values over sqrt({0}) and sqrt({1}) cannot be combined")]
    IncompatibleRadicand(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative rational")]
    NegativeInput,
    #[error("radicand exceeds the supported factoring range")]
    RadicandTooLarge,
    #[error("value has no exact representation over a single radicand")]
    NotRepresentable,
    #[error("invalid number literal: {0}")]
    Parse(String),
}

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` reduced to lowest terms. Panics if `den == 0`; use [`FromStr`]
    /// for untrusted input.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// −1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(self.0.pow(exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints `p/q`, or just `p` when the denominator is 1.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Parses `p` or `p/q` with optional leading sign, e.g. `-3/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ExactError::Parse("empty rational literal".into()));
        }
        let bad = || ExactError::Parse(format!("`{s}` is not a rational (expected p or p/q)"));
        let (num_part, den_part) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = BigInt::from_str(num_part).map_err(|_| bad())?;
        let den = match den_part {
            Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ExactError::Parse(format!("`{s}` has zero denominator")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] for fallible paths.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
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

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Primes below 2^16, for squarefree decomposition by trial division.
fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const N: usize = 1 << 16;
        let mut sieve = vec![true; N];
        sieve[0] = false;
        sieve[1] = false;
        let mut p = 2usize;
        while p * p < N {
            if sieve[p] {
                let mut q = p * p;
                while q < N {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        (2..N as u32).filter(|&i| sieve[i as usize]).collect()
    })
}

/// Largest radicand we store; beyond this JSON integers stop being exact.
const MAX_RADICAND: i64 = 1 << 53;

/// Writes `n > 0` as `s² · d` with `d` squarefree.
///
/// Trial-divides by all primes below 2^16; a remaining cofactor is then either
/// 1, a perfect square, or (when below 2^48) guaranteed squarefree. Inputs
/// whose square part hides behind larger factors are rejected rather than
/// mis-classified.
fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, i64), ExactError> {
    debug_assert!(n.is_positive());
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    for &p in small_primes() {
        let p = BigInt::from(p);
        if (&p * &p) > m {
            break;
        }
        if m.is_multiple_of(&p) {
            let mut e = 0u32;
            while m.is_multiple_of(&p) {
                m /= &p;
                e += 1;
            }
            if e >= 2 {
                s *= p.pow(e / 2);
            }
            if e % 2 == 1 {
                d *= &p;
            }
        }
    }
    if !m.is_one() {
        let r = m.sqrt();
        if &r * &r == m {
            s *= r;
        } else if m < BigInt::from(65537u64).pow(3) {
            // All prime factors of m exceed 2^16, so m below 2^48-ish has at
            // most two of them and (not being a square) is squarefree.
            d *= &m;
        } else {
            return Err(ExactError::RadicandTooLarge);
        }
    }
    let d = d.to_i64().filter(|&d| d <= MAX_RADICAND).ok_or(ExactError::RadicandTooLarge)?;
    Ok((s, d))
}

/// An exact element `a + b·√d` of the real quadratic field ℚ(√d).
///
/// Canonical form: `d` is positive and squarefree, and `d == 1` exactly when
/// the value is rational (`b == 0`). Equality is structural equality of the
/// canonical form, which coincides with equality of the represented reals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadExt {
    /// Builds `a + b√d`, normalizing `d` to its squarefree part.
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self, ExactError> {
        if d <= 0 {
            return Err(ExactError::NegativeInput);
        }
        if b.is_zero() {
            return Ok(QuadExt { a, b: Rational::zero(), d: 1 });
        }
        if d == 1 {
            return Ok(QuadExt { a: &a + &b, b: Rational::zero(), d: 1 });
        }
        let (s, d0) = squarefree_decompose(&BigInt::from(d))?;
        let b = &b * &Rational::from_big(s, BigInt::one())?;
        if d0 == 1 {
            Ok(QuadExt { a: &a + &b, b: Rational::zero(), d: 1 })
        } else {
            Ok(QuadExt { a, b, d: d0 })
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// The radicand both operands can live over, or an error when they are
    /// genuinely incompatible (both irrational with different `d`).
    fn unify_d(&self, other: &Self) -> Result<i64, ExactError> {
        if self.d == other.d {
            Ok(self.d)
        } else if self.b.is_zero() {
            Ok(other.d)
        } else if other.b.is_zero() {
            Ok(self.d)
        } else {
            Err(ExactError::IncompatibleRadicand(self.d, other.d))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.unify_d(other)?;
        Ok(QuadExt::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.unify_d(other)?;
        Ok(QuadExt::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    /// Exact product `(a₁a₂ + b₁b₂d) + (a₁b₂ + a₂b₁)√d`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.unify_d(other)?;
        let dd = Rational::from_int(d);
        let a = &(&self.a * &other.a) + &(&(&self.b * &other.b) * &dd);
        let b = &(&self.a * &other.b) + &(&self.b * &other.a);
        Ok(QuadExt::canonical(a, b, d))
    }

    /// Division via conjugate multiplication; errors when `other` is zero.
    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inverse()?)
    }

    /// `1/(a + b√d) = (a − b√d)/(a² − b²d)`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rational::from_int(self.d));
        if norm.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = norm.recip()?;
        Ok(QuadExt::canonical(&self.a * &inv, &(-&self.b) * &inv, self.d))
    }

    /// Same-field square `(a² + b²d) + 2ab√d`; never fails.
    pub fn square(&self) -> Self {
        self.try_mul(self).expect("squaring shares the radicand")
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::canonical(self.a.clone(), -&self.b, self.d)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt::canonical(&self.a * r, &self.b * r, self.d)
    }

    /// Exact sign of the represented real number: −1, 0, or 1.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Signs differ: compare a² against b²·d.
        let a2 = &self.a * &self.a;
        let b2d = &(&self.b * &self.b) * &Rational::from_int(self.d);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0, // impossible for squarefree d > 1
        }
    }

    /// Exact ordering of the represented reals; requires compatible radicands.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ExactError> {
        let diff = self.try_sub(other)?;
        Ok(match diff.signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Equality of represented reals even across radicands (values over
    /// distinct squarefree radicands are never equal unless both rational).
    pub fn eq_real(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// Floating-point approximation for display.
    pub fn approx(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    /// Exact square root within a quadratic extension.
    ///
    /// For rational input this is [`sqrt_rational`]; for genuinely irrational
    /// input `a + b√d` it succeeds only when the root stays in ℚ(√d)
    /// (the nested radical denests), otherwise `NotRepresentable`.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        if self.signum() < 0 {
            return Err(ExactError::NegativeInput);
        }
        if let Some(r) = self.as_rational() {
            return sqrt_rational(r);
        }
        // Want (p + q√d)² = a + b√d: p² + q²d = a, 2pq = b. Then p² solves
        // t² − a·t + b²d/4 = 0, so the inner discriminant a² − b²d must be a
        // rational square, and so must one of the two roots t.
        let d_rat = Rational::from_int(self.d);
        let inner = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &d_rat);
        let inner_root = match sqrt_rational(&inner.abs()) {
            Ok(r) if inner.signum() >= 0 && r.is_rational() => r.a().clone(),
            _ => return Err(ExactError::NotRepresentable),
        };
        let half = Rational::ratio(1, 2);
        for t in [&(&self.a + &inner_root) * &half, &(&self.a - &inner_root) * &half] {
            if t.is_negative() {
                continue;
            }
            if let Ok(p_root) = sqrt_rational(&t) {
                if let Some(p) = p_root.as_rational() {
                    if p.is_zero() {
                        continue;
                    }
                    let q = &self.b / &(&Rational::from_int(2) * p);
                    let cand = QuadExt::canonical(p.clone(), q, self.d);
                    if cand.square() == *self && cand.signum() >= 0 {
                        return Ok(cand);
                    }
                    let cand = QuadExt::canonical(-p, -cand.b, self.d);
                    if cand.square() == *self && cand.signum() >= 0 {
                        return Ok(cand);
                    }
                }
            }
        }
        Err(ExactError::NotRepresentable)
    }

    // Internal constructor for values already over a squarefree d.
    fn canonical(a: Rational, b: Rational, d: i64) -> Self {
        debug_assert!(d >= 1);
        if b.is_zero() {
            QuadExt { a, b, d: 1 }
        } else {
            QuadExt { a, b, d }
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::canonical(-&self.a, -&self.b, self.d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sqrt_part = |b: &Rational| {
            if b == &Rational::one() {
                format!("sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", b, self.d)
            }
        };
        if self.a.is_zero() {
            write!(f, "{}", sqrt_part(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, sqrt_part(&self.b.abs()))
        } else {
            write!(f, "{} + {}", self.a, sqrt_part(&self.b))
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtWire {
    a: Rational,
    b: Rational,
    d: i64,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadExtWire { a: self.a.clone(), b: self.b.clone(), d: self.d }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = QuadExtWire::deserialize(deserializer)?;
        QuadExt::new(wire.a, wire.b, wire.d).map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Exact square root of a non-negative rational, as `r·√d` with `d` squarefree.
pub fn sqrt_rational(q: &Rational) -> Result<QuadExt, ExactError> {
    if q.is_negative() {
        return Err(ExactError::NegativeInput);
    }
    if q.is_zero() {
        return Ok(QuadExt::zero());
    }
    // √(p/q) = √(p·q)/q.
    let prod = q.numer() * q.denom();
    let (s, d) = squarefree_decompose(&prod)?;
    let r = Rational::from_big(s, q.denom().clone())?;
    if d == 1 {
        Ok(QuadExt::from_rational(r))
    } else {
        Ok(QuadExt::canonical(Rational::zero(), r, d))
    }
}

/// Exact product of two quadratic-extension values (compatible radicands).
pub fn quad_mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, ExactError> {
    x.try_mul(y)
}

/// Exact ordering of two quadratic-extension values (compatible radicands).
pub fn quad_compare_real(x: &QuadExt, y: &QuadExt) -> Result<Ordering, ExactError> {
    x.compare(y)
}

/// A complex number whose real and imaginary parts are exact [`QuadExt`]
/// values. Closed under `+`, `−`, `×` for compatible radicands.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexQuad {
    pub re: QuadExt,
    pub im: QuadExt,
}

impl ComplexQuad {
    pub fn new(re: QuadExt, im: QuadExt) -> Self {
        ComplexQuad { re, im }
    }

    pub fn from_real(re: QuadExt) -> Self {
        ComplexQuad { re, im: QuadExt::zero() }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_real(QuadExt::from_rational(r))
    }

    pub fn zero() -> Self {
        Self::from_real(QuadExt::zero())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(ComplexQuad { re: self.re.try_add(&other.re)?, im: self.im.try_add(&other.im)? })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(ComplexQuad { re: self.re.try_sub(&other.re)?, im: self.im.try_sub(&other.im)? })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let re = self.re.try_mul(&other.re)?.try_sub(&self.im.try_mul(&other.im)?)?;
        let im = self.re.try_mul(&other.im)?.try_add(&self.im.try_mul(&other.re)?)?;
        Ok(ComplexQuad { re, im })
    }

    pub fn conjugate(&self) -> Self {
        ComplexQuad { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexQuad { re: self.re.scale(r), im: self.im.scale(r) }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.re.approx(), self.im.approx())
    }
}

impl Neg for &ComplexQuad {
    type Output = ComplexQuad;
    fn neg(self) -> ComplexQuad {
        ComplexQuad { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*i", self.im)
        } else {
            write!(f, "({}) + ({})*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn rational_lowest_terms_and_sign() {
        let x = r(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!("-3/2".parse::<Rational>().unwrap(), r(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        assert_eq!("0".parse::<Rational>().unwrap(), Rational::zero());
        assert_eq!("4/6".parse::<Rational>().unwrap(), r(2, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (1 + √2)(1 − √2) = −1.
        let x = QuadExt::new(r(1, 1), r(1, 1), 2).unwrap();
        let y = x.conjugate();
        let p = quad_mul(&x, &y).unwrap();
        assert_eq!(p, QuadExt::from_int(-1));
    }

    #[test]
    fn quarter_sqrt2_squares_to_eighth() {
        // (¼√2)² = 1/8, the half-sum norm for the n = 1 real hyperbolic case.
        let x = QuadExt::new(Rational::zero(), r(1, 4), 2).unwrap();
        assert_eq!(x.square(), QuadExt::from_rational(r(1, 8)));
    }

    #[test]
    fn rational_scaling_keeps_radicand() {
        let x = QuadExt::from_int(3);
        let y = QuadExt::new(Rational::zero(), r(2, 1), 5).unwrap();
        let p = quad_mul(&x, &y).unwrap();
        assert_eq!(p, QuadExt::new(Rational::zero(), r(6, 1), 5).unwrap());
    }

    #[test]
    fn sqrt_rational_examples() {
        assert_eq!(sqrt_rational(&r(1, 4)).unwrap(), QuadExt::from_rational(r(1, 2)));
        let s = sqrt_rational(&r(1, 8)).unwrap();
        assert_eq!(s, QuadExt::new(Rational::zero(), r(1, 4), 2).unwrap());
        assert_eq!(s.square(), QuadExt::from_rational(r(1, 8)));
        assert_eq!(sqrt_rational(&Rational::zero()).unwrap(), QuadExt::zero());
        assert!(sqrt_rational(&r(-1, 4)).is_err());
    }

    #[test]
    fn radicand_normalization() {
        // √12 = 2√3: constructing over d = 12 normalizes to d = 3.
        let x = QuadExt::new(Rational::zero(), Rational::one(), 12).unwrap();
        assert_eq!(x.d(), 3);
        assert_eq!(x.b(), &r(2, 1));
        // Perfect-square radicand folds into the rational part.
        let y = QuadExt::new(r(1, 1), r(3, 1), 4).unwrap();
        assert!(y.is_rational());
        assert_eq!(y.as_rational().unwrap(), &r(7, 1));
    }

    #[test]
    fn comparisons_are_exact() {
        // ¼√2 vs 1/3 cross-multiplies to 3√2 vs 4, i.e. 18 vs 16.
        let quarter_sqrt2 = QuadExt::new(Rational::zero(), r(1, 4), 2).unwrap();
        let third = QuadExt::from_rational(r(1, 3));
        assert_eq!(quad_compare_real(&quarter_sqrt2, &third).unwrap(), Ordering::Greater);
        // ¼√2 vs 3/8 cross-multiplies to 2√2 vs 3, i.e. 8 vs 9.
        let three_eighths = QuadExt::from_rational(r(3, 8));
        assert_eq!(quad_compare_real(&quarter_sqrt2, &three_eighths).unwrap(), Ordering::Less);
        assert_eq!(quad_compare_real(&third, &third).unwrap(), Ordering::Equal);
        let x = QuadExt::new(r(-1, 1), r(1, 1), 2).unwrap();
        assert_eq!(quad_compare_real(&x, &QuadExt::zero()).unwrap(), Ordering::Greater);
    }

    #[test]
    fn incompatible_radicands_error() {
        let x = QuadExt::new(Rational::zero(), r(1, 1), 2).unwrap();
        let y = QuadExt::new(Rational::zero(), r(1, 1), 3).unwrap();
        assert!(matches!(x.try_add(&y), Err(ExactError::IncompatibleRadicand(2, 3))));
        assert!(matches!(quad_mul(&x, &y), Err(ExactError::IncompatibleRadicand(2, 3))));
        assert!(!x.eq_real(&y));
    }

    #[test]
    fn division_by_zero_raises() {
        let x = QuadExt::from_int(1);
        assert!(matches!(x.try_div(&QuadExt::zero()), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn quadext_sqrt_denests() {
        // (1 + ¼√2)² = 9/8 + ½√2 must take its root back.
        let lam = QuadExt::new(r(1, 1), r(1, 4), 2).unwrap();
        let sq = lam.square();
        assert_eq!(sq.sqrt().unwrap(), lam);
        // √(1 + √2) does not live in ℚ(√2).
        let bad = QuadExt::new(r(1, 1), r(1, 1), 2).unwrap();
        assert!(matches!(bad.sqrt(), Err(ExactError::NotRepresentable)));
    }

    #[test]
    fn json_round_trip() {
        let x = QuadExt::new(r(-1, 3), r(5, 7), 6).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-1/3","b":"5/7","d":6}"#);
        let back: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let z = ComplexQuad::new(x.clone(), QuadExt::zero());
        let s = serde_json::to_string(&z).unwrap();
        let back: ComplexQuad = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn complex_multiplication() {
        // (1 + i)(1 − i) = 2.
        let x = ComplexQuad::new(QuadExt::one(), QuadExt::one());
        let p = x.try_mul(&x.conjugate()).unwrap();
        assert_eq!(p, ComplexQuad::from_rational(r(2, 1)));
    }
}
