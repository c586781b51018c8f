//! Scalar domains.
//!
//! Exact domains (ℚ, ℚ(i), F_p) and double-precision complex numbers all sit
//! behind the [`Field`] trait. A field value is a small context object that
//! knows how to build and combine its elements; for F_p the modulus lives in
//! the context and in every element, so one binary covers every prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("mismatched prime-field moduli {0} and {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("non-finite complex value")]
    NonFinite,
    #[error("cannot parse {text:?} as {domain}")]
    Parse { text: String, domain: &'static str },
}

/// Field operations over a runtime-described domain.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical ring map ℤ → K.
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Exact domains support gcd, square-free decomposition and exact null spaces.
    fn is_exact(&self) -> bool;
    /// Short human-readable name such as `Q`, `Q(i)` or `F_101`.
    fn name(&self) -> String;

    fn parse(&self, text: &str) -> Result<Self::Elem, ScalarError>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Floating-point shadow of an element; `None` when the domain has no
    /// embedding into ℂ.
    fn to_complex(&self, _a: &Self::Elem) -> Option<Complex64> {
        None
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// True iff the characteristic `p` exceeds the degree `n`.
///
/// Divisibility arguments on `f″p − f′p′` need every integer up to `n` to be
/// invertible, so checks over F_p must be refused when this is false.
pub fn char_guard(p: u64, n: usize) -> bool {
    p > n as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Rationals

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        // Ratio::new reduces and moves the sign to the numerator.
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
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

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInverse);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

/// Canonical rational `n/d`.
pub fn normalize_rational(n: i64, d: i64) -> Result<Rational, ScalarError> {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
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
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse {
            text: s.to_string(),
            domain: "rational",
        };
        let t = s.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let valid = |x: &str| {
            let digits = x.strip_prefix('-').unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num) || !valid(den) {
            return Err(err());
        }
        let n: BigInt = num.parse().map_err(|_| err())?;
        let d: BigInt = den.parse().map_err(|_| err())?;
        Rational::new(n, d)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ScalarError> {
        a.inverse()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn parse(&self, text: &str) -> Result<Rational, ScalarError> {
        text.parse()
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn to_complex(&self, a: &Rational) -> Option<Complex64> {
        Some(Complex64::new(a.to_f64(), 0.0))
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// Element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::from_int(re), Rational::from_int(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInverse);
        }
        let inv_norm = self.norm_sqr().inverse()?;
        let c = self.conj();
        Ok(GaussianRational::new(&c.re * &inv_norm, &c.im * &inv_norm))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, self.im.abs())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits `a+bi` style text into real and imaginary parts. The imaginary
/// part keeps its sign and has the trailing `i` removed; a bare sign stands
/// for ±1.
fn split_complex(text: &str) -> (Option<&str>, Option<&str>) {
    let t = text.trim();
    let Some(body) = t.strip_suffix('i') else {
        return (Some(t), None);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| {
        (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
    });
    match split {
        Some(k) => (Some(&body[..k]), Some(&body[k..])),
        None => (None, Some(body)),
    }
}

fn unit_imag(text: &str) -> Option<&'static str> {
    match text.trim() {
        "" | "+" => Some("1"),
        "-" => Some("-1"),
        _ => None,
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse {
            text: s.to_string(),
            domain: "Gaussian rational",
        };
        let (re, im) = split_complex(s);
        let re = match re {
            Some(r) => r.parse::<Rational>().map_err(|_| err())?,
            None => Rational::zero(),
        };
        let im = match im {
            Some(t) => unit_imag(t)
                .unwrap_or(t)
                .parse::<Rational>()
                .map_err(|_| err())?,
            None => Rational::zero(),
        };
        Ok(GaussianRational::new(re, im))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GaussianRationals;

impl Field for GaussianRationals {
    type Elem = GaussianRational;

    fn zero(&self) -> GaussianRational {
        GaussianRational::from_ints(0, 0)
    }
    fn one(&self) -> GaussianRational {
        GaussianRational::from_ints(1, 0)
    }
    fn from_i64(&self, n: i64) -> GaussianRational {
        GaussianRational::from_ints(n, 0)
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        -a
    }
    fn inv(&self, a: &GaussianRational) -> Result<GaussianRational, ScalarError> {
        a.inverse()
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        "Q(i)".into()
    }
    fn parse(&self, text: &str) -> Result<GaussianRational, ScalarError> {
        text.parse()
    }
    fn format(&self, a: &GaussianRational) -> String {
        a.to_string()
    }
    fn to_complex(&self, a: &GaussianRational) -> Option<Complex64> {
        Some(a.to_complex())
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// Element of F_p. Carries its modulus; combining elements of different
/// moduli panics through the operator impls and errors through the
/// `checked_*` methods.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        PrimeFieldElement { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn same_modulus(&self, other: &Self) -> Result<u64, ScalarError> {
        if self.modulus != other.modulus {
            Err(ScalarError::ModulusMismatch(self.modulus, other.modulus))
        } else {
            Ok(self.modulus)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let m = self.same_modulus(other)?;
        let v = ((self.value as u128 + other.value as u128) % m as u128) as u64;
        Ok(PrimeFieldElement { value: v, modulus: m })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let m = self.same_modulus(other)?;
        let v = ((self.value as u128 + m as u128 - other.value as u128) % m as u128) as u64;
        Ok(PrimeFieldElement { value: v, modulus: m })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let m = self.same_modulus(other)?;
        let v = ((self.value as u128 * other.value as u128) % m as u128) as u64;
        Ok(PrimeFieldElement { value: v, modulus: m })
    }

    pub fn negate(&self) -> Self {
        let v = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        PrimeFieldElement {
            value: v,
            modulus: self.modulus,
        }
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.value == 0 {
            return Err(ScalarError::ZeroInverse);
        }
        let g = (self.value as i128).extended_gcd(&(self.modulus as i128));
        if g.gcd != 1 {
            return Err(ScalarError::NotPrime(self.modulus));
        }
        let v = g.x.rem_euclid(self.modulus as i128) as u64;
        Ok(PrimeFieldElement {
            value: v,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// The field F_p for a runtime prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField { modulus: p })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement::new(v, self.modulus)
    }

    fn expect(&self, r: Result<PrimeFieldElement, ScalarError>) -> PrimeFieldElement {
        match r {
            Ok(v) => v,
            Err(e) => panic!("F_{}: {e}", self.modulus),
        }
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElement;

    fn zero(&self) -> PrimeFieldElement {
        self.elem(0)
    }
    fn one(&self) -> PrimeFieldElement {
        self.elem(1)
    }
    fn from_i64(&self, n: i64) -> PrimeFieldElement {
        self.elem(n)
    }
    fn add(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect(a.checked_add(b))
    }
    fn sub(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect(a.checked_sub(b))
    }
    fn mul(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect(a.checked_mul(b))
    }
    fn neg(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        a.negate()
    }
    fn inv(&self, a: &PrimeFieldElement) -> Result<PrimeFieldElement, ScalarError> {
        if a.modulus != self.modulus {
            return Err(ScalarError::ModulusMismatch(a.modulus, self.modulus));
        }
        a.inverse()
    }
    fn is_zero(&self, a: &PrimeFieldElement) -> bool {
        a.value == 0
    }
    fn characteristic(&self) -> u64 {
        self.modulus
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        format!("F_{}", self.modulus)
    }
    fn parse(&self, text: &str) -> Result<PrimeFieldElement, ScalarError> {
        let t = text.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        let n: BigInt = t.parse().map_err(|_| ScalarError::Parse {
            text: text.to_string(),
            domain: "prime-field integer",
        })?;
        let r = n.mod_floor(&BigInt::from(self.modulus));
        Ok(self.elem(r.to_i64().expect("reduced value fits")))
    }
    fn format(&self, a: &PrimeFieldElement) -> String {
        a.value.to_string()
    }
}

// ---------------------------------------------------------------------------
// Complex floats

/// Builds a complex number, rejecting NaN and infinities.
pub fn checked_complex(re: f64, im: f64) -> Result<Complex64, ScalarError> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(ScalarError::NonFinite)
    }
}

/// Parses `1.5`, `-2`, `3i`, `0.5-0.25i`, `1e-3+2i`, or a rational like `1/3`.
pub fn parse_complex(text: &str) -> Result<Complex64, ScalarError> {
    let err = || ScalarError::Parse {
        text: text.to_string(),
        domain: "complex number",
    };
    let real = |t: &str| -> Result<f64, ScalarError> {
        let t = t.trim();
        if t.contains('/') {
            return t.parse::<Rational>().map(|r| r.to_f64()).map_err(|_| err());
        }
        let t = t.strip_prefix('+').unwrap_or(t);
        t.parse::<f64>().map_err(|_| err())
    };
    let (re, im) = split_complex(text);
    let re = match re {
        Some(r) => real(r)?,
        None => 0.0,
    };
    let im = match im {
        Some(t) => real(unit_imag(t).unwrap_or(t))?,
        None => 0.0,
    };
    checked_complex(re, im)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComplexFloats;

impl Field for ComplexFloats {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(&self, n: i64) -> Complex64 {
        Complex64::new(n as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Result<Complex64, ScalarError> {
        if a.re == 0.0 && a.im == 0.0 {
            return Err(ScalarError::ZeroInverse);
        }
        let r = a.inv();
        checked_complex(r.re, r.im)
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn name(&self) -> String {
        "C (f64)".into()
    }
    fn parse(&self, text: &str) -> Result<Complex64, ScalarError> {
        parse_complex(text)
    }
    fn format(&self, a: &Complex64) -> String {
        if a.im == 0.0 {
            format!("{}", a.re)
        } else if a.im < 0.0 {
            format!("{}-{}i", a.re, -a.im)
        } else {
            format!("{}+{}i", a.re, a.im)
        }
    }
    fn to_complex(&self, a: &Complex64) -> Option<Complex64> {
        Some(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        normalize_rational(n, d).unwrap()
    }

    #[test]
    fn rational_normal_form() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
        let z = q(0, 7);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(normalize_rational(1, 0), Err(ScalarError::ZeroDenominator));
    }

    #[test]
    fn inverses() {
        assert_eq!(Rationals.inv(&q(2, 3)).unwrap(), q(3, 2));
        let g = GaussianRational::from_ints(1, 1);
        assert_eq!(
            GaussianRationals.inv(&g).unwrap(),
            GaussianRational::new(q(1, 2), q(-1, 2))
        );
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&f7.elem(3)).unwrap(), f7.elem(5));
        assert_eq!(Rationals.inv(&q(0, 1)), Err(ScalarError::ZeroInverse));
        assert_eq!(f7.inv(&f7.elem(0)), Err(ScalarError::ZeroInverse));
        let f11 = PrimeField::new(11).unwrap();
        assert_eq!(
            f7.inv(&f11.elem(3)),
            Err(ScalarError::ModulusMismatch(11, 7))
        );
        assert_eq!(
            f7.elem(1).checked_add(&f11.elem(1)),
            Err(ScalarError::ModulusMismatch(7, 11))
        );
    }

    #[test]
    fn char_guard_boundary() {
        assert!(char_guard(7, 5));
        assert!(!char_guard(5, 5));
        assert!(char_guard(101, 12));
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(9), Err(ScalarError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(ScalarError::NotPrime(1)));
        assert!(PrimeField::new(127).is_ok());
    }

    #[test]
    fn parse_grammar() {
        assert_eq!("3/-6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("-3/6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("+7".parse::<Rational>().unwrap(), q(7, 1));
        assert!("1.5".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());

        let g: GaussianRational = "1/2-3/4i".parse().unwrap();
        assert_eq!(g, GaussianRational::new(q(1, 2), q(-3, 4)));
        let g: GaussianRational = "-i".parse().unwrap();
        assert_eq!(g, GaussianRational::from_ints(0, -1));
        let g: GaussianRational = "2+i".parse().unwrap();
        assert_eq!(g, GaussianRational::from_ints(2, 1));
        let g: GaussianRational = "5/3".parse().unwrap();
        assert_eq!(g, GaussianRational::real(q(5, 3)));
        let g: GaussianRational = "-2/5i".parse().unwrap();
        assert_eq!(g, GaussianRational::new(q(0, 1), q(-2, 5)));
        assert!("1+2".parse::<GaussianRational>().is_err());

        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse("-1").unwrap(), f.elem(6));
        assert_eq!(f.parse("100").unwrap(), f.elem(2));

        assert_eq!(parse_complex("1e-3+2i").unwrap(), Complex64::new(1e-3, 2.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), Complex64::new(0.0, -0.5));
        assert_eq!(parse_complex("1/4").unwrap(), Complex64::new(0.25, 0.0));
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-1/2", "3+1/2i", "1/3-7i", "5i"] {
            let g: GaussianRational = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (small_rational(), small_rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    fn check_axioms<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
        assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
        assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
        assert_eq!(k.mul(a, b), k.mul(b, a));
        assert!(k.is_zero(&k.add(a, &k.neg(a))));
        if !k.is_zero(a) {
            assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            check_axioms(&Rationals, &a, &b, &c);
        }

        #[test]
        fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
            check_axioms(&GaussianRationals, &a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(p in prop::sample::select(vec![2u64, 7, 101, 127, 65521]),
                              a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let k = PrimeField::new(p).unwrap();
            check_axioms(&k, &k.elem(a), &k.elem(b), &k.elem(c));
        }

        #[test]
        fn gaussian_matches_complex_floats(
            (an, ad, bn, bd) in (1i64..1000, 1i64..1000, -1000i64..1000, 1i64..1000),
            (cn, cd, dn, dd) in (1i64..1000, 1i64..1000, -1000i64..1000, 1i64..1000),
        ) {
            let x = GaussianRational::new(q(an, ad), q(bn, bd));
            let y = GaussianRational::new(q(cn, cd), q(dn, dd));
            let (xf, yf) = (x.to_complex(), y.to_complex());
            // Sums are compared against the operand scale since they may cancel.
            for (exact, float, scale) in [
                (&x * &y, xf * yf, xf.norm() * yf.norm()),
                (&x + &y, xf + yf, xf.norm() + yf.norm()),
                (x.inverse().unwrap(), xf.inv(), 1.0 / xf.norm()),
            ] {
                let e = exact.to_complex();
                prop_assert!((e - float).norm() <= 1e-12 * scale);
            }
        }
    }
}
