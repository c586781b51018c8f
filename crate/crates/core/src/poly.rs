//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored constant term first with no trailing zeros, so the
//! zero polynomial is the empty vector and its degree is
//! [`Degree::MinusInfinity`]. Every operation takes the field context by
//! reference; polynomials themselves are plain values.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("operation needs an exact domain, got {0}")]
    UnsupportedDomain(String),
    #[error("characteristic {p} does not exceed degree {n}")]
    CharacteristicGuard { p: u64, n: usize },
    #[error("empty coefficient list")]
    Empty,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Poly<E> {
    pub fn new<F: Field<Elem = E>>(mut coeffs: Vec<E>, k: &F) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, k: &F) -> Self {
        Poly::new(vec![c], k)
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Poly::constant(k.one(), k)
    }

    /// `c·x^d`.
    pub fn monomial<F: Field<Elem = E>>(c: E, d: usize, k: &F) -> Self {
        let mut v = vec![k.zero(); d];
        v.push(c);
        Poly::new(v, k)
    }

    pub fn from_ints<F: Field<Elem = E>>(coeffs: &[i64], k: &F) -> Self {
        Poly::new(coeffs.iter().map(|&c| k.from_i64(c)).collect(), k)
    }

    /// Monic `x^n + a_{n−1}x^{n−1} + … + a_0` from `a = (a_0, …, a_{n−1})`.
    pub fn monic_from_lower<F: Field<Elem = E>>(lower: &[E], k: &F) -> Self {
        let mut v = lower.to_vec();
        v.push(k.one());
        Poly::new(v, k)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, k: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.leading().is_some_and(|c| k.is_one(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, k)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        self.add(&other.neg(k), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| k.mul(a, c)).collect(), k)
    }

    /// Schoolbook product.
    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Poly::new(v, k)
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: u32, k: &F) -> Self {
        (0..e).fold(Poly::one(k), |acc, _| acc.mul(self, k))
    }

    /// Multiplication by `x^s`.
    pub fn shift_up(&self, s: usize, zero: E) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![zero; s];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `f′`; the integer multipliers go through the field, so they reduce
    /// modulo the characteristic.
    pub fn derivative<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
            .collect();
        Poly::new(v, k)
    }

    pub fn nth_derivative<F: Field<Elem = E>>(&self, order: usize, k: &F) -> Self {
        (0..order).fold(self.clone(), |acc, _| acc.derivative(k))
    }

    /// Division with remainder: `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn divrem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<(Self, Self), PolyError> {
        let Some(lead) = divisor.leading() else {
            return Err(PolyError::ZeroDivisor);
        };
        let lead_inv = k.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = k.mul(&rem[i + dd], &lead_inv);
            if !k.is_zero(&c) {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, b));
                }
            }
            // Exact zero, even in floating point.
            rem[i + dd] = k.zero();
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot, k), Poly::new(rem, k)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self, PolyError> {
        Ok(self.divrem(divisor, k)?.1)
    }

    pub fn divides<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<bool, PolyError> {
        Ok(other.rem(self, k)?.is_zero())
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn make_monic<F: Field<Elem = E>>(&self, k: &F) -> Result<Self, PolyError> {
        match self.leading() {
            None => Ok(Poly::zero()),
            Some(c) => Ok(self.scale(&k.inv(c)?, k)),
        }
    }

    /// Monic gcd by Euclid's algorithm; exact domains only.
    pub fn gcd_monic<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<Self, PolyError> {
        if !k.is_exact() {
            return Err(PolyError::UnsupportedDomain(k.name()));
        }
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k)?;
            a = b;
            b = r;
        }
        a.make_monic(k)
    }

    /// Yun's square-free decomposition of the monic part of `self`.
    ///
    /// Returns `(s_i, i)` for every nonconstant `s_i`, with
    /// `monic(self) = ∏ s_i^i` and the `s_i` square-free, monic and pairwise
    /// coprime.
    pub fn yun_squarefree<F: Field<Elem = E>>(&self, k: &F) -> Result<Vec<(Self, usize)>, PolyError> {
        if !k.is_exact() {
            return Err(PolyError::UnsupportedDomain(k.name()));
        }
        let n = match self.degree() {
            Degree::MinusInfinity => return Err(PolyError::ZeroDivisor),
            Degree::Finite(n) => n,
        };
        let p = k.characteristic();
        if p != 0 && !crate::scalar::char_guard(p, n) {
            return Err(PolyError::CharacteristicGuard { p, n });
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let f = self.make_monic(k)?;
        let df = f.derivative(k);
        let a0 = f.gcd_monic(&df, k)?;
        let mut b = f.divrem(&a0, k)?.0;
        let c = df.divrem(&a0, k)?.0;
        let mut d = c.sub(&b.derivative(k), k);
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > Degree::Finite(0) {
            let a = b.gcd_monic(&d, k)?;
            b = b.divrem(&a, k)?.0;
            let c = d.divrem(&a, k)?.0;
            d = c.sub(&b.derivative(k), k);
            if a.degree() > Degree::Finite(0) {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// `R(f, p) = f″·p − f′·p′`.
    pub fn bracket<F: Field<Elem = E>>(&self, p: &Self, k: &F) -> Self {
        let d1 = self.derivative(k);
        let d2 = d1.derivative(k);
        d2.mul(p, k).sub(&d1.mul(&p.derivative(k), k), k)
    }

    /// Horner evaluation.
    pub fn eval<F: Field<Elem = E>>(&self, x: &E, k: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn eval_batch<F: Field<Elem = E>>(&self, points: &[E], k: &F) -> Vec<E> {
        points.iter().map(|x| self.eval(x, k)).collect()
    }

    /// `f(x + eps)`.
    pub fn taylor_shift<F: Field<Elem = E>>(&self, eps: &E, k: &F) -> Self {
        let lin = Poly::new(vec![eps.clone(), k.one()], k);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(&lin, k).add(&Poly::constant(c.clone(), k), k))
    }

    pub fn map<G: Field>(&self, g: &G, f: impl Fn(&E) -> G::Elem) -> Poly<G::Elem> {
        Poly::new(self.coeffs.iter().map(f).collect(), g)
    }

    /// Comma-separated coefficients, constant term first.
    pub fn parse_coeff_list<F: Field<Elem = E>>(text: &str, k: &F) -> Result<Self, PolyError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(PolyError::Empty);
        }
        let v = t
            .split(',')
            .map(|s| k.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(v, k))
    }

    pub fn to_coeff_list<F: Field<Elem = E>>(&self, k: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| k.format(c)).collect::<Vec<_>>().join(",")
    }

    pub fn to_coeff_strings<F: Field<Elem = E>>(&self, k: &F) -> Vec<String> {
        self.coeffs.iter().map(|c| k.format(c)).collect()
    }

    /// Human-readable form such as `x^4 - 2x^2 + 1`.
    pub fn pretty<F: Field<Elem = E>>(&self, k: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let text = k.format(c);
            let body = text.strip_prefix('-').unwrap_or(&text);
            let compound = body.contains(['+', '-']);
            let (negative, body) = if compound {
                (false, format!("({text})"))
            } else {
                (text.starts_with('-'), body.to_string())
            };
            let coef = match (i, body.as_str()) {
                (0, _) => body.clone(),
                (_, "1") => String::new(),
                _ => body.clone(),
            };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&coef);
            out.push_str(&mono);
        }
        out
    }
}
