//! Exact kernel spaces of the tangent map.
//!
//! For monic `f` of degree `n`, `W(f)` is the space of `p` with
//! `deg p ≤ n − 2` such that `f″p − f′p′ ≡ 0 (mod f)`; the extended kernel
//! allows `deg p ≤ n − 1` and always contains `f′`. Both are computed as exact
//! null spaces of the linear map `p ↦ (f″p − f′p′) mod f` in the monomial
//! basis. [`verify_thm_algebra`] then checks every structural consequence that
//! a nonzero `W(f)` must have.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::{certified_roots, jac_coeff, JacobianError};
use crate::linalg::{null_space, singular_values};
use crate::poly::{Degree, Poly, PolyError};
use crate::roots::RootConfig;
use crate::scalar::{char_guard, ComplexFloats, Field, GaussianRational, GaussianRationals};
use crate::serde_cx::CMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("characteristic {p} does not exceed degree {n}")]
    CharacteristicGuard { p: u64, n: usize },
    #[error("polynomial must be monic of degree at least 2")]
    BadPolynomial,
    #[error("polynomial has a multiple root; the multiplier map is undefined there")]
    NotSquareFree,
    #[error("operation needs an exact domain, got {0}")]
    UnsupportedDomain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThmCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ThmChecks {
    pub checks: Vec<ThmCheck>,
    /// Quadratic `p̃` with `p̃² | f`, coefficients constant term first, when
    /// one is found without factoring.
    pub quadratic_witness: Option<Vec<String>>,
    /// Scalar `c` with `f = c·p²` in degree four.
    pub scalar_witness: Option<String>,
}

impl ThmChecks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(ThmCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&ThmCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&ThmCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport<E> {
    pub field: String,
    pub n: usize,
    pub f: Poly<E>,
    pub w_basis: Vec<Poly<E>>,
    pub w_dim: usize,
    pub extended_basis: Vec<Poly<E>>,
    pub thm_checks: ThmChecks,
}

/// Serializable form of a [`KernelReport`]; exact scalars are strings in the
/// domain's text grammar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReportDoc {
    pub field: String,
    pub n: usize,
    pub f: Vec<String>,
    pub w_basis: Vec<Vec<String>>,
    pub w_dim: usize,
    pub extended_basis: Vec<Vec<String>>,
    pub extended_dim: usize,
    pub thm_checks: ThmChecks,
}

impl<E: Clone + PartialEq + std::fmt::Debug> KernelReport<E> {
    pub fn to_doc<F: Field<Elem = E>>(&self, k: &F) -> KernelReportDoc {
        KernelReportDoc {
            field: self.field.clone(),
            n: self.n,
            f: self.f.to_coeff_strings(k),
            w_basis: self.w_basis.iter().map(|p| p.to_coeff_strings(k)).collect(),
            w_dim: self.w_dim,
            extended_basis: self.extended_basis.iter().map(|p| p.to_coeff_strings(k)).collect(),
            extended_dim: self.extended_basis.len(),
            thm_checks: self.thm_checks.clone(),
        }
    }
}

fn check_input<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<usize, KernelError> {
    let n = match f.degree() {
        Degree::Finite(n) if n >= 2 && f.is_monic(k) => n,
        _ => return Err(KernelError::BadPolynomial),
    };
    let p = k.characteristic();
    if p != 0 && !char_guard(p, n) {
        return Err(KernelError::CharacteristicGuard { p, n });
    }
    Ok(n)
}

/// Matrix of `p ↦ (f″p − f′p′) mod f` on polynomials of degree `≤ max_deg`:
/// column `j` holds the coefficients of `R(f, x^j) mod f`, rows run over
/// `x^0 … x^{n−1}`.
pub fn divisibility_matrix<F: Field>(f: &Poly<F::Elem>, max_deg: usize, k: &F) -> Result<Vec<Vec<F::Elem>>, KernelError> {
    let n = f.degree().finite().ok_or(KernelError::BadPolynomial)?;
    let cols: Vec<Poly<F::Elem>> = (0..=max_deg)
        .map(|j| f.bracket(&Poly::monomial(k.one(), j, k), k).rem(f, k))
        .collect::<Result<_, _>>()?;
    Ok((0..n)
        .map(|row| cols.iter().map(|c| c.coeff(row, k)).collect())
        .collect())
}

/// Echelon basis of `{p : deg p ≤ max_deg, f | f″p − f′p′}`: every element
/// is monic, leading degrees are distinct, and no element has a nonzero
/// coefficient at another element's leading degree.
pub fn kernel_basis<F: Field>(f: &Poly<F::Elem>, max_deg: usize, k: &F) -> Result<Vec<Poly<F::Elem>>, KernelError> {
    if !k.is_exact() {
        return Err(KernelError::UnsupportedDomain(k.name()));
    }
    let a = divisibility_matrix(f, max_deg, k)?;
    Ok(null_space(&a, max_deg + 1, k)
        .into_iter()
        .map(|v| Poly::new(v, k))
        .collect())
}

/// True iff `v` lies in the span of an echelon basis from [`kernel_basis`].
pub fn in_span<F: Field>(v: &Poly<F::Elem>, basis: &[Poly<F::Elem>], k: &F) -> bool {
    let mut r = v.clone();
    let mut sorted: Vec<&Poly<F::Elem>> = basis.iter().collect();
    sorted.sort_by_key(|b| std::cmp::Reverse(b.degree()));
    for b in sorted {
        let Some(d) = b.degree().finite() else { continue };
        let c = r.coeff(d, k);
        if !k.is_zero(&c) {
            let lead = b.leading().expect("nonzero basis element");
            let factor = k.div(&c, lead).expect("nonzero leading coefficient");
            r = r.sub(&b.scale(&factor, k), k);
        }
    }
    r.is_zero()
}

pub fn w_space<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<KernelReport<F::Elem>, KernelError> {
    let n = check_input(f, k)?;
    let w_basis = kernel_basis(f, n - 2, k)?;
    let extended_basis = kernel_basis(f, n - 1, k)?;
    let mut thm_checks = verify_thm_algebra(f, &w_basis, k)?;
    let fp = f.derivative(k);
    thm_checks.push(
        "extended-contains-derivative",
        in_span(&fp, &extended_basis, k),
        "f′ lies in the extended kernel",
    );
    thm_checks.push(
        "dimension-law",
        extended_basis.len() == 1 + w_basis.len(),
        format!("extended dim {} = 1 + w_dim {}", extended_basis.len(), w_basis.len()),
    );
    Ok(KernelReport {
        field: k.name(),
        n,
        f: f.clone(),
        w_dim: w_basis.len(),
        w_basis,
        extended_basis,
        thm_checks,
    })
}

pub fn extended_kernel<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Vec<Poly<F::Elem>>, KernelError> {
    let n = check_input(f, k)?;
    kernel_basis(f, n - 1, k)
}

fn deg(p: &Poly<impl Clone + PartialEq + std::fmt::Debug>) -> usize {
    p.degree().finite().unwrap_or(0)
}

/// Checks the structure forced by a nonzero `W(f)`:
///
/// * (i) `n ≥ 4` and every nonzero element has degree `≥ 2`;
/// * (ii) `f` has a multiple root, and the square part of its Yun
///   decomposition has degree `≥ 2` (a quadratic `p̃` with `p̃² | f`);
/// * (iii) every quadratic `p ∈ W` divides `f` and `f′`, with
///   `R(f, p) = n(n−3)·f` and `f‴·p = (n−1)(n−2)·f′`;
/// * (iv) in degree four every element is quadratic and `f = c·p²`.
///
/// Membership of every basis element is re-verified by exact division.
pub fn verify_thm_algebra<F: Field>(f: &Poly<F::Elem>, w_basis: &[Poly<F::Elem>], k: &F) -> Result<ThmChecks, KernelError> {
    let n = check_input(f, k)?;
    let mut out = ThmChecks::default();

    let members_ok = w_basis
        .iter()
        .map(|q| Ok(f.bracket(q, k).rem(f, k)?.is_zero() && q.degree() <= Degree::Finite(n - 2)))
        .collect::<Result<Vec<bool>, PolyError>>()?
        .into_iter()
        .all(|b| b);
    out.push("membership", members_ok, "f divides f″q − f′q′ for every basis element q");

    if w_basis.is_empty() {
        out.push("vacuous", true, "W(f) = 0");
        return Ok(out);
    }

    // (i)
    out.push("i-degree-n", n >= 4, format!("n = {n} ≥ 4"));
    let min_deg = w_basis.iter().map(deg).min().unwrap_or(0);
    out.push("i-degree-p", min_deg >= 2, format!("smallest element degree {min_deg} ≥ 2"));

    // (ii)
    let fp = f.derivative(k);
    let g = f.gcd_monic(&fp, k)?;
    out.push(
        "ii-multiple-root",
        g.degree() > Degree::Finite(0),
        format!("deg gcd(f, f′) = {}", g.degree()),
    );
    let sqf = f.yun_squarefree(k)?;
    let square_part = sqf
        .iter()
        .fold(Poly::one(k), |acc, (s, i)| acc.mul(&s.pow((*i / 2) as u32, k), k));
    out.push(
        "ii-square-part",
        square_part.degree() >= Degree::Finite(2),
        format!("deg m = {} ≥ 2 where m² | f", square_part.degree()),
    );
    if let Some(w) = quadratic_witness(&sqf, &square_part, k) {
        let divides = w.pow(2, k).divides(f, k)?;
        out.push("ii-witness", divides, format!("p̃ = {} with p̃² | f", w.pretty(k)));
        out.quadratic_witness = Some(w.to_coeff_strings(k));
    }

    // (iii)
    let d3 = fp.nth_derivative(2, k);
    let ni = n as i64;
    for p in w_basis.iter().filter(|p| deg(p) == 2) {
        let name = p.pretty(k);
        out.push("iii-divides-f", p.divides(f, k)?, format!("{name} | f"));
        out.push("iii-divides-df", p.divides(&fp, k)?, format!("{name} | f′"));
        let lhs = f.bracket(p, k);
        let rhs = f.scale(&k.from_i64(ni * (ni - 3)), k);
        out.push("iii-bracket-identity", lhs == rhs, format!("R(f, {name}) = {}·f", ni * (ni - 3)));
        let lhs = d3.mul(p, k);
        let rhs = fp.scale(&k.from_i64((ni - 1) * (ni - 2)), k);
        out.push(
            "iii-third-derivative-identity",
            lhs == rhs,
            format!("f‴·({name}) = {}·f′", (ni - 1) * (ni - 2)),
        );
    }

    // (iv)
    if n == 4 {
        let all_quadratic = w_basis.iter().all(|p| deg(p) == 2);
        out.push("iv-quadratic", all_quadratic, "every element of W has degree 2");
        for p in w_basis {
            let (q, r) = f.divrem(&p.pow(2, k), k)?;
            let ok = r.is_zero() && q.degree() == Degree::Finite(0);
            let detail = if ok {
                let c = q.coeff(0, k);
                out.scalar_witness = Some(k.format(&c));
                format!("f = {}·({})²", k.format(&c), p.pretty(k))
            } else {
                format!("f is not a scalar multiple of ({})²", p.pretty(k))
            };
            out.push("iv-square", ok, detail);
        }
    }
    Ok(out)
}

/// A quadratic `p̃` with `p̃² | f` read off the square-free decomposition, if
/// one is available without factoring: the square part itself when it is
/// quadratic, a quadratic `s_i` with `i ≥ 2`, `s_i²` for a linear `s_i` with
/// `i ≥ 4`, or a product of two linear `s_i, s_j` with `i, j ≥ 2`.
fn quadratic_witness<F: Field>(sqf: &[(Poly<F::Elem>, usize)], square_part: &Poly<F::Elem>, k: &F) -> Option<Poly<F::Elem>> {
    if deg(square_part) == 2 {
        return Some(square_part.clone());
    }
    if let Some((s, _)) = sqf.iter().find(|(s, i)| *i >= 2 && deg(s) == 2) {
        return Some(s.clone());
    }
    if let Some((s, _)) = sqf.iter().find(|(s, i)| *i >= 4 && deg(s) == 1) {
        return Some(s.pow(2, k));
    }
    let linear: Vec<_> = sqf.iter().filter(|(s, i)| *i >= 2 && deg(s) == 1).collect();
    if linear.len() >= 2 {
        return Some(linear[0].0.mul(&linear[1].0, k));
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRelation {
    pub n: usize,
    pub exact_w_dim: usize,
    pub numeric_rank: usize,
}

impl RankRelation {
    /// `numeric_rank = (n − 1) − w_dim`.
    pub fn holds(&self) -> bool {
        self.numeric_rank + self.exact_w_dim + 1 == self.n
    }
}

/// Exact `dim W(f)` over ℚ(i) next to the numerical rank of the
/// coefficient-space Jacobian on the floating-point shadow of `f`.
pub fn rank_relation(f: &Poly<GaussianRational>, cfg: &RootConfig, rank_tol: f64) -> Result<RankRelation, KernelError> {
    let k = GaussianRationals;
    let n = check_input(f, &k)?;
    if f.gcd_monic(&f.derivative(&k), &k)?.degree() != Degree::Finite(0) {
        return Err(KernelError::NotSquareFree);
    }
    let report = w_space(f, &k)?;
    let shadow = f.map(&ComplexFloats, |c| c.to_complex());
    let rs = certified_roots(&shadow, cfg)?;
    let jac = jac_coeff(&shadow, &rs, rank_tol)?;
    Ok(RankRelation {
        n,
        exact_w_dim: report.w_dim,
        numeric_rank: jac.numerical_rank,
    })
}

/// Nullity of the floating-point divisibility system on `deg ≤ n − 2`:
/// the number of its `n − 1` singular values at or below `tol · σ_max`.
pub fn float_divisibility_nullity(f: &Poly<Complex64>, tol: f64) -> Result<usize, KernelError> {
    let k = ComplexFloats;
    let n = match f.degree() {
        Degree::Finite(n) if n >= 2 && f.is_monic(&k) => n,
        _ => return Err(KernelError::BadPolynomial),
    };
    let rows = divisibility_matrix(f, n - 2, &k)?;
    let m = CMatrix::from_fn(n, n - 1, |i, j| rows[i][j]);
    let s = singular_values(&m);
    let smax = s.first().copied().unwrap_or(0.0);
    Ok(s.iter().filter(|&&x| x <= tol * smax || smax == 0.0).count())
}
