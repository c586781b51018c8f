//! The multiplier maps and their Jacobians.
//!
//! * `M`: coefficients `(a_0, …, a_{n−1})` of a monic square-free `f` ↦ the
//!   values `f′(α_j)` at the sorted roots.
//! * `M̃`: roots `(α_1, …, α_n)` ↦ `(∏_{j≠i} (α_i − α_j))_i`, the same map in
//!   root coordinates.
//! * `Mult`: a monic `g` with `n` distinct fixed points ↦ the multipliers
//!   `g′(β_j) = M(g − x)_j + 1`.
//!
//! The Jacobian of `M` is computed twice: directly in coefficient space, and
//! as the product of the root-space Jacobian `D` of `M̃` with the root
//! sensitivities `dα/da`. Finite differences give a third, independent route.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{determinant, max_abs, principal_submatrix, singular_values};
use crate::poly::{Degree, Poly};
use crate::roots::{certify_simple, find_roots, RootConfig, RootError, RootSet};
use crate::scalar::{ComplexFloats, Field};
use crate::serde_cx::{row_major, CMatrix};

pub const DEFAULT_RANK_TOL: f64 = 1e-8;
/// Targets farther than this (relative) from `Σ_i ∏_{j≠i} y_j = 0` are refused
/// by [`fiber_solve`].
pub const FIBER_TARGET_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JacobianError {
    #[error("ill-conditioned input: {0}")]
    Conditioning(String),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("coordinates {0} and {1} coincide")]
    Degenerate(usize, usize),
    #[error("polynomial must be monic of degree at least 2")]
    BadPolynomial,
    #[error("rank tolerance must lie in (0, 1), got {0}")]
    BadRankTol(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("target is off the hypersurface (relative residual {0:.3e})")]
    OffHypersurface(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("n must be at least 2, got {0}")]
    Domain(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    CoefficientSpace,
    RootSpace,
}

/// One principal minor of `D` against its closed-form prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorCheck {
    /// 1-based index of the deleted row and column.
    pub index: usize,
    pub value: Complex64,
    pub predicted: Complex64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypersurfaceResidual {
    pub raw: Complex64,
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobianReport {
    #[serde(with = "row_major")]
    pub matrix: CMatrix,
    pub route: Route,
    pub singular_values: Vec<f64>,
    pub numerical_rank: usize,
    pub rank_tol: f64,
    /// `‖J v‖` for the kernel direction: the coefficients of `f′` in
    /// coefficient space, `(1, …, 1)` in root space.
    pub kernel_residual: f64,
    /// `kernel_residual / (σ_1 ‖v‖)`.
    pub kernel_residual_relative: f64,
    pub minors: Vec<MinorCheck>,
    pub hypersurface_residual: HypersurfaceResidual,
}

impl JacobianReport {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// `σ_n / σ_1`, zero for the zero matrix.
    pub fn smallest_ratio(&self) -> f64 {
        match (self.singular_values.first(), self.singular_values.last()) {
            (Some(&s1), Some(&sn)) if s1 > 0.0 => sn / s1,
            _ => 0.0,
        }
    }
}

fn check_monic(f: &Poly<Complex64>) -> Result<usize, JacobianError> {
    match f.degree() {
        Degree::Finite(n) if n >= 2 && f.is_monic(&ComplexFloats) => Ok(n),
        _ => Err(JacobianError::BadPolynomial),
    }
}

/// Roots of `f`, refused unless [`certify_simple`] accepts them.
pub fn certified_roots(f: &Poly<Complex64>, cfg: &RootConfig) -> Result<RootSet, JacobianError> {
    check_monic(f)?;
    let rs = find_roots(f, cfg)?;
    if !certify_simple(&rs, cfg.gap_floor) {
        return Err(JacobianError::Conditioning(format!(
            "roots not certified simple (min gap {:.3e}, gap floor {:.1e})",
            rs.min_gap, cfg.gap_floor
        )));
    }
    Ok(rs)
}

/// `f′` at the given roots.
pub fn multipliers_at(f: &Poly<Complex64>, roots: &[Complex64]) -> Vec<Complex64> {
    f.derivative(&ComplexFloats).eval_batch(roots, &ComplexFloats)
}

/// `M(f)`: `f′` at the sorted roots of `f`.
pub fn m_map(f: &Poly<Complex64>, cfg: &RootConfig) -> Result<Vec<Complex64>, JacobianError> {
    let rs = certified_roots(f, cfg)?;
    Ok(multipliers_at(f, &rs.roots))
}

/// `M̃(α)_i = ∏_{j≠i} (α_i − α_j)`.
pub fn m_tilde(alpha: &[Complex64]) -> Vec<Complex64> {
    (0..alpha.len())
        .map(|i| {
            (0..alpha.len())
                .filter(|&j| j != i)
                .map(|j| alpha[i] - alpha[j])
                .product()
        })
        .collect()
}

/// `g(x) − x`, whose roots are the fixed points of `g`.
pub fn fixed_point_poly(g: &Poly<Complex64>) -> Poly<Complex64> {
    let k = ComplexFloats;
    g.sub(&Poly::monomial(k.one(), 1, &k), &k)
}

/// Multipliers `g′(β_j)` at the sorted fixed points `β_j` of `g`.
pub fn mult_map(g: &Poly<Complex64>, cfg: &RootConfig) -> Result<Vec<Complex64>, JacobianError> {
    check_monic(g)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(m_map(&fixed_point_poly(g), cfg)?
        .into_iter()
        .map(|m| m + one)
        .collect())
}

/// `dα_j/da_i = −α_j^i / f′(α_j)`, rows indexed by root, columns by coefficient.
pub fn alpha_sensitivity(f: &Poly<Complex64>, rs: &RootSet) -> Result<CMatrix, JacobianError> {
    let n = check_monic(f)?;
    expect_len(n, rs.len())?;
    let d1 = multipliers_at(f, &rs.roots);
    let m = DMatrix::from_fn(n, n, |j, i| -rs.roots[j].powu(i as u32) / d1[j]);
    finite(m)
}

/// Coefficient-space Jacobian of `M`:
/// `∂f′(α_j)/∂a_i = i α_j^{i−1} − f″(α_j) α_j^i / f′(α_j)`.
pub fn coefficient_jacobian(f: &Poly<Complex64>, roots: &[Complex64]) -> Result<CMatrix, JacobianError> {
    let n = check_monic(f)?;
    expect_len(n, roots.len())?;
    let k = ComplexFloats;
    let d1 = f.derivative(&k);
    let d2 = d1.derivative(&k);
    let m = DMatrix::from_fn(n, n, |j, i| {
        let a = roots[j];
        let correction = d2.eval(&a, &k) * a.powu(i as u32) / d1.eval(&a, &k);
        let direct = if i == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            a.powu(i as u32 - 1) * i as f64
        };
        direct - correction
    });
    finite(m)
}

/// Root-space Jacobian `D` of `M̃`:
/// `d_ij = −y_i / (α_i − α_j)` for `j ≠ i`, `d_ii = Σ_{j≠i} y_i / (α_i − α_j)`.
pub fn root_jacobian(alpha: &[Complex64]) -> Result<CMatrix, JacobianError> {
    let n = alpha.len();
    for i in 0..n {
        for j in i + 1..n {
            if alpha[i] == alpha[j] {
                return Err(JacobianError::Degenerate(i, j));
            }
        }
    }
    let y = m_tilde(alpha);
    let mut d = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let t = y[i] / (alpha[i] - alpha[j]);
                d[(i, j)] = -t;
                d[(i, i)] += t;
            }
        }
    }
    finite(d)
}

/// `(−1)^{(n−1)(n−2)/2} (n−1)!`.
pub fn rees_constant(n: usize) -> Result<BigInt, JacobianError> {
    if n < 2 {
        return Err(JacobianError::Domain(n));
    }
    let fact = (1..n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let odd = ((n - 1) * (n - 2) / 2) % 2 == 1;
    Ok(if odd { -fact } else { fact })
}

/// `c · ∏_{j<k; j,k≠i} (α_k − α_j)²` for the minor deleting index `i` (0-based).
pub fn predicted_minor(alpha: &[Complex64], i: usize, c: f64) -> Complex64 {
    let n = alpha.len();
    let mut p = Complex64::new(c, 0.0);
    for j in (0..n).filter(|&j| j != i) {
        for k in (j + 1..n).filter(|&k| k != i) {
            let d = alpha[k] - alpha[j];
            p *= d * d;
        }
    }
    p
}

/// Rank as the number of singular values above `rank_tol · σ_max`.
pub fn numerical_rank(m: &CMatrix, rank_tol: f64) -> Result<(usize, Vec<f64>), JacobianError> {
    if !(rank_tol > 0.0 && rank_tol < 1.0) {
        return Err(JacobianError::BadRankTol(rank_tol));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(JacobianError::NonFinite);
    }
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let rank = if smax == 0.0 {
        0
    } else {
        s.iter().filter(|&&x| x > rank_tol * smax).count()
    };
    Ok((rank, s))
}

/// Residual of `Σ_i ∏_{j≠i} y_j = 0`; the relative value divides by
/// `max(1, max_i |∏_{j≠i} y_j|)`.
pub fn hypersurface_residual(y: &[Complex64]) -> HypersurfaceResidual {
    let terms: Vec<Complex64> = (0..y.len())
        .map(|i| (0..y.len()).filter(|&j| j != i).map(|j| y[j]).product())
        .collect();
    let raw: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
    HypersurfaceResidual {
        raw,
        relative: raw.norm() / scale,
    }
}

fn expect_len(expected: usize, got: usize) -> Result<(), JacobianError> {
    if expected == got {
        Ok(())
    } else {
        Err(JacobianError::Dimension { expected, got })
    }
}

fn finite(m: CMatrix) -> Result<CMatrix, JacobianError> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(m)
    } else {
        Err(JacobianError::NonFinite)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn apply(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    let out = m * DVector::from_column_slice(v);
    out.iter().cloned().collect()
}

fn kernel_measures(m: &CMatrix, v: &[Complex64], sigma1: f64) -> (f64, f64) {
    let r = norm(&apply(m, v));
    let denom = sigma1 * norm(v);
    (r, if denom > 0.0 { r / denom } else { r })
}

/// Jacobian of `M` in coefficient space at certified roots `rs` of `f`.
pub fn jac_coeff(f: &Poly<Complex64>, rs: &RootSet, rank_tol: f64) -> Result<JacobianReport, JacobianError> {
    let matrix = coefficient_jacobian(f, &rs.roots)?;
    let (numerical_rank, singular_values) = numerical_rank(&matrix, rank_tol)?;
    let v = f.derivative(&ComplexFloats).coeffs().to_vec();
    let (kernel_residual, kernel_residual_relative) =
        kernel_measures(&matrix, &v, singular_values[0]);
    Ok(JacobianReport {
        hypersurface_residual: hypersurface_residual(&multipliers_at(f, &rs.roots)),
        matrix,
        route: Route::CoefficientSpace,
        singular_values,
        numerical_rank,
        rank_tol,
        kernel_residual,
        kernel_residual_relative,
        minors: Vec::new(),
    })
}

/// Root-space Jacobian `D` with its principal minors checked against
/// `c · ∏ (α_k − α_j)²`.
pub fn jac_roots(alpha: &[Complex64], rank_tol: f64) -> Result<JacobianReport, JacobianError> {
    let n = alpha.len();
    if n < 2 {
        return Err(JacobianError::Domain(n));
    }
    let matrix = root_jacobian(alpha)?;
    let (numerical_rank, singular_values) = numerical_rank(&matrix, rank_tol)?;
    let ones = vec![Complex64::new(1.0, 0.0); n];
    let (kernel_residual, kernel_residual_relative) =
        kernel_measures(&matrix, &ones, singular_values[0]);
    let c = rees_constant(n)?.to_f64().unwrap_or(f64::NAN);
    let minors = (0..n)
        .map(|i| {
            let value = determinant(&principal_submatrix(&matrix, i));
            let predicted = predicted_minor(alpha, i, c);
            let dev = (value - predicted).norm();
            MinorCheck {
                index: i + 1,
                value,
                predicted,
                relative_deviation: if predicted.norm() > 0.0 { dev / predicted.norm() } else { dev },
            }
        })
        .collect();
    Ok(JacobianReport {
        hypersurface_residual: hypersurface_residual(&m_tilde(alpha)),
        matrix,
        route: Route::RootSpace,
        singular_values,
        numerical_rank,
        rank_tol,
        kernel_residual,
        kernel_residual_relative,
        minors,
    })
}

/// Jacobian of `Mult` with respect to the coefficients of `g`. The constant
/// shift and the `−x` term have zero derivative, so this is the
/// coefficient-space Jacobian of `M` at `g − x`.
pub fn mult_jacobian(g: &Poly<Complex64>, cfg: &RootConfig, rank_tol: f64) -> Result<JacobianReport, JacobianError> {
    check_monic(g)?;
    let f = fixed_point_poly(g);
    let rs = certified_roots(&f, cfg)?;
    jac_coeff(&f, &rs, rank_tol)
}

/// Central-difference Jacobian of `M` with step `h` on each coefficient.
///
/// Perturbed roots are matched to the original ones by nearest distance; if
/// the runner-up is within `2h` of the nearest, the matching is ambiguous and
/// the check is refused.
pub fn finite_difference_jacobian(
    f: &Poly<Complex64>,
    rs: &RootSet,
    h: f64,
    cfg: &RootConfig,
) -> Result<CMatrix, JacobianError> {
    let n = check_monic(f)?;
    expect_len(n, rs.len())?;
    let k = ComplexFloats;
    let tracked = |delta: f64, i: usize| -> Result<Vec<Complex64>, JacobianError> {
        let mut c = f.coeffs().to_vec();
        c[i] += Complex64::new(delta, 0.0);
        let g = Poly::new(c, &k);
        let moved = find_roots(&g, cfg)?;
        let mut used = vec![false; n];
        let mut matched = Vec::with_capacity(n);
        for a in &rs.roots {
            let mut dist: Vec<(f64, usize)> =
                moved.roots.iter().enumerate().map(|(j, b)| ((a - b).norm(), j)).collect();
            dist.sort_by(|x, y| x.0.total_cmp(&y.0));
            if n > 1 && dist[1].0 - dist[0].0 < 2.0 * h {
                return Err(JacobianError::Conditioning("ambiguous root tracking".into()));
            }
            let j = dist[0].1;
            if used[j] {
                return Err(JacobianError::Conditioning("root tracking is not one-to-one".into()));
            }
            used[j] = true;
            matched.push(moved.roots[j]);
        }
        Ok(multipliers_at(&g, &matched))
    };
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        let plus = tracked(h, i)?;
        let minus = tracked(-h, i)?;
        for j in 0..n {
            m[(j, i)] = (plus[j] - minus[j]) / (2.0 * h);
        }
    }
    finite(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberOptions {
    pub max_iter: usize,
    /// Convergence when `‖M̃(α) − y‖ ≤ tol · max(1, ‖y‖)`.
    pub tol: f64,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions {
            max_iter: 100,
            tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberSolution {
    pub alpha: Vec<Complex64>,
    /// `‖M̃(α) − y‖₂` at the returned point.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Gauss–Newton search for `α` with `M̃(α) = y`, starting at `alpha0`.
///
/// Fibers contain the lines `α − t(1, …, 1)`, so each step is constrained to
/// keep `Σ α_i` at its initial value. Steps are backtracked until the residual
/// decreases. The best iterate is always returned; `converged` tells whether
/// it met the tolerance.
pub fn fiber_solve(y: &[Complex64], alpha0: &[Complex64], opts: &FiberOptions) -> Result<FiberSolution, JacobianError> {
    let n = y.len();
    if n < 2 {
        return Err(JacobianError::Domain(n));
    }
    expect_len(n, alpha0.len())?;
    let hs = hypersurface_residual(y);
    if !(hs.relative <= FIBER_TARGET_TOL) {
        return Err(JacobianError::OffHypersurface(hs.relative));
    }
    let target = opts.tol * norm(y).max(1.0);
    let residual_at = |a: &[Complex64]| {
        let diff: Vec<Complex64> = m_tilde(a).iter().zip(y).map(|(m, t)| m - t).collect();
        (norm(&diff), diff)
    };
    let total: Complex64 = alpha0.iter().sum();
    let nf = n as f64;
    let mut alpha = alpha0.to_vec();
    let (mut res, mut diff) = residual_at(&alpha);
    let mut iterations = 0;

    while res > target && iterations < opts.max_iter {
        iterations += 1;
        let Ok(d) = root_jacobian(&alpha) else { break };
        let a = DMatrix::from_fn(n + 1, n, |i, j| if i < n { d[(i, j)] } else { Complex64::new(1.0, 0.0) });
        let b = DVector::from_fn(n + 1, |i, _| if i < n { -diff[i] } else { Complex64::new(0.0, 0.0) });
        let Ok(step) = a.svd(true, true).solve(&b, 1e-14 * max_abs(&d).max(1.0)) else {
            break;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut cand: Vec<Complex64> = alpha.iter().zip(step.iter()).map(|(x, s)| x + s * t).collect();
            let shift = (total - cand.iter().sum::<Complex64>()) / nf;
            cand.iter_mut().for_each(|x| *x += shift);
            let (r, dv) = residual_at(&cand);
            if r.is_finite() && r < res {
                alpha = cand;
                res = r;
                diff = dv;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    Ok(FiberSolution {
        converged: res <= target,
        alpha,
        residual: res,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootConfig;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cp(v: &[f64]) -> Poly<Complex64> {
        Poly::new(v.iter().map(|&x| c(x)).collect(), &ComplexFloats)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn assert_vec(a: &[Complex64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!(close(*x, c(*y), tol), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn m_map_examples() {
        let cfg = RootConfig::default();
        assert_vec(&m_map(&cp(&[-1.0, 0.0, 1.0]), &cfg).unwrap(), &[-2.0, 2.0], 1e-13);
        assert_vec(&m_map(&cp(&[0.0, 2.0, -3.0, 1.0]), &cfg).unwrap(), &[2.0, -1.0, 2.0], 1e-12);
    }

    #[test]
    fn m_map_refuses_double_root() {
        let cfg = RootConfig::default();
        assert!(matches!(m_map(&cp(&[1.0, 2.0, 1.0]), &cfg), Err(JacobianError::Conditioning(_))));
    }

    #[test]
    fn m_map_is_translation_invariant() {
        let cfg = RootConfig::default();
        let k = ComplexFloats;
        let f = Poly::new(
            vec![Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.1), c(0.7), Complex64::new(0.2, 0.4), c(1.0)],
            &k,
        );
        let base = m_map(&f, &cfg).unwrap();
        // A small shift keeps the lexicographic order of these roots.
        let shifted = m_map(&f.taylor_shift(&c(1e-3), &k), &cfg).unwrap();
        for (a, b) in base.iter().zip(&shifted) {
            assert!(close(*a, *b, 1e-8));
        }
    }

    #[test]
    fn m_tilde_examples() {
        assert_vec(&m_tilde(&[c(0.0), c(1.0), c(2.0)]), &[2.0, -1.0, 2.0], 0.0);
        let (a, b) = (Complex64::new(0.5, 1.0), Complex64::new(-2.0, 0.25));
        let y = m_tilde(&[a, a, b]);
        assert_eq!(y[0], c(0.0));
        assert_eq!(y[1], c(0.0));
        assert!(close(y[2], (b - a) * (b - a), 1e-15));
        assert_vec(&m_tilde(&[c(-1.0), c(1.0)]), &[-2.0, 2.0], 0.0);
    }

    #[test]
    fn mult_map_examples() {
        let cfg = RootConfig::default();
        assert_vec(&mult_map(&cp(&[0.0, 0.0, 1.0]), &cfg).unwrap(), &[0.0, 2.0], 1e-13);
        assert!(matches!(
            mult_map(&cp(&[0.0, 1.0, 1.0]), &cfg),
            Err(JacobianError::Conditioning(_))
        ));
    }

    #[test]
    fn mult_map_conjugation_invariance() {
        let cfg = RootConfig::default();
        let k = ComplexFloats;
        let g = Poly::new(vec![Complex64::new(0.1, 0.3), c(-0.4), Complex64::new(0.6, -0.2), c(1.0)], &k);
        let eps = c(1e-3);
        let conj = g.taylor_shift(&eps, &k).sub(&Poly::constant(eps, &k), &k);
        for (a, b) in mult_map(&g, &cfg).unwrap().iter().zip(&mult_map(&conj, &cfg).unwrap()) {
            assert!(close(*a, *b, 1e-8));
        }
    }

    #[test]
    fn jac_coeff_quadratic() {
        let f = cp(&[-1.0, 0.0, 1.0]);
        let rs = certified_roots(&f, &RootConfig::default()).unwrap();
        let rep = jac_coeff(&f, &rs, DEFAULT_RANK_TOL).unwrap();
        let expect = [[1.0, 0.0], [-1.0, 0.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(rep.matrix[(i, j)], c(expect[i][j]), 1e-14));
            }
        }
        assert_eq!(rep.numerical_rank, 1);
        assert_eq!(rep.kernel_residual, 0.0);
    }

    #[test]
    fn jac_coeff_cubic_and_roots_of_unity() {
        let cfg = RootConfig::default();
        let f = cp(&[0.0, 2.0, -3.0, 1.0]);
        let rs = certified_roots(&f, &cfg).unwrap();
        let rep = jac_coeff(&f, &rs, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(rep.numerical_rank, 2);
        assert!(rep.smallest_ratio() <= 1e-10);

        let f = cp(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let rs = certified_roots(&f, &cfg).unwrap();
        assert_eq!(jac_coeff(&f, &rs, DEFAULT_RANK_TOL).unwrap().numerical_rank, 5);
    }

    #[test]
    fn jac_roots_examples() {
        let alpha = [c(0.0), c(1.0), c(2.0)];
        let rep = jac_roots(&alpha, DEFAULT_RANK_TOL).unwrap();
        let expect = [[-3.0, 2.0, 1.0], [1.0, 0.0, -1.0], [-1.0, -2.0, 3.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(rep.matrix[(i, j)], c(expect[i][j]), 1e-14));
            }
        }
        assert_eq!(rep.kernel_residual, 0.0);
        let m33 = &rep.minors[2];
        assert_eq!(m33.index, 3);
        assert!(close(m33.value, c(-2.0), 1e-12));
        assert!(close(m33.predicted, c(-2.0), 0.0));

        let rep = jac_roots(&[c(-1.0), c(1.0)], DEFAULT_RANK_TOL).unwrap();
        let expect = [[1.0, -1.0], [-1.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(rep.matrix[(i, j)], c(expect[i][j]), 1e-15));
            }
        }
        assert!(close(rep.minors[1].value, c(1.0), 1e-15));
        assert_eq!(rep.minors[1].predicted, c(1.0));

        assert_eq!(
            jac_roots(&[c(1.0), c(2.0), c(1.0)], DEFAULT_RANK_TOL).unwrap_err(),
            JacobianError::Degenerate(0, 2)
        );
    }

    #[test]
    fn rees_constants() {
        assert_eq!(rees_constant(2).unwrap(), BigInt::from(1));
        assert_eq!(rees_constant(3).unwrap(), BigInt::from(-2));
        assert_eq!(rees_constant(4).unwrap(), BigInt::from(-6));
        assert_eq!(rees_constant(5).unwrap(), BigInt::from(24));
        assert_eq!(rees_constant(1).unwrap_err(), JacobianError::Domain(1));
    }

    #[test]
    fn numerical_rank_examples() {
        let id = DMatrix::<Complex64>::identity(3, 3);
        assert_eq!(numerical_rank(&id, DEFAULT_RANK_TOL).unwrap().0, 3);
        let z = DMatrix::from_element(2, 2, c(0.0));
        assert_eq!(numerical_rank(&z, DEFAULT_RANK_TOL).unwrap().0, 0);
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(-1.0), c(0.0)]);
        let (r, s) = numerical_rank(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(r, 1);
        assert!((s[0] - 2f64.sqrt()).abs() < 1e-15 && s[1] == 0.0);
        assert_eq!(numerical_rank(&m, 1.0).unwrap_err(), JacobianError::BadRankTol(1.0));
        let bad = DMatrix::from_element(1, 1, c(f64::NAN));
        assert_eq!(numerical_rank(&bad, 0.5).unwrap_err(), JacobianError::NonFinite);
    }

    #[test]
    fn hypersurface_examples() {
        let h = hypersurface_residual(&[c(2.0), c(-1.0), c(2.0)]);
        assert_eq!(h.raw, c(0.0));
        assert_eq!(hypersurface_residual(&[c(-2.0), c(2.0)]).raw, c(0.0));
        let h = hypersurface_residual(&[c(1.0), c(1.0), c(1.0)]);
        assert_eq!(h.raw, c(3.0));
        assert_eq!(h.relative, 3.0);
    }

    #[test]
    fn alpha_sensitivity_examples() {
        let cfg = RootConfig::default();
        let f = cp(&[-1.0, 0.0, 1.0]);
        let s = alpha_sensitivity(&f, &certified_roots(&f, &cfg).unwrap()).unwrap();
        assert!(close(s[(0, 0)], c(0.5), 1e-15) && close(s[(1, 0)], c(-0.5), 1e-15));
        // Both roots move by −1/2 as a_1 grows, since α_1 + α_2 = −a_1.
        assert!(close(s[(0, 1)], c(-0.5), 1e-15) && close(s[(1, 1)], c(-0.5), 1e-15));

        let f = cp(&[0.0, 2.0, -3.0, 1.0]);
        let s = alpha_sensitivity(&f, &certified_roots(&f, &cfg).unwrap()).unwrap();
        for i in 0..3 {
            assert!(close(s[(1, i)], c(1.0), 1e-12));
        }
    }

    #[test]
    fn fiber_solve_known_preimage() {
        let y = [c(2.0), c(-1.0), c(2.0)];
        let sol = fiber_solve(&y, &[c(0.1), c(0.9), c(2.1)], &FiberOptions::default()).unwrap();
        assert!(sol.converged);
        assert!(sol.residual <= 1e-8);
        let mean = sol.alpha.iter().sum::<Complex64>() / 3.0;
        for (a, e) in sol.alpha.iter().zip([-1.0, 0.0, 1.0]) {
            assert!(close(a - mean, c(e), 1e-8));
        }
    }

    #[test]
    fn fiber_solve_two_points() {
        let y = [c(-2.0), c(2.0)];
        let sol = fiber_solve(&y, &[c(0.3), c(0.8)], &FiberOptions::default()).unwrap();
        assert!(sol.converged && sol.residual <= 1e-10);
        assert!(close(sol.alpha[1] - sol.alpha[0], c(2.0), 1e-10));
    }

    #[test]
    fn fiber_solve_refuses_off_hypersurface() {
        let y = [c(1.0), c(1.0), c(1.0)];
        assert!(matches!(
            fiber_solve(&y, &[c(0.0), c(1.0), c(2.0)], &FiberOptions::default()),
            Err(JacobianError::OffHypersurface(_))
        ));
    }
}
