//! Simultaneous root finding for monic complex polynomials.
//!
//! Aberth–Ehrlich iteration with Gauss–Seidel updates, followed by one
//! guarded Newton step per root. Roots are returned in lexicographic
//! `(re, im)` order so that downstream vectors indexed by root are
//! reproducible.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Degree, Poly};
use crate::scalar::{ComplexFloats, Field};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 200;
pub const DEFAULT_GAP_FLOOR: f64 = 1e-8;
/// Residuals are certified against `DEFAULT_RESIDUAL_BOUND · Σ|a_k||α|^k`.
pub const DEFAULT_RESIDUAL_BOUND: f64 = 1e-8;

/// Real parts closer than this are treated as tied and ordered by imaginary part.
pub const ORDER_TIE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub gap_floor: f64,
    pub residual_bound: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            gap_floor: DEFAULT_GAP_FLOOR,
            residual_bound: DEFAULT_RESIDUAL_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|f(α_i)|` per root.
    pub residuals: Vec<f64>,
    /// Smallest pairwise distance; infinite for a single root.
    pub min_gap: f64,
    pub iterations: usize,
    /// Absolute residual threshold used by [`certify_simple`].
    pub residual_bound: f64,
    /// Radii of inclusion discs around each root, accounting for the
    /// rounding level of the evaluation. Disjoint discs isolate one root each.
    pub inclusion_radii: Vec<f64>,
}

impl RootSet {
    /// Builds a sorted set from given approximations of the roots of `f`.
    pub fn from_roots(f: &Poly<Complex64>, mut roots: Vec<Complex64>, iterations: usize, rel_bound: f64) -> Self {
        sort_roots(&mut roots);
        let k = ComplexFloats;
        let residuals = roots.iter().map(|z| f.eval(z, &k).norm()).collect();
        let scale = roots
            .iter()
            .map(|z| eval_scale(f, z))
            .fold(1.0f64, f64::max);
        let inclusion_radii = inclusion_radii(f, &roots);
        RootSet {
            min_gap: min_gap(&roots),
            roots,
            residuals,
            iterations,
            residual_bound: rel_bound * scale,
            inclusion_radii,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("non-finite coefficient or iterate")]
    NonFinite,
    #[error("no convergence after {} iterations (max residual {:.3e})", best.iterations, best.residuals.iter().cloned().fold(0.0, f64::max))]
    NonConvergence { best: Box<RootSet> },
}

/// `Σ |a_k| |z|^k`, the natural scale of rounding errors in `f(z)`.
pub fn eval_scale(f: &Poly<Complex64>, z: &Complex64) -> f64 {
    let r = z.norm();
    f.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// `r_i = n (|f(α_i)| + ε_i) / |∏_{j≠i} (α_i − α_j)|` for monic `f`, where
/// `ε_i` bounds the rounding error of evaluating `f(α_i)`. The union of the
/// discs contains every root, and a disc disjoint from the others contains
/// exactly one.
pub fn inclusion_radii(f: &Poly<Complex64>, roots: &[Complex64]) -> Vec<f64> {
    let n = roots.len();
    let k = ComplexFloats;
    let noise = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
    (0..n)
        .map(|i| {
            let z = roots[i];
            let denom: f64 = (0..n).filter(|&j| j != i).map(|j| (z - roots[j]).norm()).product();
            let num = n as f64 * (f.eval(&z, &k).norm() + noise * eval_scale(f, &z));
            if denom == 0.0 {
                f64::INFINITY
            } else {
                num / denom
            }
        })
        .collect()
}

pub fn min_gap(roots: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    gap
}

/// Lexicographic by real part, then imaginary part; real parts within
/// [`ORDER_TIE`] of their neighbour are grouped and ordered by imaginary part.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut start = 0;
    while start < roots.len() {
        let mut end = start + 1;
        while end < roots.len() && roots[end].re - roots[end - 1].re <= ORDER_TIE {
            end += 1;
        }
        roots[start..end].sort_by(|a, b| a.im.total_cmp(&b.im));
        start = end;
    }
}

/// Points on the circle of radius `1 + max|a_i|`, rotated by an irrational
/// angle so that `x^n − c` inputs do not start on a symmetry axis.
pub fn initial_guesses(f: &Poly<Complex64>) -> Vec<Complex64> {
    let n = f.degree().finite().unwrap_or(0);
    let lower = &f.coeffs()[..n];
    let radius = 1.0 + lower.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let offset = (2.0f64.sqrt() - 1.0) * PI / 2.0;
    (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + offset))
        .collect()
}

fn validate(f: &Poly<Complex64>, cfg: &RootConfig) -> Result<usize, RootError> {
    if !(cfg.tol > 0.0) {
        return Err(RootError::BadTolerance);
    }
    if f.coeffs().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(RootError::NonFinite);
    }
    match f.degree() {
        Degree::MinusInfinity | Degree::Finite(0) => Err(RootError::DegreeTooLow),
        Degree::Finite(n) => {
            if f.is_monic(&ComplexFloats) {
                Ok(n)
            } else {
                Err(RootError::NotMonic)
            }
        }
    }
}

pub fn find_roots(f: &Poly<Complex64>, cfg: &RootConfig) -> Result<RootSet, RootError> {
    validate(f, cfg)?;
    find_roots_from(f, initial_guesses(f), cfg)
}

/// Aberth–Ehrlich iteration from caller-supplied starting points.
///
/// A root stops moving once its step is below `tol·(1+|α|)` or its residual
/// reaches the rounding level of Horner evaluation; the second rule lets
/// clustered or multiple roots terminate.
pub fn find_roots_from(f: &Poly<Complex64>, start: Vec<Complex64>, cfg: &RootConfig) -> Result<RootSet, RootError> {
    let n = validate(f, cfg)?;
    assert_eq!(start.len(), n, "one starting point per root");
    let k = ComplexFloats;
    let df = f.derivative(&k);
    let noise = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
    let mut z = start;
    let mut frozen = vec![false; n];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iter {
        iterations += 1;
        let mut all_small = true;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            let p = f.eval(&zi, &k);
            if p.norm() <= noise * eval_scale(f, &zi) {
                frozen[i] = true;
                continue;
            }
            let dp = df.eval(&zi, &k);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i && z[j] != zi)
                .map(|j| (zi - z[j]).inv())
                .sum();
            let denom = dp - p * repulsion;
            let step = if denom.norm() == 0.0 {
                // Nudge off a stationary point.
                Complex64::new(cfg.tol, cfg.tol) * (1.0 + zi.norm())
            } else {
                p / denom
            };
            let next = zi - step;
            if !next.re.is_finite() || !next.im.is_finite() {
                return Err(RootError::NonFinite);
            }
            z[i] = next;
            if step.norm() > cfg.tol * (1.0 + zi.norm()) {
                all_small = false;
            }
        }
        if all_small {
            converged = true;
            break;
        }
    }

    if !converged {
        return Err(RootError::NonConvergence {
            best: Box::new(RootSet::from_roots(f, z, iterations, cfg.residual_bound)),
        });
    }

    for zi in z.iter_mut() {
        let p = f.eval(zi, &k);
        let dp = df.eval(zi, &k);
        if dp.norm() == 0.0 {
            continue;
        }
        let cand = *zi - p / dp;
        if cand.re.is_finite() && cand.im.is_finite() && f.eval(&cand, &k).norm() <= p.norm() {
            *zi = cand;
        }
    }

    Ok(RootSet::from_roots(f, z, iterations, cfg.residual_bound))
}

/// True iff the roots are at least `gap_floor` apart, every residual is
/// within the set's residual bound and the inclusion discs are pairwise
/// disjoint.
pub fn certify_simple(rs: &RootSet, gap_floor: f64) -> bool {
    let n = rs.roots.len();
    let isolated = (0..n).all(|i| {
        (i + 1..n).all(|j| rs.inclusion_radii[i] + rs.inclusion_radii[j] < (rs.roots[i] - rs.roots[j]).norm())
    });
    rs.min_gap >= gap_floor && rs.residuals.iter().all(|r| *r <= rs.residual_bound) && isolated
}

/// Expands `∏ (x − α_i)`.
pub fn poly_from_roots(roots: &[Complex64]) -> Poly<Complex64> {
    let k = ComplexFloats;
    roots.iter().fold(Poly::one(&k), |acc, r| {
        acc.mul(&Poly::new(vec![-r, k.one()], &k), &k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cp(c: &[f64]) -> Poly<Complex64> {
        Poly::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect(), &ComplexFloats)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn quadratic() {
        let rs = find_roots(&cp(&[-1.0, 0.0, 1.0]), &RootConfig::default()).unwrap();
        assert!(close(rs.roots[0], Complex64::new(-1.0, 0.0), 1e-14));
        assert!(close(rs.roots[1], Complex64::new(1.0, 0.0), 1e-14));
        assert!(rs.residuals.iter().all(|r| *r <= 1e-12));
    }

    #[test]
    fn cubic_with_integer_roots() {
        let rs = find_roots(&cp(&[0.0, 2.0, -3.0, 1.0]), &RootConfig::default()).unwrap();
        for (r, e) in rs.roots.iter().zip([0.0, 1.0, 2.0]) {
            assert!(close(*r, Complex64::new(e, 0.0), 1e-12), "{r} vs {e}");
        }
        assert!((rs.min_gap - 1.0).abs() < 1e-12);
        assert!(certify_simple(&rs, 0.5));
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![0.0; 9];
        c[0] = -1.0;
        c[8] = 1.0;
        let rs = find_roots(&cp(&c), &RootConfig::default()).unwrap();
        assert_eq!(rs.len(), 8);
        for r in &rs.roots {
            assert!((r.norm() - 1.0).abs() < 1e-12);
        }
        assert!((rs.min_gap - 2.0 * (PI / 8.0).sin()).abs() < 1e-9);
    }

    #[test]
    fn certification() {
        let cfg = RootConfig::default();
        let rs = find_roots(&cp(&[-1.0, 0.0, 1.0]), &cfg).unwrap();
        assert!(certify_simple(&rs, 1e-6));
        // (x-1)^2 (x+1) = x^3 - x^2 - x + 1
        let rs = find_roots(&cp(&[1.0, -1.0, -1.0, 1.0]), &cfg).unwrap();
        assert!(!certify_simple(&rs, 1e-6));
        assert!(rs.min_gap < 1e-6, "{rs:?}");
        // (x+1)^2
        let rs = find_roots(&cp(&[1.0, 2.0, 1.0]), &cfg).unwrap();
        assert!(!certify_simple(&rs, cfg.gap_floor));
    }

    #[test]
    fn input_validation() {
        let cfg = RootConfig::default();
        assert_eq!(find_roots(&cp(&[1.0, 2.0]), &cfg).unwrap_err(), RootError::NotMonic);
        assert_eq!(find_roots(&cp(&[1.0]), &cfg).unwrap_err(), RootError::DegreeTooLow);
        let bad = RootConfig { tol: 0.0, ..cfg };
        assert_eq!(find_roots(&cp(&[-1.0, 1.0]), &bad).unwrap_err(), RootError::BadTolerance);
    }

    #[test]
    fn iteration_budget_exhaustion_reports_best_iterate() {
        let cfg = RootConfig { max_iter: 1, ..RootConfig::default() };
        let mut c = vec![0.0; 13];
        c[0] = 0.3;
        c[12] = 1.0;
        match find_roots(&cp(&c), &cfg) {
            Err(RootError::NonConvergence { best }) => {
                assert_eq!(best.roots.len(), 12);
                assert_eq!(best.iterations, 1);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn tie_breaking_on_real_part() {
        let mut v = vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(1.0 + 5e-15, -1.0),
            Complex64::new(0.0, 0.0),
        ];
        sort_roots(&mut v);
        assert_eq!(v[0], Complex64::new(0.0, 0.0));
        assert_eq!(v[1].im, -1.0);
        assert_eq!(v[2].im, 2.0);
    }

    fn separated_roots() -> impl Strategy<Value = Vec<Complex64>> {
        (2usize..=12, any::<u64>()).prop_filter_map("roots too close", |(n, seed)| {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<_> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            (min_gap(&v) > 0.1).then_some(v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reconstruction(roots in separated_roots()) {
            let f = poly_from_roots(&roots);
            let rs = find_roots(&f, &RootConfig::default()).unwrap();
            let g = poly_from_roots(&rs.roots);
            let scale = f.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
            for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-8 * scale);
            }
        }

        #[test]
        fn permutation_stability(roots in separated_roots(), seed in any::<u64>()) {
            let f = poly_from_roots(&roots);
            let cfg = RootConfig::default();
            let base = find_roots(&f, &cfg).unwrap();
            let mut start = initial_guesses(&f);
            start.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let other = find_roots_from(&f, start, &cfg).unwrap();
            for (a, b) in base.roots.iter().zip(&other.roots) {
                prop_assert!((a - b).norm() <= 1e4 * cfg.tol * (1.0 + a.norm()));
            }
        }
    }
}
