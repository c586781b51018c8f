//! Fixed verification corpus: the worked examples, closed-form constants and
//! identities the library is built around, each as a named self-checking item.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::jacobian::{
    certified_roots, jac_coeff, jac_roots, m_map, m_tilde, mult_map, predicted_minor, rees_constant, root_jacobian,
    DEFAULT_RANK_TOL,
};
use crate::kernel::{in_span, rank_relation, w_space};
use crate::linalg::{determinant, principal_submatrix};
use crate::poly::Poly;
use crate::roots::RootConfig;
use crate::sample::{separated_points, trial_rng};
use crate::scalar::{ComplexFloats, GaussianRationals, Rational, Rationals};

/// Deliberate defects for exercising the failure path of the corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Negate the closed-form minor constant.
    pub rees_sign: bool,
}

impl Faults {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "rees-sign" => Some(Faults { rees_sign: true }),
            _ => None,
        }
    }

    fn rees(&self, n: usize) -> Result<BigInt, String> {
        let c = rees_constant(n).map_err(|e| e.to_string())?;
        Ok(if self.rees_sign { -c } else { c })
    }

    fn rees_f64(&self, n: usize) -> Result<f64, String> {
        self.rees(n)?.to_f64().ok_or_else(|| "constant out of range".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub verdicts: Vec<Verdict>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect()
    }
}

type Check = Box<dyn Fn(&Faults) -> Result<String, String>>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qp(c: &[i64]) -> Poly<Rational> {
    Poly::from_ints(c, &Rationals)
}

fn cp(c: &[i64]) -> Poly<Complex64> {
    Poly::from_ints(c, &ComplexFloats)
}

fn x_pow_minus_one(n: usize) -> Vec<i64> {
    let mut c = vec![0; n + 1];
    c[0] = -1;
    c[n] = 1;
    c
}

fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn items() -> Vec<(String, Check)> {
    let mut v: Vec<(String, Check)> = Vec::new();
    let mut add = |name: &str, check: Check| v.push((name.to_string(), check));

    add(
        "bracket-x4-x2",
        Box::new(|_| {
            let k = Rationals;
            let f = qp(&[0, 0, 0, 0, 1]);
            ensure(f.bracket(&qp(&[0, 0, 1]), &k) == f.scale(&Rational::from_int(4), &k), || "≠ 4x⁴".into())?;
            Ok("R(x⁴, x²) = 4x⁴".into())
        }),
    );
    add(
        "bracket-square-of-quadratic",
        Box::new(|_| {
            let k = Rationals;
            let p = qp(&[-1, 0, 1]);
            let f = p.pow(2, &k);
            ensure(f.bracket(&p, &k) == f.scale(&Rational::from_int(4), &k), || "≠ 4f".into())?;
            Ok("R((x²−1)², x²−1) = 4(x²−1)²".into())
        }),
    );
    add(
        "bracket-quintic",
        Box::new(|_| {
            let k = Rationals;
            let f = qp(&[162, 45, 20, 15, 0, 1]);
            let got = f.bracket(&qp(&[9, 8, 0, 1]), &k);
            ensure(got == f.mul(&qp(&[0, 5]), &k), || format!("got {}", got.pretty(&k)))?;
            Ok("R(f, x³+8x+9) = 5x·f".into())
        }),
    );
    add(
        "shift-invariance",
        Box::new(|_| {
            let cfg = RootConfig::default();
            let f = cp(&[1, -3, 0, 0, 0, 1]);
            let eps = Complex64::new(1e-3, 0.0);
            let g = f.taylor_shift(&eps, &ComplexFloats);
            let a = m_map(&f, &cfg).map_err(|e| e.to_string())?;
            let b = m_map(&g, &cfg).map_err(|e| e.to_string())?;
            let d = max_dist(&a, &b);
            ensure(d <= 1e-8, || format!("deviation {d:e}"))?;
            Ok(format!("M(f(x)) = M(f(x+ε)) to {d:.1e}"))
        }),
    );
    add(
        "conjugation-invariance",
        Box::new(|_| {
            let cfg = RootConfig::default();
            let k = ComplexFloats;
            let g = cp(&[-1, 0, 2, 1]);
            let eps = Complex64::new(2e-3, -1e-3);
            let h = g.taylor_shift(&eps, &k).sub(&Poly::constant(eps, &k), &k);
            let a = mult_map(&g, &cfg).map_err(|e| e.to_string())?;
            let b = mult_map(&h, &cfg).map_err(|e| e.to_string())?;
            // fixed points move by −ε; compare as multisets via nearest match
            let d = a
                .iter()
                .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            ensure(d <= 1e-8, || format!("deviation {d:e}"))?;
            Ok(format!("Mult(g(z+ε)−ε) = Mult(g) to {d:.1e}"))
        }),
    );
    add(
        "rank-x6-minus-1",
        Box::new(|_| {
            let f = cp(&x_pow_minus_one(6));
            let rs = certified_roots(&f, &RootConfig::default()).map_err(|e| e.to_string())?;
            let r = jac_coeff(&f, &rs, DEFAULT_RANK_TOL).map_err(|e| e.to_string())?;
            ensure(r.numerical_rank == 5, || format!("rank {}", r.numerical_rank))?;
            Ok(format!("rank 5, σ_6/σ_1 = {:.1e}", r.smallest_ratio()))
        }),
    );
    for n in 2..=6usize {
        let want: i64 = [1, -2, -6, 24, 120][n - 2];
        add(
            &format!("rees-constant-n{n}"),
            Box::new(move |faults| {
                let c = faults.rees(n)?;
                ensure(c == BigInt::from(want), || format!("got {c}, expected {want}"))?;
                Ok(format!("c = {c}"))
            }),
        );
    }
    add(
        "minor-law-anchor",
        Box::new(|faults| {
            let alpha = [0.0, 1.0, 2.0].map(|x| Complex64::new(x, 0.0));
            let d = root_jacobian(&alpha).map_err(|e| e.to_string())?;
            let value = determinant(&principal_submatrix(&d, 2));
            let predicted = predicted_minor(&alpha, 2, faults.rees_f64(3)?);
            ensure((value - predicted).norm() < 1e-12, || format!("M_33 = {value}, predicted {predicted}"))?;
            Ok("α = (0, 1, 2): M_33 = −2".into())
        }),
    );
    for n in 2..=6usize {
        add(
            &format!("minor-law-n{n}"),
            Box::new(move |faults| {
                let c = faults.rees_f64(n)?;
                let mut worst: f64 = 0.0;
                for t in 0..5 {
                    let alpha = separated_points(n, 1.0, 0.2, &mut trial_rng(41, (n * 100 + t) as u64))
                        .ok_or("no separated sample")?;
                    let d = root_jacobian(&alpha).map_err(|e| e.to_string())?;
                    for i in 0..n {
                        let value = determinant(&principal_submatrix(&d, i));
                        let predicted = predicted_minor(&alpha, i, c);
                        let rel = (value - predicted).norm() / predicted.norm();
                        ensure(rel <= 1e-6, || format!("M_{0}{0} relative deviation {rel:.2e}", i + 1))?;
                        worst = worst.max(rel);
                    }
                }
                Ok(format!("all principal minors within {worst:.1e}"))
            }),
        );
    }
    for n in [2usize, 3, 6, 12] {
        add(
            &format!("hypersurface-random-n{n}"),
            Box::new(move |_| {
                let mut worst: f64 = 0.0;
                for t in 0..10 {
                    let alpha = separated_points(n, 1.0, 1e-2, &mut trial_rng(43, (n * 100 + t) as u64))
                        .ok_or("no separated sample")?;
                    let r = crate::jacobian::hypersurface_residual(&m_tilde(&alpha)).relative;
                    ensure(r <= 1e-9, || format!("relative residual {r:e}"))?;
                    worst = worst.max(r);
                }
                Ok(format!("relative residual ≤ {worst:.1e}"))
            }),
        );
    }
    add(
        "hypersurface-cubic-multipliers",
        Box::new(|_| {
            let y = m_map(&cp(&[0, 2, -3, 1]), &RootConfig::default()).map_err(|e| e.to_string())?;
            let r = crate::jacobian::hypersurface_residual(&y);
            ensure(r.raw.norm() <= 1e-12, || format!("raw residual {}", r.raw))?;
            Ok("y = (2, −1, 2): −2 + 4 − 2 = 0".into())
        }),
    );
    add(
        "root-jacobian-row-sums",
        Box::new(|_| {
            for n in 2..=8usize {
                let alpha = separated_points(n, 1.0, 0.1, &mut trial_rng(47, n as u64)).ok_or("no separated sample")?;
                let r = jac_roots(&alpha, DEFAULT_RANK_TOL).map_err(|e| e.to_string())?;
                ensure(r.kernel_residual_relative <= 1e-12, || {
                    format!("n = {n}: ‖D·1‖ relative {:e}", r.kernel_residual_relative)
                })?;
            }
            Ok("D·(1, …, 1) = 0 for n = 2..8".into())
        }),
    );
    for n in 2..=12usize {
        add(
            &format!("kernel-roots-of-unity-n{n}"),
            Box::new(move |_| {
                let r = w_space(&qp(&x_pow_minus_one(n)), &Rationals).map_err(|e| e.to_string())?;
                ensure(r.w_dim == 0, || format!("w_dim {}", r.w_dim))?;
                Ok(format!("W(x^{n} − 1) = 0"))
            }),
        );
    }
    add(
        "kernel-x3",
        Box::new(|_| {
            let r = w_space(&qp(&[0, 0, 0, 1]), &Rationals).map_err(|e| e.to_string())?;
            ensure(r.w_dim == 0, || format!("w_dim {}", r.w_dim))?;
            Ok("W(x³) = 0".into())
        }),
    );
    add(
        "kernel-square-of-quadratic",
        Box::new(|_| {
            let r = w_space(&qp(&[1, 0, -2, 0, 1]), &Rationals).map_err(|e| e.to_string())?;
            ensure(r.w_basis == vec![qp(&[-1, 0, 1])], || format!("basis {:?}", r.w_basis))?;
            ensure(r.thm_checks.all_passed(), || format!("{:?}", r.thm_checks.failures()))?;
            Ok("W((x²−1)²) = span{x² − 1}".into())
        }),
    );
    add(
        "kernel-x4",
        Box::new(|_| {
            let r = w_space(&qp(&[0, 0, 0, 0, 1]), &Rationals).map_err(|e| e.to_string())?;
            ensure(r.w_basis == vec![qp(&[0, 0, 1])], || format!("basis {:?}", r.w_basis))?;
            ensure(r.thm_checks.all_passed(), || format!("{:?}", r.thm_checks.failures()))?;
            ensure(r.thm_checks.scalar_witness.as_deref() == Some("1"), || "c ≠ 1".into())?;
            Ok("W(x⁴) = span{x²}, x⁴ = 1·(x²)²".into())
        }),
    );
    add(
        "kernel-quintic",
        Box::new(|_| {
            let k = Rationals;
            let r = w_space(&qp(&[162, 45, 20, 15, 0, 1]), &k).map_err(|e| e.to_string())?;
            ensure(in_span(&qp(&[9, 8, 0, 1]), &r.w_basis, &k), || "x³+8x+9 ∉ W".into())?;
            ensure(r.thm_checks.all_passed(), || format!("{:?}", r.thm_checks.failures()))?;
            let w = r.thm_checks.quadratic_witness.clone().unwrap_or_default();
            ensure(w == ["9", "-1", "1"], || format!("witness {w:?}"))?;
            Ok("x³+8x+9 ∈ W(f), (x²−x+9)² | f".into())
        }),
    );
    add(
        "rank-relation-x6-minus-1",
        Box::new(|_| {
            let f = Poly::from_ints(&x_pow_minus_one(6), &GaussianRationals);
            let r = rank_relation(&f, &RootConfig::default(), DEFAULT_RANK_TOL).map_err(|e| e.to_string())?;
            ensure((r.exact_w_dim, r.numeric_rank) == (0, 5), || format!("{r:?}"))?;
            Ok("exact w_dim 0, numerical rank 5".into())
        }),
    );
    v
}

pub fn item_names() -> Vec<String> {
    items().into_iter().map(|(n, _)| n).collect()
}

/// Runs every item whose name contains `filter` (all items when `None`).
pub fn run_corpus(filter: Option<&str>, faults: &Faults) -> VerifySummary {
    let verdicts: Vec<Verdict> = items()
        .into_iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|(name, check)| match check(faults) {
            Ok(detail) => Verdict { name, passed: true, detail },
            Err(detail) => Verdict { name, passed: false, detail },
        })
        .collect();
    let passed = verdicts.iter().filter(|v| v.passed).count();
    VerifySummary {
        failed: verdicts.len() - passed,
        passed,
        verdicts,
    }
}
