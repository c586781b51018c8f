//! End-to-end analysis of one polynomial: roots, multipliers, both Jacobian
//! routes, minors and the hypersurface residual, bundled as one report.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobian::{certified_roots, jac_coeff, jac_roots, multipliers_at, JacobianError, JacobianReport};
use crate::kernel::{rank_relation, KernelError, RankRelation};
use crate::poly::{Degree, Poly, PolyError};
use crate::roots::{certify_simple, RootConfig, RootSet};
use crate::scalar::{ComplexFloats, Field, GaussianRationals};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub roots: RootConfig,
    pub rank_tol: f64,
    pub monicize: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            roots: RootConfig::default(),
            rank_tol: crate::jacobian::DEFAULT_RANK_TOL,
            monicize: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyzeError {
    #[error("cannot parse coefficients: {0}")]
    Parse(#[from] PolyError),
    #[error("polynomial must have degree at least 2, got {0}")]
    DegreeTooLow(Degree),
    #[error("leading coefficient is {0}, not 1 (pass --monicize to rescale)")]
    NotMonic(String),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub text: String,
    /// Coefficients actually analysed, constant term first.
    pub coefficients: Vec<Complex64>,
    pub degree: usize,
    pub monicized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub certified: bool,
    pub min_gap: f64,
    pub gap_floor: f64,
    pub max_residual: f64,
    pub residual_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub roots: RootSet,
    pub certification: Certification,
    pub multipliers: Vec<Complex64>,
    pub jac_coeff: JacobianReport,
    pub jac_roots: JacobianReport,
    pub rank_relation: Option<RankRelation>,
    pub warnings: Vec<String>,
}

/// Within this factor of a threshold a result is reported but flagged.
const MARGIN: f64 = 1e3;

pub fn analyze(text: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let k = ComplexFloats;
    let mut f = Poly::parse_coeff_list(text, &k)?;
    let n = match f.degree() {
        Degree::Finite(n) if n >= 2 => n,
        d => return Err(AnalyzeError::DegreeTooLow(d)),
    };
    let monicized = !f.is_monic(&k);
    if monicized {
        if !opts.monicize {
            return Err(AnalyzeError::NotMonic(k.format(f.leading().expect("nonzero"))));
        }
        f = f.make_monic(&k)?;
    }

    let rs = certified_roots(&f, &opts.roots)?;
    let multipliers = multipliers_at(&f, &rs.roots);
    let jc = jac_coeff(&f, &rs, opts.rank_tol)?;
    let jr = jac_roots(&rs.roots, opts.rank_tol)?;

    let mut warnings = Vec::new();
    let exact = Poly::parse_coeff_list(text, &GaussianRationals)
        .ok()
        .and_then(|p| p.make_monic(&GaussianRationals).ok());
    let rank_relation = match exact {
        Some(p) => match rank_relation(&p, &opts.roots, opts.rank_tol) {
            Ok(r) => {
                if !r.holds() {
                    warnings.push(format!(
                        "exact w_dim {} and numerical rank {} disagree for n = {n}",
                        r.exact_w_dim, r.numeric_rank
                    ));
                }
                Some(r)
            }
            Err(KernelError::NotSquareFree) => {
                warnings.push("exact coefficients have a repeated factor; roots are numerically separated only".into());
                None
            }
            Err(e) => {
                warnings.push(format!("exact rank relation unavailable: {e}"));
                None
            }
        },
        None => None,
    };

    let max_residual = rs.residuals.iter().cloned().fold(0.0, f64::max);
    let certification = Certification {
        certified: certify_simple(&rs, opts.roots.gap_floor),
        min_gap: rs.min_gap,
        gap_floor: opts.roots.gap_floor,
        max_residual,
        residual_bound: rs.residual_bound,
    };
    if rs.min_gap < MARGIN * opts.roots.gap_floor {
        warnings.push(format!(
            "root gap {:.3e} is within a factor {MARGIN} of the floor {:.1e}",
            rs.min_gap, opts.roots.gap_floor
        ));
    }
    if max_residual * MARGIN > rs.residual_bound {
        warnings.push(format!(
            "root residual {max_residual:.3e} is close to the bound {:.3e}",
            rs.residual_bound
        ));
    }
    for report in [&jc, &jr] {
        let s = &report.singular_values;
        if report.numerical_rank != n - 1 {
            warnings.push(format!("{:?} rank {} differs from n − 1 = {}", report.route, report.numerical_rank, n - 1));
        }
        if n >= 2 && s[n - 2] < MARGIN * opts.rank_tol * s[0] {
            warnings.push(format!(
                "{:?}: σ_(n−1)/σ_1 = {:.3e} is close to the rank tolerance",
                report.route,
                s[n - 2] / s[0]
            ));
        }
    }
    if let Some(worst) = jr.minors.iter().map(|m| m.relative_deviation).reduce(f64::max) {
        if worst > 1e-6 {
            warnings.push(format!("principal minors deviate from the closed form by {worst:.3e}"));
        }
    }

    Ok(AnalysisReport {
        input: InputEcho {
            text: text.to_string(),
            coefficients: f.coeffs().to_vec(),
            degree: n,
            monicized,
        },
        roots: rs,
        certification,
        multipliers,
        jac_coeff: jc,
        jac_roots: jr,
        rank_relation,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let r = analyze("-1,0,1", &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.jac_coeff.numerical_rank, 1);
        assert_eq!(r.jac_roots.numerical_rank, 1);
        assert!((r.multipliers[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((r.multipliers[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(r.jac_coeff.hypersurface_residual.raw, Complex64::new(0.0, 0.0));
        assert_eq!(r.rank_relation, Some(RankRelation { n: 2, exact_w_dim: 0, numeric_rank: 1 }));
        assert!(r.certification.certified);
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn cubic_minor() {
        let r = analyze("0,2,-3,1", &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.jac_coeff.numerical_rank, 2);
        assert!((r.jac_roots.minors[2].value - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn failures_map_to_errors() {
        let o = AnalyzeOptions::default();
        assert!(matches!(analyze("1,2,1", &o), Err(AnalyzeError::Jacobian(JacobianError::Conditioning(_)))));
        assert!(matches!(analyze("1,x,1", &o), Err(AnalyzeError::Parse(_))));
        assert!(matches!(analyze("-2,0,2", &o), Err(AnalyzeError::NotMonic(_))));
        assert!(matches!(analyze("1,1", &o), Err(AnalyzeError::DegreeTooLow(_))));
        let m = AnalyzeOptions { monicize: true, ..o };
        let r = analyze("-2,0,2", &m).unwrap();
        assert!(r.input.monicized);
        assert_eq!(r.input.coefficients[0], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn float_coefficients_skip_exact_relation() {
        let r = analyze("0.5e-1,0,1", &AnalyzeOptions::default()).unwrap();
        assert!(r.rank_relation.is_none());
    }
}
