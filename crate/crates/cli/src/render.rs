//! Plain-text layouts for the reports; JSON goes through serde directly.

use std::fmt::Write;

use num_complex::Complex64;

use multmap::jacobian::JacobianReport;
use multmap::kernel::KernelReportDoc;
use multmap::report::AnalysisReport;
use multmap::verify::VerifySummary;

use crate::random::RandomReport;

fn cx(z: &Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-15 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

fn join(v: &[Complex64]) -> String {
    v.iter().map(cx).collect::<Vec<_>>().join(", ")
}

/// Exact coefficient strings, constant first, rendered as a polynomial.
fn poly(coeffs: &[String]) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let compound = c.contains(['+', '/']) || c[1..].contains('-');
        let coef = match (c.as_str(), i) {
            (_, 0) if c.contains('i') && compound => format!("({c})"),
            (_, 0) => c.clone(),
            ("1", _) => String::new(),
            ("-1", _) => "-".into(),
            _ if compound => format!("({c})"),
            _ => c.clone(),
        };
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(format!("{coef}{var}"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn jacobian(out: &mut String, label: &str, j: &JacobianReport) {
    let _ = writeln!(out, "{label}:");
    for row in j.matrix.row_iter() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>22}", cx(z))).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
    let sv: Vec<String> = j.singular_values.iter().map(|s| format!("{s:.3e}")).collect();
    let _ = writeln!(out, "  singular values: {}", sv.join(", "));
    let _ = writeln!(out, "  numerical rank: {} (rank tol {:.1e})", j.numerical_rank, j.rank_tol);
    let _ = writeln!(out, "  kernel residual: {:.3e} (relative {:.3e})", j.kernel_residual, j.kernel_residual_relative);
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree: {}{}", r.input.degree, if r.input.monicized { " (monicized)" } else { "" });
    let _ = writeln!(out, "roots: {}", join(&r.roots.roots));
    let c = &r.certification;
    let _ = writeln!(
        out,
        "certified: {} (min gap {:.3e}, max residual {:.3e} ≤ {:.3e})",
        c.certified, c.min_gap, c.max_residual, c.residual_bound
    );
    let _ = writeln!(out, "multipliers: {}", join(&r.multipliers));
    jacobian(&mut out, "coefficient-space jacobian", &r.jac_coeff);
    jacobian(&mut out, "root-space jacobian", &r.jac_roots);
    let _ = writeln!(out, "principal minors:");
    for m in &r.jac_roots.minors {
        let _ = writeln!(
            out,
            "  M_{0},{0} = {1}  predicted {2}  deviation {3:.2e}",
            m.index,
            cx(&m.value),
            cx(&m.predicted),
            m.relative_deviation
        );
    }
    let h = &r.jac_coeff.hypersurface_residual;
    let _ = writeln!(out, "hypersurface residual: {} (relative {:.3e})", cx(&h.raw), h.relative);
    if let Some(rel) = &r.rank_relation {
        let _ = writeln!(
            out,
            "exact w_dim: {}, numerical rank: {} ({})",
            rel.exact_w_dim,
            rel.numeric_rank,
            if rel.holds() { "consistent" } else { "INCONSISTENT" }
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn kernel(r: &KernelReportDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field: {}", r.field);
    let _ = writeln!(out, "f = {}", poly(&r.f));
    let _ = writeln!(out, "w_dim: {}", r.w_dim);
    for p in &r.w_basis {
        let _ = writeln!(out, "  {}", poly(p));
    }
    let _ = writeln!(out, "extended kernel dim: {}", r.extended_dim);
    for p in &r.extended_basis {
        let _ = writeln!(out, "  {}", poly(p));
    }
    let _ = writeln!(out, "checks:");
    for c in &r.thm_checks.checks {
        let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    out
}

pub fn verify(s: &VerifySummary) -> String {
    let mut out = String::new();
    for v in &s.verdicts {
        let _ = writeln!(out, "{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    let _ = writeln!(out, "{} passed, {} failed", s.passed, s.failed);
    out
}

pub fn random(r: &RandomReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, trials = {}, seed = {}", r.n, r.trials, r.seed);
    let hist: Vec<String> = r.rank_histogram.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    let _ = writeln!(out, "rank histogram: {{{}}}", hist.join(", "));
    let _ = writeln!(out, "max kernel residual: {:.3e}", r.max_kernel_residual);
    let _ = writeln!(out, "max hypersurface relative residual: {:.3e}", r.max_hypersurface_relative);
    let _ = writeln!(out, "min σ_(n−1)/σ_1: {:.3e}", r.min_rank_margin);
    out
}
