use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use multmap::jacobian::{jac_coeff, JacobianError};
use multmap::report::AnalyzeOptions;
use multmap::sample::{random_squarefree, trial_rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub rank_tol: f64,
    /// Numerical rank → number of trials.
    pub rank_histogram: BTreeMap<usize, usize>,
    /// Largest `‖J f′‖ / (σ_1 ‖f′‖)` over all trials.
    pub max_kernel_residual: f64,
    pub max_hypersurface_relative: f64,
    /// Smallest `σ_(n−1) / σ_1`, i.e. the margin of the rank decision.
    pub min_rank_margin: f64,
}

struct Trial {
    rank: usize,
    kernel: f64,
    hypersurface: f64,
    margin: f64,
}

pub fn run(n: usize, trials: usize, seed: u64, opts: &AnalyzeOptions) -> Result<RandomReport, JacobianError> {
    // trials are independent streams, so the parallel order does not matter
    let results: Vec<Trial> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (f, rs) = random_squarefree(n, &mut rng, &opts.roots)
                .ok_or_else(|| JacobianError::Conditioning("no certified square-free sample".into()))?;
            let j = jac_coeff(&f, &rs, opts.rank_tol)?;
            let s = &j.singular_values;
            Ok(Trial {
                rank: j.numerical_rank,
                kernel: j.kernel_residual_relative,
                hypersurface: j.hypersurface_residual.relative,
                margin: s[n - 2] / s[0],
            })
        })
        .collect::<Result<_, JacobianError>>()?;

    let mut rank_histogram = BTreeMap::new();
    for r in &results {
        *rank_histogram.entry(r.rank).or_insert(0) += 1;
    }
    Ok(RandomReport {
        n,
        trials,
        seed,
        rank_tol: opts.rank_tol,
        rank_histogram,
        max_kernel_residual: results.iter().map(|r| r.kernel).fold(0.0, f64::max),
        max_hypersurface_relative: results.iter().map(|r| r.hypersurface).fold(0.0, f64::max),
        min_rank_margin: results.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min),
    })
}
