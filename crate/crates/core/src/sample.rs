//! Seeded random instances for corpus sweeps.
//!
//! Every trial gets its own ChaCha stream derived from `(seed, trial)`, so
//! results do not depend on evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::roots::{certify_simple, find_roots, min_gap, RootConfig, RootSet};
use crate::scalar::{ComplexFloats, Field};

const MAX_ATTEMPTS: usize = 10_000;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn unit_square_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Monic degree-`n` polynomial whose lower coefficients have real and
/// imaginary parts uniform in `[−1, 1]`.
pub fn random_monic<R: Rng>(n: usize, rng: &mut R) -> Poly<Complex64> {
    let lower: Vec<Complex64> = (0..n).map(|_| unit_square_complex(rng)).collect();
    Poly::monic_from_lower(&lower, &ComplexFloats)
}

/// Draws [`random_monic`] polynomials until one has certified simple roots.
pub fn random_squarefree<R: Rng>(n: usize, rng: &mut R, cfg: &RootConfig) -> Option<(Poly<Complex64>, RootSet)> {
    (0..MAX_ATTEMPTS).find_map(|_| {
        let f = random_monic(n, rng);
        let rs = find_roots(&f, cfg).ok()?;
        certify_simple(&rs, cfg.gap_floor).then_some((f, rs))
    })
}

/// `n` points in the square `[−radius, radius]²`, pairwise at least `gap` apart.
pub fn separated_points<R: Rng>(n: usize, radius: f64, gap: f64, rng: &mut R) -> Option<Vec<Complex64>> {
    (0..MAX_ATTEMPTS).find_map(|_| {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius)))
            .collect();
        (min_gap(&v) >= gap).then_some(v)
    })
}

/// Monic polynomial over an exact field with integer coefficients in
/// `[−bound, bound]` and `gcd(f, f′) = 1`.
pub fn random_squarefree_exact<F: Field, R: Rng>(n: usize, bound: i64, k: &F, rng: &mut R) -> Option<Poly<F::Elem>> {
    (0..MAX_ATTEMPTS).find_map(|_| {
        let lower: Vec<F::Elem> = (0..n).map(|_| k.from_i64(rng.gen_range(-bound..=bound))).collect();
        let f = Poly::monic_from_lower(&lower, k);
        let g = f.gcd_monic(&f.derivative(k), k).ok()?;
        (g.degree() == crate::poly::Degree::Finite(0)).then_some(f)
    })
}
