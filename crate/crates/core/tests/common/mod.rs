#![allow(dead_code)]

use num_complex::Complex64;
use otm_core::random::random_spec;
use otm_core::{c64, herm_eig, ComplexMatrix, SystemSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn spec_from_seed(seed: u64, dim: usize, custom_basis: bool) -> SystemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_spec(&mut rng, dim, custom_basis)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix logarithm of a positive-definite matrix.
pub fn logm(m: &ComplexMatrix) -> ComplexMatrix {
    herm_eig(m).unwrap().map(|l| c64(l.ln(), 0.0))
}

/// `tr rho (ln rho - ln sigma)` for full-rank arguments.
pub fn rel_ent_direct(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    (rho * &(&logm(rho) - &logm(sigma))).trace().re
}

pub fn entropy_direct(rho: &ComplexMatrix) -> f64 {
    -(rho * &logm(rho)).trace().re
}

/// `exp(c m)` by scaling and squaring a truncated Taylor series.
pub fn expm_taylor(m: &ComplexMatrix, c: Complex64) -> ComplexMatrix {
    let a = m.scale(c);
    let norm = a.max_abs() * a.dim() as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a.scale(c64(scale, 0.0));
    let d = a.dim();
    let mut term = ComplexMatrix::identity(d);
    let mut sum = ComplexMatrix::identity(d);
    for k in 1..=20 {
        term = (&term * &a).scale(c64(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn dims() -> [usize; 3] {
    [2, 4, 8]
}
