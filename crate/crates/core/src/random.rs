//! Random problem instances for property tests and benchmarks.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{c64, inner, norm, ComplexMatrix};
use crate::thermo::SystemSpec;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// GUE-distributed Hermitian matrix scaled by `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let diag: f64 = rng.sample(StandardNormal);
        m[(i, i)] = c64(diag * scale, 0.0);
        for j in (i + 1)..dim {
            let z = gaussian(rng) * scale;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Haar-distributed unitary: Gram-Schmidt of a complex Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for u in &cols {
                let p = inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= ui * p;
                }
            }
        }
        let n = norm(&v);
        if n < 1e-8 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= n;
        }
        cols.push(v);
    }
    ComplexMatrix::from_columns(&cols).expect("square by construction")
}

/// Random spec: GUE Hamiltonians, Haar protocol, `beta` uniform in `[0.1, 2]`,
/// and optionally a Haar-random measurement basis.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, dim: usize, custom_basis: bool) -> SystemSpec {
    let h0 = random_hermitian(rng, dim, 1.0);
    let h_tau = random_hermitian(rng, dim, 1.0);
    let u = haar_unitary(rng, dim);
    let beta = rng.random_range(0.1..=2.0);
    let spec = SystemSpec::new(h0, h_tau, u, beta).expect("random instance is valid");
    if custom_basis {
        spec.with_initial_basis(haar_unitary(rng, dim)).expect("Haar basis is orthonormal")
    } else {
        spec
    }
}
