//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and
//! spectral matrix functions built on it.
//!
//! The output basis is canonical: eigenvalues ascend, every eigenvector has
//! its first non-negligible component real and positive, and inside a
//! degenerate cluster the basis is rebuilt by Gram-Schmidt over the cluster's
//! projected unit vectors `P e_0, P e_1, ...`. Two runs on the same input (or
//! on inputs that differ only by rounding inside a cluster) therefore produce
//! the same eigenvectors, which the OTM trajectory labels depend on.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{c64, inner, norm, ComplexMatrix};

/// Hermiticity tolerance accepted by [`herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Relative gap (in units of `max |H_ij|`) below which eigenvalues are treated
/// as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// Eigenvector `j` as an owned vector.
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j)
    }

    /// `V f(diag(lambda)) V^dagger` for a complex-valued spectral function.
    pub fn map<F: Fn(f64) -> Complex64>(&self, f: F) -> ComplexMatrix {
        let d = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = c64(0.0, 0.0);
                for k in 0..d {
                    acc += v[(i, k)] * fl[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| c64(l, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn herm_eig(h: &ComplexMatrix) -> Result<EigenSystem> {
    h.check_hermitian(HERMITIAN_TOL)?;
    let d = h.dim();
    let (values, vectors) = jacobi(h)?;

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_vals: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let sorted_vecs: Vec<Vec<Complex64>> = order.iter().map(|&k| vectors.column(k)).collect();

    let gap = DEGENERACY_GAP * h.max_abs().max(f64::MIN_POSITIVE);
    let mut eigenvalues = Vec::with_capacity(d);
    let mut columns = Vec::with_capacity(d);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && sorted_vals[end] - sorted_vals[end - 1] < gap {
            end += 1;
        }
        let cluster = &sorted_vecs[start..end];
        let mean = sorted_vals[start..end].iter().sum::<f64>() / (end - start) as f64;
        let basis = if cluster.len() == 1 {
            let mut v = cluster[0].clone();
            fix_phase(&mut v);
            alloc::vec![v]
        } else {
            canonical_cluster_basis(cluster, d)
        };
        for v in basis {
            eigenvalues.push(if end - start == 1 { sorted_vals[start] } else { mean });
            columns.push(v);
        }
        start = end;
    }
    Ok(EigenSystem { eigenvalues, eigenvectors: ComplexMatrix::from_columns(&columns)? })
}

/// `exp(c H)` for Hermitian `H` and complex scalar `c`.
pub fn mat_fn_hermitian(h: &ComplexMatrix, c: Complex64) -> Result<ComplexMatrix> {
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::NonFinite);
    }
    let eig = herm_eig(h)?;
    Ok(eig.map(|l| (c * l).exp()))
}

/// Raw cyclic Jacobi: returns unsorted eigenvalues and the accumulated
/// rotation matrix.
fn jacobi(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let d = h.dim();
    let mut a = h.clone();
    // Symmetrise so the rotations act on an exactly Hermitian matrix.
    for i in 0..d {
        a[(i, i)] = c64(a[(i, i)].re, 0.0);
        for j in (i + 1)..d {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(d);
    let scale = a.max_abs();
    if d == 1 || scale == 0.0 {
        return Ok(((0..d).map(|i| a[(i, i)].re).collect(), v));
    }
    let max_sweeps = 100 * d * d;
    let threshold = f64::EPSILON * scale;
    for _ in 0..max_sweeps {
        let off: f64 = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= threshold {
            return Ok(((0..d).map(|i| a[(i, i)].re).collect(), v));
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    Err(Error::NoConvergence { sweeps: max_sweeps })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let d = a.dim();
    // Phase e^{i phi} of a_pq; conjugating by diag(1, e^{-i phi}) makes the
    // 2x2 block real symmetric.
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = [[c, s], [-s conj(phase), c conj(phase)]] acting on columns (p, q).
    let g00 = c64(c, 0.0);
    let g01 = c64(s, 0.0);
    let g10 = phase.conj() * (-s);
    let g11 = phase.conj() * c;

    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g00 + akq * g10;
        a[(k, q)] = akp * g01 + akq * g11;
    }
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
    }
    a[(p, q)] = c64(0.0, 0.0);
    a[(q, p)] = c64(0.0, 0.0);
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);
    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g00 + vkq * g10;
        v[(k, q)] = vkp * g01 + vkq * g11;
    }
}

/// Rotates `v` so its first component with modulus above 1e-8 is real positive.
fn fix_phase(v: &mut [Complex64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-8).copied() {
        let ph = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= ph;
        }
    }
}

fn canonical_cluster_basis(cluster: &[Vec<Complex64>], d: usize) -> Vec<Vec<Complex64>> {
    let m = cluster.len();
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for j in 0..d {
        if out.len() == m {
            break;
        }
        // P e_j = sum_c v_c conj(v_c[j])
        let mut w = alloc::vec![c64(0.0, 0.0); d];
        for vc in cluster {
            let coeff = vc[j].conj();
            for (wi, x) in w.iter_mut().zip(vc) {
                *wi += x * coeff;
            }
        }
        // Two passes of Gram-Schmidt against the vectors already chosen.
        for _ in 0..2 {
            for u in &out {
                let proj = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= ui * proj;
                }
            }
        }
        let n = norm(&w);
        if n > 1e-6 {
            for wi in w.iter_mut() {
                *wi /= n;
            }
            fix_phase(&mut w);
            out.push(w);
        }
    }
    debug_assert_eq!(out.len(), m);
    out
}
