//! Pauli-string basis for operators on `n` qubits.
//!
//! A string is indexed by base-4 digits (`I = 0, X = 1, Y = 2, Z = 3`), most
//! significant digit first, and the first letter of its label acts on the
//! most significant qubit (the left factor of a Kronecker product). Each
//! string is a monomial matrix: `sigma |c> = phase(c) |c xor x_mask>`.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

/// Coefficients below this modulus are treated as zero when pruning.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// One `n`-qubit Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: u32,
    index: usize,
}

impl PauliString {
    /// String with canonical index `index` (`0` is the identity).
    pub fn new(n_qubits: u32, index: usize) -> Self {
        assert!(index < 1usize << (2 * n_qubits), "Pauli index out of range");
        Self { n_qubits, index }
    }

    /// The identity on `n_qubits`.
    pub fn identity(n_qubits: u32) -> Self {
        Self::new(n_qubits, 0)
    }

    /// Parses labels like `"XZ"` or `"IIY"`.
    pub fn from_label(label: &str) -> Option<Self> {
        let mut index = 0usize;
        let mut n = 0u32;
        for ch in label.chars() {
            let digit = match ch {
                'I' => 0,
                'X' => 1,
                'Y' => 2,
                'Z' => 3,
                _ => return None,
            };
            index = index * 4 + digit;
            n += 1;
        }
        if n == 0 {
            return None;
        }
        Some(Self { n_qubits: n, index })
    }

    /// Canonical index.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    /// Whether this is the identity string.
    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    fn digit(&self, qubit: u32) -> usize {
        (self.index >> (2 * (self.n_qubits - 1 - qubit))) & 3
    }

    /// Label such as `"XZ"`.
    pub fn label(&self) -> String {
        (0..self.n_qubits).map(|q| ['I', 'X', 'Y', 'Z'][self.digit(q)]).collect()
    }

    /// Bit masks (over basis-state indices) of qubits carrying X/Y and Y/Z,
    /// and the number of Y factors.
    fn masks(&self) -> (usize, usize, u32) {
        let (mut flip, mut phase, mut ys) = (0usize, 0usize, 0u32);
        for q in 0..self.n_qubits {
            let bit = 1usize << (self.n_qubits - 1 - q);
            match self.digit(q) {
                1 => flip |= bit,
                2 => {
                    flip |= bit;
                    phase |= bit;
                    ys += 1;
                }
                3 => phase |= bit,
                _ => {}
            }
        }
        (flip, phase, ys)
    }

    /// `(row, value)` of the single nonzero entry in column `c`.
    pub fn column_entry(&self, c: usize) -> (usize, Complex64) {
        let (flip, phase, ys) = self.masks();
        let sign = if (c & phase).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        let ipow = [c64(1.0, 0.0), c64(0.0, 1.0), c64(-1.0, 0.0), c64(0.0, -1.0)][(ys % 4) as usize];
        (c ^ flip, ipow * sign)
    }

    /// Dense matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = 1usize << self.n_qubits;
        let mut m = ComplexMatrix::zeros(d);
        for c in 0..d {
            let (r, v) = self.column_entry(c);
            m[(r, c)] = v;
        }
        m
    }
}

/// Coefficients `alpha_k = tr(M sigma_k) / d` over all `4^n` strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliDecomposition {
    /// Number of qubits.
    pub n_qubits: u32,
    /// Coefficient of string `k` at position `k`.
    pub coeffs: Vec<Complex64>,
}

impl PauliDecomposition {
    /// Strings whose coefficient modulus exceeds `threshold`, in index order.
    pub fn nonzero(&self, threshold: f64) -> Vec<(PauliString, Complex64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > threshold)
            .map(|(k, &c)| (PauliString::new(self.n_qubits, k), c))
            .collect()
    }

    /// Coefficient of a given string.
    pub fn coefficient(&self, s: PauliString) -> Complex64 {
        self.coeffs[s.index()]
    }

    /// Whether every coefficient is real within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol)
    }

    /// `sum_k alpha_k sigma_k`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = 1usize << self.n_qubits;
        let mut m = ComplexMatrix::zeros(d);
        for (k, &alpha) in self.coeffs.iter().enumerate() {
            if alpha.norm() == 0.0 {
                continue;
            }
            let s = PauliString::new(self.n_qubits, k);
            for c in 0..d {
                let (r, v) = s.column_entry(c);
                m[(r, c)] += alpha * v;
            }
        }
        m
    }
}

/// Decomposes a `2^n x 2^n` matrix in the Pauli-string basis.
pub fn pauli_decompose(m: &ComplexMatrix) -> Result<PauliDecomposition> {
    let d = m.dim();
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwoDim(d));
    }
    let n = d.trailing_zeros();
    let coeffs = (0..d * d)
        .map(|k| {
            let s = PauliString::new(n, k);
            // tr(M sigma) = sum_c M[c][r] sigma[r][c], r = c ^ flip
            let mut acc = c64(0.0, 0.0);
            for c in 0..d {
                let (r, v) = s.column_entry(c);
                acc += m[(c, r)] * v;
            }
            acc / d as f64
        })
        .collect();
    Ok(PauliDecomposition { n_qubits: n, coeffs })
}
