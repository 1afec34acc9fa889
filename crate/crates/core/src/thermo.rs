//! Thermodynamics of the one-time-measurement scheme.
//!
//! A [`SystemSpec`] fixes the initial and final Hamiltonians, the unitary
//! protocol, the inverse temperature and the measurement basis `{|psi_i>}`
//! (the eigenbasis of `H0` unless one is supplied). Trajectory `i` starts in
//! `|psi_i>`, has initial energy `e_i = <psi_i|H0|psi_i>` and conditional final
//! energy `g_i = <psi_i|U^dagger H_tau U|psi_i>`; its conditional work is
//! `g_i - e_i`. Everything else in this module is built from those two
//! vectors and the pointer states `U|psi_i>`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use crate::eigen::{herm_eig, mat_fn_hermitian, EigenSystem};
use crate::error::{Error, Result};
use crate::matrix::{c64, inner, kron, ComplexMatrix};

/// Tolerance for Hermiticity, unitarity and orthonormality of a spec.
pub const SPEC_TOL: f64 = 1e-9;

/// Eigenvalues below this are treated as outside the support of a state.
pub const SUPPORT_CUTOFF: f64 = 1e-14;

/// Normalization tolerance for work distributions.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Which end of the protocol a conditional object refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// `G_0`, built on `{|psi_i>}` with `H0`.
    Initial,
    /// `G_tau`, built on `{U|psi_i>}` with `H_tau`.
    Final,
}

/// Forward or backward process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Starts from the (conditional) Gibbs state of `H0`.
    Forward,
    /// Starts from the conditional thermal state at `tau`.
    Backward,
}

/// Physical problem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    h0: ComplexMatrix,
    h_tau: ComplexMatrix,
    u_evol: ComplexMatrix,
    beta: f64,
    initial_basis: Option<ComplexMatrix>,
    basis: ComplexMatrix,
}

impl SystemSpec {
    /// Validates and builds a spec measured in the eigenbasis of `h0`.
    pub fn new(
        h0: ComplexMatrix,
        h_tau: ComplexMatrix,
        u_evol: ComplexMatrix,
        beta: f64,
    ) -> Result<Self> {
        check_beta(beta)?;
        let d = h0.dim();
        for m in [&h_tau, &u_evol] {
            if m.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: m.dim() });
            }
        }
        h0.check_hermitian(SPEC_TOL)?;
        h_tau.check_hermitian(SPEC_TOL)?;
        u_evol.check_unitary(SPEC_TOL)?;
        let basis = herm_eig(&h0)?.eigenvectors;
        Ok(Self { h0, h_tau, u_evol, beta, initial_basis: None, basis })
    }

    /// Replaces the measurement basis; columns of `basis` are the `|psi_i>`.
    pub fn with_initial_basis(mut self, basis: ComplexMatrix) -> Result<Self> {
        if basis.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: basis.dim() });
        }
        let deviation = basis.unitary_deviation();
        if deviation > SPEC_TOL {
            return Err(Error::InvalidBasis { deviation });
        }
        self.basis = basis.clone();
        self.initial_basis = Some(basis);
        Ok(self)
    }

    /// Same system at another inverse temperature.
    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        self.beta = beta;
        Ok(self)
    }

    /// The two-qubit instance used for the hardware verification run.
    pub fn paper_preset() -> Self {
        TwoQubitPreset::default().build().expect("preset parameters are valid")
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    /// Initial Hamiltonian.
    pub fn h0(&self) -> &ComplexMatrix {
        &self.h0
    }

    /// Final Hamiltonian.
    pub fn h_tau(&self) -> &ComplexMatrix {
        &self.h_tau
    }

    /// Protocol unitary.
    pub fn u_evol(&self) -> &ComplexMatrix {
        &self.u_evol
    }

    /// Inverse temperature.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// User-supplied measurement basis, if any.
    pub fn initial_basis(&self) -> Option<&ComplexMatrix> {
        self.initial_basis.as_ref()
    }

    /// Whether the measurement basis is the (canonical) eigenbasis of `H0`.
    pub fn uses_default_basis(&self) -> bool {
        self.initial_basis.is_none()
    }

    /// Resolved measurement basis (columns `|psi_i>`).
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// `|psi_i>`.
    pub fn basis_vector(&self, i: usize) -> Vec<Complex64> {
        self.basis.column(i)
    }

    /// Pointer state `U|psi_i>`.
    pub fn pointer_state(&self, i: usize) -> Vec<Complex64> {
        self.u_evol.apply(&self.basis_vector(i))
    }

    /// `e_i = <psi_i|H0|psi_i>`.
    pub fn initial_energies(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.h0.expectation(&self.basis_vector(i))).collect()
    }

    /// `g_i = <psi_i|U^dagger H_tau U|psi_i>`.
    pub fn final_energies(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.h_tau.expectation(&self.pointer_state(i))).collect()
    }

    /// Conditional work values `g_i - e_i`.
    pub fn conditional_work(&self) -> Vec<f64> {
        self.final_energies().iter().zip(self.initial_energies()).map(|(g, e)| g - e).collect()
    }
}

/// Parameters of the two-qubit preset: `H0 = omega (Z I + I Z)`,
/// `H_tau = J (X X)`, `U = exp(-i (Omega tau / 2)(Y I + I Y))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitPreset {
    /// Inverse temperature.
    pub beta: f64,
    /// Local field of `H0`.
    pub omega: f64,
    /// Drive frequency of the protocol.
    pub drive: f64,
    /// Coupling of `H_tau`.
    pub coupling: f64,
    /// Protocol duration.
    pub tau: f64,
}

impl Default for TwoQubitPreset {
    fn default() -> Self {
        Self { beta: 0.5, omega: 2.0, drive: 3.0, coupling: 1.0, tau: core::f64::consts::FRAC_PI_4 }
    }
}

impl TwoQubitPreset {
    /// Builds the spec.
    pub fn build(&self) -> Result<SystemSpec> {
        let (i, x, y, z) = (
            ComplexMatrix::identity(2),
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::pauli_z(),
        );
        let h0 = (&kron(&z, &i)? + &kron(&i, &z)?).scale(c64(self.omega, 0.0));
        let h_tau = kron(&x, &x)?.scale(c64(self.coupling, 0.0));
        let generator = &kron(&y, &i)? + &kron(&i, &y)?;
        let u = mat_fn_hermitian(&generator, c64(0.0, -self.drive * self.tau / 2.0))?;
        SystemSpec::new(h0, h_tau, u, self.beta)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

/// `ln sum_i exp(-beta x_i)`.
pub(crate) fn log_partition(beta: f64, energies: &[f64]) -> f64 {
    let m = energies.iter().fold(f64::NEG_INFINITY, |a, &e| a.max(-beta * e));
    m + energies.iter().map(|&e| (-beta * e - m).exp()).sum::<f64>().ln()
}

/// Normalized Boltzmann weights `exp(-beta x_i) / Z`.
pub(crate) fn boltzmann_weights(beta: f64, energies: &[f64]) -> Vec<f64> {
    let m = energies.iter().fold(f64::NEG_INFINITY, |a, &e| a.max(-beta * e));
    let w: Vec<f64> = energies.iter().map(|&e| (-beta * e - m).exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn mixture(weights: &[f64], vectors: &[Vec<Complex64>]) -> ComplexMatrix {
    let d = vectors[0].len();
    let mut rho = ComplexMatrix::zeros(d);
    for (w, v) in weights.iter().zip(vectors) {
        for i in 0..d {
            for j in 0..d {
                rho[(i, j)] += v[i] * v[j].conj() * *w;
            }
        }
    }
    rho
}

/// Gibbs state `exp(-beta h) / Z` and its partition function `Z`.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<(ComplexMatrix, f64)> {
    check_beta(beta)?;
    let eig = herm_eig(h)?;
    Ok(gibbs_from_eig(&eig, beta))
}

fn gibbs_from_eig(eig: &EigenSystem, beta: f64) -> (ComplexMatrix, f64) {
    let p = boltzmann_weights(beta, &eig.eigenvalues);
    let z = log_partition(beta, &eig.eigenvalues).exp();
    let vectors: Vec<_> = (0..p.len()).map(|j| eig.vector(j)).collect();
    (mixture(&p, &vectors), z)
}

/// Conditional Hamiltonian `G_0` or `G_tau`.
///
/// `G_tau = sum_i g_i U|psi_i><psi_i|U^dagger`, so each pointer state `U|psi_i>`
/// is an eigenvector by construction; `G_0` is the analogue on `|psi_i>` with
/// `e_i`.
pub fn conditional_hamiltonian(spec: &SystemSpec, endpoint: Endpoint) -> ComplexMatrix {
    let (energies, vectors) = pointer_frame(spec, endpoint);
    let mut g = ComplexMatrix::zeros(spec.dim());
    for (e, v) in energies.iter().zip(&vectors) {
        for i in 0..v.len() {
            for j in 0..v.len() {
                g[(i, j)] += v[i] * v[j].conj() * *e;
            }
        }
    }
    g
}

fn pointer_frame(spec: &SystemSpec, endpoint: Endpoint) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let d = spec.dim();
    match endpoint {
        Endpoint::Initial => (spec.initial_energies(), (0..d).map(|i| spec.basis_vector(i)).collect()),
        Endpoint::Final => (spec.final_energies(), (0..d).map(|i| spec.pointer_state(i)).collect()),
    }
}

/// Conditional thermal state `exp(-beta G) / Z~` and `Z~`.
pub fn conditional_thermal_state(spec: &SystemSpec, endpoint: Endpoint) -> (ComplexMatrix, f64) {
    let (energies, vectors) = pointer_frame(spec, endpoint);
    let beta = spec.beta();
    (mixture(&boltzmann_weights(beta, &energies), &vectors), log_partition(beta, &energies).exp())
}

/// One delta-function atom of a conditional work distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorkAtom {
    /// Trajectory label `i`.
    pub index: usize,
    /// Conditional work `W~_i`.
    pub work: f64,
    /// Weight of the atom.
    pub probability: f64,
}

/// Atomic work distribution indexed by trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct WorkDistribution {
    atoms: Vec<WorkAtom>,
}

impl WorkDistribution {
    /// Validates normalization and non-negativity.
    pub fn new(atoms: Vec<WorkAtom>) -> Result<Self> {
        let total: f64 = atoms.iter().map(|a| a.probability).sum();
        if atoms.is_empty()
            || atoms.iter().any(|a| !(a.probability >= 0.0) || !a.work.is_finite())
            || (total - 1.0).abs() > NORMALIZATION_TOL
        {
            return Err(Error::InvalidDistribution);
        }
        Ok(Self { atoms })
    }

    /// Atoms in trajectory order.
    pub fn atoms(&self) -> &[WorkAtom] {
        &self.atoms
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    /// Never true for a validated distribution.
    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Sum of the weights.
    pub fn total(&self) -> f64 {
        self.atoms.iter().map(|a| a.probability).sum()
    }

    /// `sum_i p_i f(W_i)`.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().map(|a| a.probability * f(a.work)).sum()
    }

    /// Display view: atoms with equal work (within `tol`) merged, sorted by work.
    pub fn merged(&self, tol: f64) -> Vec<(f64, f64)> {
        let mut sorted: Vec<(f64, f64)> = self.atoms.iter().map(|a| (a.work, a.probability)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (w, p) in sorted {
            match out.last_mut() {
                Some(last) if (w - last.0).abs() <= tol => last.1 += p,
                _ => out.push((w, p)),
            }
        }
        out
    }
}

/// Forward or backward conditional work distribution.
///
/// Both directions share work values atom by atom; the forward weights are
/// `exp(-beta e_i) / Z~_0` and the backward weights `exp(-beta g_i) / Z~_tau`.
pub fn work_distribution(spec: &SystemSpec, direction: Direction) -> WorkDistribution {
    let e = spec.initial_energies();
    let g = spec.final_energies();
    let weights = match direction {
        Direction::Forward => boltzmann_weights(spec.beta(), &e),
        Direction::Backward => boltzmann_weights(spec.beta(), &g),
    };
    let atoms = (0..spec.dim())
        .map(|i| WorkAtom { index: i, work: g[i] - e[i], probability: weights[i] })
        .collect();
    WorkDistribution { atoms }
}

/// Joint two-time-measurement statistics `p(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TtmDistribution {
    /// Eigenvalues `E_i` of `H0`.
    pub initial_energies: Vec<f64>,
    /// Eigenvalues `E'_j` of `H_tau`.
    pub final_energies: Vec<f64>,
    joint: Vec<f64>,
}

impl TtmDistribution {
    /// `p(i, j) = exp(-beta E_i) / Z_0 * |<E'_j|U|E_i>|^2`.
    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.joint[i * self.final_energies.len() + j]
    }

    /// Work atoms `(E'_j - E_i, p(i, j))` in row-major `(i, j)` order.
    pub fn work_atoms(&self) -> Vec<(f64, f64)> {
        let n = self.final_energies.len();
        self.joint
            .iter()
            .enumerate()
            .map(|(k, &p)| (self.final_energies[k % n] - self.initial_energies[k / n], p))
            .collect()
    }

    /// `<exp(-beta W)>` over the joint distribution.
    pub fn exp_average(&self, beta: f64) -> f64 {
        self.work_atoms().iter().map(|(w, p)| p * (-beta * w).exp()).sum()
    }

    /// Sum of all joint probabilities.
    pub fn total(&self) -> f64 {
        self.joint.iter().sum()
    }
}

/// Two-time-measurement baseline; only defined in the energy eigenbasis.
pub fn ttm_distribution(spec: &SystemSpec) -> Result<TtmDistribution> {
    if !spec.uses_default_basis() {
        return Err(Error::BasisNotSupported);
    }
    let initial = herm_eig(spec.h0())?;
    let fin = herm_eig(spec.h_tau())?;
    let d = spec.dim();
    let p0 = boltzmann_weights(spec.beta(), &initial.eigenvalues);
    let mut joint = vec![0.0; d * d];
    for i in 0..d {
        let evolved = spec.u_evol().apply(&initial.vector(i));
        for j in 0..d {
            joint[i * d + j] = p0[i] * inner(&fin.vector(j), &evolved).norm_sqr();
        }
    }
    Ok(TtmDistribution {
        initial_energies: initial.eigenvalues,
        final_energies: fin.eigenvalues,
        joint,
    })
}

/// Quantum relative entropy `tr rho (ln rho - ln sigma)`.
///
/// Evaluated in the two eigenbases:
/// `sum_a r_a ln r_a - sum_{a,b} r_a |<r_a|s_b>|^2 ln s_b`.
pub fn relative_entropy(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: sigma.dim() });
    }
    let r = herm_eig(rho)?;
    let s = herm_eig(sigma)?;
    let d = rho.dim();
    let mut value = 0.0;
    let mut outside = 0.0;
    for a in 0..d {
        let ra = r.eigenvalues[a];
        if ra <= SUPPORT_CUTOFF {
            continue;
        }
        let va = r.vector(a);
        value += ra * ra.ln();
        for b in 0..d {
            let overlap = inner(&va, &s.vector(b)).norm_sqr();
            let sb = s.eigenvalues[b];
            if sb <= SUPPORT_CUTOFF {
                outside += ra * overlap;
            } else {
                value -= ra * overlap * sb.ln();
            }
        }
    }
    if outside > 1e-10 {
        return Err(Error::SupportMismatch { weight: outside });
    }
    Ok(value)
}

/// Von Neumann entropy `-tr rho ln rho`.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let r = herm_eig(rho)?;
    Ok(-r.eigenvalues.iter().filter(|&&x| x > SUPPORT_CUTOFF).map(|&x| x * x.ln()).sum::<f64>())
}

/// Partition functions, free energy, entropies and work statistics of a spec.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoReport {
    /// `Z_0 = tr exp(-beta H0)`.
    pub z0: f64,
    /// `Z_tau = tr exp(-beta H_tau)`.
    pub z_tau: f64,
    /// `Z~_0 = tr exp(-beta G_0)`.
    pub z_tilde_0: f64,
    /// `Z~_tau = tr exp(-beta G_tau)`.
    pub z_tilde_tau: f64,
    /// `Delta F = -ln(Z_tau / Z_0) / beta`.
    pub delta_f: f64,
    /// `S(rho~_tau || rho_tau^eq)`.
    pub rel_ent_tau: f64,
    /// `S(rho~_0 || rho_0^eq)`.
    pub rel_ent_0: f64,
    /// Average conditional work under the forward distribution.
    pub avg_work: f64,
    /// `avg_work - delta_f`.
    pub excess_work: f64,
    /// Per-trajectory KL divergence of the forward from the backward distribution.
    pub kl_fb: f64,
    /// Work at which the forward/backward atom ratio equals one.
    pub crossing_work: f64,
}

impl ThermoReport {
    /// `Z~_tau / Z~_0`.
    pub fn partition_ratio(&self) -> f64 {
        self.z_tilde_tau / self.z_tilde_0
    }

    /// `p_f(W) / p_b(-W)` for an atom at work `w` (given `beta`).
    pub fn atom_ratio(&self, beta: f64, w: f64) -> f64 {
        self.partition_ratio() * (beta * w).exp()
    }
}

/// Computes every field of [`ThermoReport`].
pub fn thermo_report(spec: &SystemSpec) -> Result<ThermoReport> {
    let beta = spec.beta();
    let d = spec.dim() as f64;
    let e = spec.initial_energies();
    let g = spec.final_energies();
    let h0_eig = herm_eig(spec.h0())?;
    let ht_eig = herm_eig(spec.h_tau())?;

    let ln_z0 = log_partition(beta, &h0_eig.eigenvalues);
    let ln_zt = log_partition(beta, &ht_eig.eigenvalues);
    let ln_zt0 = log_partition(beta, &e);
    let ln_ztt = log_partition(beta, &g);

    let delta_f = if beta > 0.0 {
        -(ln_zt - ln_z0) / beta
    } else {
        (spec.h_tau().trace().re - spec.h0().trace().re) / d
    };

    let (rho0_eq, _) = gibbs_from_eig(&h0_eig, beta);
    let (rhot_eq, _) = gibbs_from_eig(&ht_eig, beta);
    let (rho0_c, _) = conditional_thermal_state(spec, Endpoint::Initial);
    let (rhot_c, _) = conditional_thermal_state(spec, Endpoint::Final);
    let rel_ent_tau = relative_entropy(&rhot_c, &rhot_eq)?;
    let rel_ent_0 = relative_entropy(&rho0_c, &rho0_eq)?;

    let fwd = work_distribution(spec, Direction::Forward);
    let bwd = work_distribution(spec, Direction::Backward);
    let avg_work = fwd.expectation(|w| w);

    let mut kl_fb = 0.0;
    for (i, (pf, pb)) in fwd.atoms().iter().zip(bwd.atoms()).enumerate() {
        if pf.probability == 0.0 {
            continue;
        }
        if pb.probability == 0.0 {
            return Err(Error::DegenerateDistribution { index: i });
        }
        // ln p_f - ln p_b evaluated in log space
        let log_ratio = (-beta * e[i] - ln_zt0) - (-beta * g[i] - ln_ztt);
        kl_fb += pf.probability * log_ratio;
    }

    let crossing_work = if beta > 0.0 {
        delta_f + (rel_ent_tau - rel_ent_0) / beta
    } else {
        g.iter().zip(&e).map(|(a, b)| a - b).sum::<f64>() / d
    };

    Ok(ThermoReport {
        z0: ln_z0.exp(),
        z_tau: ln_zt.exp(),
        z_tilde_0: ln_zt0.exp(),
        z_tilde_tau: ln_ztt.exp(),
        delta_f,
        rel_ent_tau,
        rel_ent_0,
        avg_work,
        excess_work: avg_work - delta_f,
        kl_fb,
        crossing_work,
    })
}
