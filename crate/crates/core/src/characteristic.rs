//! Characteristic functions of the conditional work distributions.
//!
//! Two independent routes are provided: [`cf_spectral`] sums over the atoms
//! of a [`WorkDistribution`], [`cf_trace`] evaluates the operator trace forms
//! with matrix exponentials of the conditional Hamiltonians. The backward
//! function is only ever needed at the shifted argument `-u + i beta`, where
//! the trace form uses `exp(-beta G_0)` and `exp(beta G_tau)` explicitly.

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use crate::eigen::herm_eig;
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};
use crate::thermo::{conditional_hamiltonian, Direction, Endpoint, SystemSpec, WorkDistribution};

/// Modulus below which the backward characteristic function is not divided by.
pub const DIVISION_FLOOR: f64 = 1e-14;

/// A characteristic function evaluated at `u_arg`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharacteristicValue {
    /// Argument (may be complex, e.g. `-u + i beta`).
    pub u_arg: Complex64,
    /// Function value.
    pub value: Complex64,
}

/// Which trace form [`cf_trace`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceForm {
    /// `C~_f(u)`.
    Forward,
    /// `C~_b(-u + i beta)`.
    BackwardShifted,
}

/// Spectral sum: forward `sum_i p_i e^{i z W_i}`, backward `sum_i q_i e^{-i z W_i}`.
pub fn cf_spectral(
    dist: &WorkDistribution,
    u_arg: Complex64,
    direction: Direction,
) -> Result<CharacteristicValue> {
    if dist.is_empty() || (dist.total() - 1.0).abs() > crate::thermo::NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution);
    }
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Backward => -1.0,
    };
    let value = dist
        .atoms()
        .iter()
        .map(|a| (c64(0.0, sign) * u_arg * a.work).exp() * a.probability)
        .sum();
    Ok(CharacteristicValue { u_arg, value })
}

/// Operator trace forms:
///
/// - forward: `tr[U^dagger e^{iuG_tau} U e^{-iuG_0} rho~_0]`
/// - backward-shifted: `tr[U e^{-iuG_0} e^{-beta G_0} U^dagger e^{iuG_tau} e^{beta G_tau} rho~_tau]`
///
/// In the default basis `G_0 = H0` and `rho~_0` is the Gibbs state.
pub fn cf_trace(spec: &SystemSpec, u: f64, which: TraceForm) -> Result<CharacteristicValue> {
    let beta = spec.beta();
    let g0 = herm_eig(&conditional_hamiltonian(spec, Endpoint::Initial))?;
    let gt = herm_eig(&conditional_hamiltonian(spec, Endpoint::Final))?;
    let uu = spec.u_evol();
    let ud = uu.adjoint();
    let fwd_phase = gt.map(|l| c64(0.0, u * l).exp());
    let back_phase = g0.map(|l| c64(0.0, -u * l).exp());
    match which {
        TraceForm::Forward => {
            let rho0 = normalized(g0.map(|l| c64((-beta * l).exp(), 0.0)));
            let m = &(&(&(&ud * &fwd_phase) * uu) * &back_phase) * &rho0;
            Ok(CharacteristicValue { u_arg: c64(u, 0.0), value: m.trace() })
        }
        TraceForm::BackwardShifted => {
            let boltz0 = g0.map(|l| c64((-beta * l).exp(), 0.0));
            let anti_t = gt.map(|l| c64((beta * l).exp(), 0.0));
            let rhot = normalized(gt.map(|l| c64((-beta * l).exp(), 0.0)));
            let left = &(&(uu * &back_phase) * &boltz0) * &ud;
            let right = &(&fwd_phase * &anti_t) * &rhot;
            let m = &left * &right;
            Ok(CharacteristicValue { u_arg: c64(-u, beta), value: m.trace() })
        }
    }
}

fn normalized(m: ComplexMatrix) -> ComplexMatrix {
    let t = m.trace().re;
    m.scale(c64(1.0 / t, 0.0))
}

/// `C~_f(u) / C~_b(-u + i beta)`; equals `Z~_tau / Z~_0` for every real `u`.
pub fn symmetry_ratio(spec: &SystemSpec, u: f64) -> Result<Complex64> {
    let f = cf_trace(spec, u, TraceForm::Forward)?.value;
    let b = cf_trace(spec, u, TraceForm::BackwardShifted)?.value;
    divide(f, b)
}

/// Complex division guarded against a vanishing denominator.
pub fn divide(num: Complex64, den: Complex64) -> Result<Complex64> {
    let modulus = den.norm();
    if modulus <= DIVISION_FLOOR {
        return Err(Error::DivisionNearZero { modulus });
    }
    Ok(num / den)
}
