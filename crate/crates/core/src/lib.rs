//! Conditional work statistics for the one-time-measurement (OTM) detailed
//! fluctuation theorem.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`matrix`] and [`eigen`]: dense complex matrices, a cyclic Jacobi
//!   Hermitian eigensolver and spectral matrix functions.
//! - [`thermo`]: system specifications, conditional Hamiltonians, conditional
//!   thermal states, work distributions and the thermodynamic identities built
//!   on them.
//! - [`characteristic`]: characteristic functions in spectral-sum and trace
//!   form, and the forward/backward symmetry ratio.
//! - [`pauli`] and [`interferometry`]: Pauli-string decompositions, Hadamard-test
//!   circuit jobs, exact expectations and shot-sampled noisy estimates.
//! - [`experiment`]: repeated ratio estimation campaigns with running
//!   statistics.
//!
//! IO, file formats, the command line and the thread-parallel campaign runner
//! live in the companion `otm` crate.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod characteristic;
pub mod eigen;
pub mod error;
pub mod experiment;
pub mod interferometry;
pub mod matrix;
pub mod pauli;
pub mod random;
pub mod rng;
pub mod thermo;

pub use characteristic::{cf_spectral, cf_trace, symmetry_ratio, CharacteristicValue, TraceForm};
pub use eigen::{herm_eig, mat_fn_hermitian, EigenSystem};
pub use error::{Error, Result};
pub use experiment::{run_campaign, run_trial, Campaign, CampaignConfig, CampaignResult};
pub use interferometry::{
    build_backward_jobs, build_forward_jobs, hadamard_test_exact, sample_job, BackwardJob, Block,
    CircuitJob, NoiseModel, Observable, ShotEstimate,
};
pub use matrix::{c64, kron, ComplexMatrix};
pub use pauli::{pauli_decompose, PauliDecomposition, PauliString};
pub use thermo::{
    conditional_hamiltonian, conditional_thermal_state, gibbs_state, relative_entropy,
    thermo_report, ttm_distribution, von_neumann_entropy, work_distribution, Direction, Endpoint,
    SystemSpec, ThermoReport, TtmDistribution, WorkAtom, WorkDistribution,
};
