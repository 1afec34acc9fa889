//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the numerical and simulation routines.
#[allow(missing_docs)]
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e}, tol = {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("matrix is not unitary (max |M^dagger M - I| = {deviation:e}, tol = {tol:e})")]
    NotUnitary { deviation: f64, tol: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("product dimension {dim} exceeds the cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwoDim(usize),
    #[error("matrix data has {len} entries, not a square number")]
    NotSquare { len: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("inverse temperature must be finite and non-negative, got {0}")]
    InvalidBeta(f64),
    #[error("initial basis is not orthonormal (max deviation {deviation:e})")]
    InvalidBasis { deviation: f64 },
    #[error("operation requires the default energy eigenbasis")]
    BasisNotSupported,
    #[error("backward probability vanishes at atom {index} while the forward one does not")]
    DegenerateDistribution { index: usize },
    #[error("distribution is not normalized or has negative weights")]
    InvalidDistribution,
    #[error("first state has weight {weight:e} outside the support of the second")]
    SupportMismatch { weight: f64 },
    #[error("division by a value of modulus {modulus:e}")]
    DivisionNearZero { modulus: f64 },
    #[error("invalid noise model: {0}")]
    InvalidNoise(&'static str),
    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
