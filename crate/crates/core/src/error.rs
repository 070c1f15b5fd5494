use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Validation variants name the invariant that failed and carry the measured
/// defect so callers can report how far off the input was.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |M - M^dagger| entry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("density matrix trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("POVM elements do not sum to the identity (max deviation {0:.3e})")]
    IncompletePovm(f64),

    #[error("matrix is not unitary (max |U^dagger U - I| entry {0:.3e})")]
    NotUnitary(f64),

    #[error("channel is not trace preserving (max |sum K^dagger K - I| entry {0:.3e})")]
    NotTracePreserving(f64),

    #[error("register is not classical (max off-diagonal block entry {0:.3e})")]
    NotClassical(f64),

    #[error("{quantity} is undefined: {reason}")]
    Undefined {
        quantity: &'static str,
        reason: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
