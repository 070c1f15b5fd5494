//! Numerical thresholds shared across the crate.

/// Max entry of `M - M^dagger` accepted for an input declared Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues in `(-PSD_CLAMP, 0)` are clamped to zero; anything lower is a
/// positivity violation.
pub const PSD_CLAMP: f64 = 1e-10;

/// Trace-one, completeness, unitarity and trace-preservation checks (max entry).
pub const STRUCTURE_TOL: f64 = 1e-9;

/// Eigenvalues below this contribute nothing to an entropy (`0 log 0 = 0`).
pub const ENTROPY_FLOOR: f64 = 1e-12;

/// Slack accepted by a verification record before it counts as a failure.
pub const VERIFY_TOL: f64 = 1e-7;

/// Floor applied to a vanishing h-factor before taking its logarithm.
pub const H_FACTOR_FLOOR: f64 = 1e-300;
