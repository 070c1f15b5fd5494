//! Entropic uncertainty and information exclusion bounds with quantum memory.
//!
//! The crate computes complementarity factors and bounds for pairs of
//! measurements (orthonormal bases or general POVMs), evaluates the entropic
//! quantities they constrain, and runs randomized checks of the inequalities.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod parallel;
pub mod quantum;
pub mod tolerances;

pub use error::{Error, Result};
pub use parallel::Execution;
