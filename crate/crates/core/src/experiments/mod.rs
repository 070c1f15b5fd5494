//! Numerical checks of the uncertainty and exclusion relations, the worked
//! qutrit example, and the growing-gap construction.

mod example;
mod gap;
mod generic;
mod record;
pub mod sweeps;
mod verify;

pub use example::{
    example1_bases, example1_pair, example1_report, example1_unitary, fig1_curve,
    haar_average_q_state, MonteCarloEstimate,
};
pub use gap::{
    gap_construction, gap_scan, gap_unitary, least_squares_slope, unbiased_vector,
    unbiasedness_defect, GapScanPoint,
};
pub use generic::{generic_unitary_scan, GenericUnitaryStats};
pub use record::{Check, Relation, VerificationRecord};
pub use sweeps::{run_suite, StatePreset, Suite, SuiteOutcome, SweepConfig};
pub use verify::{
    h_factor_check, memory_correction, pinching_lemma_check, relative_entropy_lemma_check,
    sum_norm_lemma_check, verify_bipartite_povm_ur, verify_bipartite_ur, verify_bound_chain,
    verify_ier_bipartite, verify_ier_register, verify_ier_tripartite, verify_tripartite_ur,
    BipartiteUr,
};
