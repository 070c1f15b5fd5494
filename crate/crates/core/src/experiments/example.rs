//! The qutrit basis pair used as the running worked example, and Monte-Carlo
//! averages of the state-dependent bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{lambda_min_curve, BoundReport, MeasurementPair};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::parallel::{map_indexed, Execution};
use crate::quantum::random::{random_pure_state, RandomSource};
use crate::quantum::{DensityMatrix, OrthonormalBasis};

/// Columns are the X basis vectors; Z is the computational basis.
pub fn example1_unitary() -> ComplexMatrix {
    let r = |v: f64| Complex64::new(v, 0.0);
    let (s3, s2, s6) = (1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt());
    ComplexMatrix::from_rows(&[
        vec![r(s3), r(s3), r(s3)],
        vec![r(s2), r(0.0), r(-s2)],
        vec![r(s6), r(-(2.0f64 / 3.0).sqrt()), r(s6)],
    ])
    .expect("rectangular by construction")
}

pub fn example1_bases() -> (OrthonormalBasis, OrthonormalBasis) {
    (
        OrthonormalBasis::new(example1_unitary()).expect("unitary"),
        OrthonormalBasis::computational(3),
    )
}

pub fn example1_pair() -> MeasurementPair {
    let (x, z) = example1_bases();
    MeasurementPair::from_bases(&x, &z).expect("same dimension")
}

/// All bounds for the example pair, with `q(rho_A)` evaluated at `I/3`.
pub fn example1_report(exec: Execution) -> BoundReport {
    example1_pair()
        .report(Some(&DensityMatrix::maximally_mixed(&[3])), exec)
        .expect("valid example")
}

/// `(p, lambda_min[Delta(p)])` at `points` evenly spaced values of `p`.
pub fn fig1_curve(points: usize, exec: Execution) -> Vec<(f64, f64)> {
    lambda_min_curve(&example1_pair().delta_family(), points, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Average of `q(|psi><psi|)` over Haar-random pure states.
pub fn haar_average_q_state(
    pair: &MeasurementPair,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<MonteCarloEstimate> {
    let d = pair.dim();
    let values = map_indexed(exec, samples, |i| {
        let psi = random_pure_state(&[d], &mut RandomSource::for_instance(seed, i as u64))?;
        pair.q_state(&psi)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / n).sqrt(),
        samples,
        seed,
    })
}
