//! Distinctness of the entry moduli of Haar unitaries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::{map_indexed, Execution};
use crate::quantum::random::{haar_unitary, RandomSource};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericUnitaryStats {
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub gap_threshold: f64,
    /// Fraction of samples whose entry moduli are pairwise separated by more
    /// than `gap_threshold`.
    pub distinct_fraction: f64,
    /// Smallest pairwise gap seen over all samples (absent for `d = 1`).
    pub smallest_gap: Option<f64>,
    /// For `d = 2`, the largest `| |U_00| - |U_11| |` seen; unitarity forces it
    /// to vanish.
    pub qubit_tie_defect: Option<f64>,
    pub pass: bool,
}

fn min_pairwise_gap(values: &mut [f64]) -> Option<f64> {
    values.sort_by(f64::total_cmp);
    values.windows(2).map(|w| w[1] - w[0]).reduce(f64::min)
}

pub fn generic_unitary_scan(
    d: usize,
    samples: usize,
    seed: u64,
    gap_threshold: f64,
    exec: Execution,
) -> Result<GenericUnitaryStats> {
    if d == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "need d >= 1 and at least one sample".into(),
        ));
    }
    let per_sample = map_indexed(exec, samples, |i| -> Result<(Option<f64>, f64)> {
        let u = haar_unitary(d, &mut RandomSource::for_instance(seed, i as u64))?;
        let m = u.unitary();
        let mut moduli: Vec<f64> = m.as_slice().iter().map(|z| z.norm()).collect();
        let tie = if d == 2 {
            (m[(0, 0)].norm() - m[(1, 1)].norm()).abs()
        } else {
            0.0
        };
        Ok((min_pairwise_gap(&mut moduli), tie))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let smallest_gap = per_sample.iter().filter_map(|(g, _)| *g).reduce(f64::min);
    let distinct = per_sample
        .iter()
        .filter(|(g, _)| g.is_none_or(|g| g > gap_threshold))
        .count();
    let distinct_fraction = distinct as f64 / samples as f64;
    let qubit_tie_defect = (d == 2).then(|| per_sample.iter().map(|(_, t)| *t).fold(0.0, f64::max));
    let pass = match d {
        2 => qubit_tie_defect.is_some_and(|t| t <= 1e-12),
        1 => true,
        _ => distinct == samples,
    };
    Ok(GenericUnitaryStats {
        d,
        samples,
        seed,
        gap_threshold,
        distinct_fraction,
        smallest_gap,
        qubit_tie_defect,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_moduli_are_tied() {
        let s = generic_unitary_scan(2, 200, 1, 1e-6, Execution::Sequential).unwrap();
        assert!(s.pass);
        assert_eq!(s.distinct_fraction, 0.0);
    }

    #[test]
    fn single_entry_is_vacuous() {
        let s = generic_unitary_scan(1, 3, 1, 1e-6, Execution::Sequential).unwrap();
        assert!(s.pass);
        assert_eq!(s.smallest_gap, None);
    }
}
