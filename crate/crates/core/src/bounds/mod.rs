//! Complementarity factors and the uncertainty / exclusion bounds built on them.
//!
//! Bounds on entropies (`q_*`) and on mutual informations (`r_*`) are in bits.

mod complementarity;
mod optimize;

pub use complementarity::{
    complementarity_matrix, h_factors, h_factors_direct, q_mu, q_prime, ComplementaritySummary,
    HFactors,
};
pub use optimize::{
    lambda_min_curve, maximize_lambda_min, q_state_with, DeltaFamily, OptimizedBound,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::Execution;
use crate::quantum::{
    classical_mutual_information, DensityMatrix, KrausChannel, OrthonormalBasis, Povm,
};

/// A pair of measurements on the same system together with their overlap
/// matrix and h-factors, computed once and shared by every bound.
#[derive(Clone, Debug)]
pub struct MeasurementPair {
    x: Povm,
    z: Povm,
    summary: ComplementaritySummary,
    h: HFactors,
}

impl MeasurementPair {
    pub fn new(x: Povm, z: Povm) -> Result<Self> {
        let summary = complementarity_matrix(&x, &z)?;
        let h = if summary.from_bases {
            HFactors {
                xz: summary.row_max.clone(),
                zx: summary.col_max.clone(),
            }
        } else {
            h_factors(&x, &z)?
        };
        Ok(Self { x, z, summary, h })
    }

    pub fn from_bases(x: &OrthonormalBasis, z: &OrthonormalBasis) -> Result<Self> {
        Self::new(Povm::from_basis(x), Povm::from_basis(z))
    }

    pub fn x(&self) -> &Povm {
        &self.x
    }

    pub fn z(&self) -> &Povm {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn summary(&self) -> &ComplementaritySummary {
        &self.summary
    }

    pub fn h_factors(&self) -> &HFactors {
        &self.h
    }

    pub fn q_mu(&self) -> f64 {
        q_mu(&self.summary)
    }

    pub fn q_prime(&self) -> Result<f64> {
        q_prime(&self.summary)
    }

    pub fn q_state(&self, rho_a: &DensityMatrix) -> Result<f64> {
        q_state_with(&self.h, rho_a, &self.x, &self.z)
    }

    pub fn delta_family(&self) -> DeltaFamily {
        DeltaFamily::new(&self.x, &self.z, &self.h).expect("h-factors match by construction")
    }

    pub fn q_opt(&self, exec: Execution) -> OptimizedBound {
        maximize_lambda_min(&self.delta_family(), exec)
    }

    /// `log2(d^2 c_max)`.
    pub fn r_hall(&self) -> f64 {
        let d = self.dim() as f64;
        (d * d * self.summary.c_max).log2()
    }

    /// `log2(d * (sum of the d largest overlaps))`; only defined for two
    /// orthonormal bases.
    pub fn r_grudka(&self) -> Result<f64> {
        if !self.summary.from_bases {
            return Err(Error::Undefined {
                quantity: "r_G",
                reason: "only defined for a pair of orthonormal bases".into(),
            });
        }
        let d = self.dim();
        Ok((d as f64 * self.summary.sum_of_largest(d)).log2())
    }

    /// `(r(X,Z), r(Z,X))` with `r(X,Z) = log2(|Z| sum_j h_j(X,Z))`.
    pub fn r_directional(&self) -> (f64, f64) {
        let xz = (self.z.len() as f64 * self.h.xz.iter().sum::<f64>()).log2();
        let zx = (self.x.len() as f64 * self.h.zx.iter().sum::<f64>()).log2();
        (xz, zx)
    }

    pub fn r(&self) -> f64 {
        let (a, b) = self.r_directional();
        a.min(b)
    }

    pub fn report(&self, state: Option<&DensityMatrix>, exec: Execution) -> Result<BoundReport> {
        let family = self.delta_family();
        let opt = maximize_lambda_min(&family, exec);
        let q_state = state.map(|rho| self.q_state(rho)).transpose()?;
        Ok(BoundReport {
            dim: self.dim(),
            q_mu: self.q_mu(),
            q_prime: self.q_prime().ok(),
            lambda_half: family.lambda_min(0.5),
            q_opt: opt.q,
            p_star: opt.p_star,
            r_hall: self.r_hall(),
            r_grudka: self.r_grudka().ok(),
            r: self.r(),
            q_state,
        })
    }
}

/// State-dependent bound for a measurement pair.
pub fn q_state(rho_a: &DensityMatrix, x: &Povm, z: &Povm) -> Result<f64> {
    q_state_with(&h_factors(x, z)?, rho_a, x, z)
}

/// State-independent bound `max_p lambda_min[Delta(p)]`.
pub fn q_opt(x: &Povm, z: &Povm, exec: Execution) -> Result<OptimizedBound> {
    Ok(MeasurementPair::new(x.clone(), z.clone())?.q_opt(exec))
}

/// Improved exclusion bound `min{r(X,Z), r(Z,X)}`.
pub fn r_bound(x: &Povm, z: &Povm) -> Result<f64> {
    Ok(MeasurementPair::new(x.clone(), z.clone())?.r())
}

pub fn r_hall(cs: &ComplementaritySummary) -> f64 {
    let d = cs.dim as f64;
    (d * d * cs.c_max).log2()
}

pub fn r_grudka(cs: &ComplementaritySummary) -> Result<f64> {
    if !cs.from_bases || cs.c.len() != cs.dim || cs.c.iter().any(|row| row.len() != cs.dim) {
        return Err(Error::Undefined {
            quantity: "r_G",
            reason: "only defined for a pair of orthonormal bases".into(),
        });
    }
    Ok((cs.dim as f64 * cs.sum_of_largest(cs.dim)).log2())
}

/// Every bound for one measurement pair, plus the state-dependent `q(rho_A)`
/// when a state was supplied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub dim: usize,
    pub q_mu: f64,
    /// Absent when the second-largest overlap vanishes.
    pub q_prime: Option<f64>,
    pub lambda_half: f64,
    pub q_opt: f64,
    pub p_star: f64,
    pub r_hall: f64,
    /// Absent unless both measurements are orthonormal bases.
    pub r_grudka: Option<f64>,
    pub r: f64,
    pub q_state: Option<f64>,
}

pub fn bound_report(
    x: &Povm,
    z: &Povm,
    state: Option<&DensityMatrix>,
    exec: Execution,
) -> Result<BoundReport> {
    MeasurementPair::new(x.clone(), z.clone())?.report(state, exec)
}

/// Terms of the channel witness `I(X:X_B) + I(Z:Z_B) - r`, next to the
/// coherent information it lower-bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityWitness {
    pub i_x: f64,
    pub i_z: f64,
    pub r: f64,
    pub witness: f64,
    pub coherent_information: f64,
}

/// Joint distribution of sending `|a_j>` with probability `1/d` and measuring
/// the output in basis `b`.
fn transmission_statistics(
    channel: &KrausChannel,
    a: &OrthonormalBasis,
    b: &OrthonormalBasis,
) -> Result<Vec<Vec<f64>>> {
    let d = a.dim() as f64;
    let out = Povm::from_basis(b);
    (0..a.dim())
        .map(|j| {
            let input = DensityMatrix::pure(&a.vector(j), &[a.dim()])?;
            let p = out.probabilities(&channel.apply(&input)?)?;
            Ok(p.into_iter().map(|v| v / d).collect())
        })
        .collect()
}

/// Capacity witness for a channel probed with input bases `x`, `z` and output
/// bases `x_b`, `z_b`.
pub fn capacity_witness(
    channel: &KrausChannel,
    x: &OrthonormalBasis,
    x_b: &OrthonormalBasis,
    z: &OrthonormalBasis,
    z_b: &OrthonormalBasis,
) -> Result<CapacityWitness> {
    let (d_in, d_out) = (channel.input_dim(), channel.output_dim());
    if x.dim() != d_in || z.dim() != d_in || x_b.dim() != d_out || z_b.dim() != d_out {
        return Err(Error::DimensionMismatch(format!(
            "channel maps dimension {d_in} to {d_out}; bases have dimensions {}, {}, {}, {}",
            x.dim(),
            z.dim(),
            x_b.dim(),
            z_b.dim()
        )));
    }
    let i_x = classical_mutual_information(&transmission_statistics(channel, x, x_b)?);
    let i_z = classical_mutual_information(&transmission_statistics(channel, z, z_b)?);
    let r = MeasurementPair::from_bases(x, z)?.r();
    Ok(CapacityWitness {
        i_x,
        i_z,
        r,
        witness: i_x + i_z - r,
        coherent_information: channel.coherent_information(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use num_complex::Complex64;

    fn example1_pair() -> MeasurementPair {
        let s3 = 1.0 / 3f64.sqrt();
        let s2 = 1.0 / 2f64.sqrt();
        let s6 = 1.0 / 6f64.sqrt();
        let r = |v: f64| Complex64::new(v, 0.0);
        let u = ComplexMatrix::from_rows(&[
            vec![r(s3), r(s3), r(s3)],
            vec![r(s2), r(0.0), r(-s2)],
            vec![r(s6), r(-2.0 * s6), r(s6)],
        ])
        .unwrap();
        MeasurementPair::from_bases(
            &OrthonormalBasis::new(u).unwrap(),
            &OrthonormalBasis::computational(3),
        )
        .unwrap()
    }

    #[test]
    fn example_pair_scalars() {
        let pair = example1_pair();
        let cs = pair.summary();
        assert!((cs.c_max - 2.0 / 3.0).abs() < 1e-12);
        assert!((cs.c_2 - 0.5).abs() < 1e-12);
        assert!((pair.q_mu() - 1.5f64.log2()).abs() < 1e-12);
        assert!((pair.r_hall() - 6f64.log2()).abs() < 1e-12);
        assert!((pair.r_grudka().unwrap() - 5f64.log2()).abs() < 1e-12);
        assert!((pair.r() - 4.5f64.log2()).abs() < 1e-12);
        let q_mixed = pair.q_state(&DensityMatrix::maximally_mixed(&[3])).unwrap();
        assert!((q_mixed - 2.0 / 3.0 * 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn q_prime_requires_second_overlap() {
        let cs = ComplementaritySummary::from_matrix(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], true);
        assert_eq!(cs.c_2, 1.0);
        assert_eq!(q_prime(&cs).unwrap(), 0.0);
        let degenerate = ComplementaritySummary::from_matrix(1, vec![vec![1.0, 0.0]], false);
        assert!(q_prime(&degenerate).is_err());
    }

    #[test]
    fn fourier_pair_is_flat() {
        let pair = MeasurementPair::from_bases(
            &OrthonormalBasis::fourier(3),
            &OrthonormalBasis::computational(3),
        )
        .unwrap();
        let opt = pair.q_opt(Execution::Sequential);
        assert!((opt.q - 3f64.log2()).abs() < 1e-12);
        assert!((pair.r() - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn grudka_refuses_general_povms() {
        let trivial = Povm::trivial(2).unwrap();
        let pair = MeasurementPair::new(trivial, Povm::computational(2)).unwrap();
        assert!(pair.r_grudka().is_err());
        assert!(r_grudka(pair.summary()).is_err());
    }
}
