use serde::{Deserialize, Serialize};

use crate::bounds::HFactors;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::parallel::{map_indexed, Execution};
use crate::quantum::{DensityMatrix, Povm};
use crate::tolerances::H_FACTOR_FLOOR;

const GRID_POINTS: usize = 101;
const GOLDEN_WIDTH: f64 = 1e-8;

fn log_inverse(h: f64) -> f64 {
    -h.max(H_FACTOR_FLOOR).log2()
}

/// `-sum_j p_j log2 h_j`, with outcomes of zero probability contributing nothing.
fn weighted_log_inverse(p: &[f64], h: &[f64]) -> f64 {
    p.iter()
        .zip(h)
        .filter(|(&pj, _)| pj > 0.0)
        .map(|(&pj, &hj)| pj * log_inverse(hj))
        .sum()
}

/// State-dependent bound `max{-sum_j p^x_j log2 h_j(X,Z), -sum_k p^z_k log2 h_k(Z,X)}`.
pub fn q_state_with(h: &HFactors, rho_a: &DensityMatrix, x: &Povm, z: &Povm) -> Result<f64> {
    let px = x.probabilities(rho_a)?;
    let pz = z.probabilities(rho_a)?;
    Ok(weighted_log_inverse(&px, &h.xz).max(weighted_log_inverse(&pz, &h.zx)))
}

/// The affine family `Delta(p) = p Delta_XZ + (1-p) Delta_ZX` with
/// `Delta_XZ = sum_j log2(1/h_j(X,Z)) X_j` and likewise for `Delta_ZX`.
#[derive(Clone, Debug)]
pub struct DeltaFamily {
    pub delta_xz: ComplexMatrix,
    pub delta_zx: ComplexMatrix,
}

impl DeltaFamily {
    pub fn new(x: &Povm, z: &Povm, h: &HFactors) -> Result<Self> {
        if x.dim() != z.dim() || h.xz.len() != x.len() || h.zx.len() != z.len() {
            return Err(Error::DimensionMismatch(
                "h-factors do not match the measurements".into(),
            ));
        }
        let weighted = |povm: &Povm, hs: &[f64]| {
            let mut acc = ComplexMatrix::zeros(povm.dim(), povm.dim());
            for (e, &hj) in povm.elements().iter().zip(hs) {
                acc += &e.scale(log_inverse(hj));
            }
            acc.hermitian_part()
        };
        Ok(Self {
            delta_xz: weighted(x, &h.xz),
            delta_zx: weighted(z, &h.zx),
        })
    }

    pub fn at(&self, p: f64) -> ComplexMatrix {
        &self.delta_xz.scale(p) + &self.delta_zx.scale(1.0 - p)
    }

    /// `lambda_min[Delta(p)]`; concave in `p`.
    pub fn lambda_min(&self, p: f64) -> f64 {
        hermitian_eig(&self.at(p))
            .expect("Hermitian by construction")
            .min()
    }
}

/// Maximizer of `lambda_min[Delta(p)]` over `p in [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizedBound {
    pub q: f64,
    pub p_star: f64,
}

/// Maximizes the concave function `p -> lambda_min[Delta(p)]`: a uniform grid
/// of 101 points picks a bracket around the best point, then golden-section
/// search narrows it to width 1e-8. Every evaluated value is itself a valid
/// bound, so the result never drops below the best grid value.
pub fn maximize_lambda_min(family: &DeltaFamily, exec: Execution) -> OptimizedBound {
    let step = 1.0 / (GRID_POINTS - 1) as f64;
    let grid = map_indexed(exec, GRID_POINTS, |i| family.lambda_min(i as f64 * step));
    let (best, &best_val) = grid
        .iter()
        .enumerate()
        .fold((0, &f64::NEG_INFINITY), |acc, (i, v)| {
            if *v > *acc.1 {
                (i, v)
            } else {
                acc
            }
        });
    let mut lo = best.saturating_sub(1) as f64 * step;
    let mut hi = ((best + 1).min(GRID_POINTS - 1)) as f64 * step;

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = family.lambda_min(a);
    let mut fb = family.lambda_min(b);
    while hi - lo > GOLDEN_WIDTH {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = family.lambda_min(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = family.lambda_min(b);
        }
    }
    let mut out = OptimizedBound {
        q: best_val,
        p_star: best as f64 * step,
    };
    for (p, v) in [(a, fa), (b, fb)] {
        if v > out.q {
            out = OptimizedBound { q: v, p_star: p };
        }
    }
    out
}

/// Uniformly spaced samples `(p, lambda_min[Delta(p)])` including both endpoints.
pub fn lambda_min_curve(family: &DeltaFamily, points: usize, exec: Execution) -> Vec<(f64, f64)> {
    let points = points.max(2);
    let step = 1.0 / (points - 1) as f64;
    map_indexed(exec, points, |i| {
        let p = if i == points - 1 {
            1.0
        } else {
            i as f64 * step
        };
        (p, family.lambda_min(p))
    })
}
