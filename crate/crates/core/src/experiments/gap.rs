//! A family of basis pairs whose gap `q' - q_MU` grows like `log2 d`.
//!
//! `U = U_r U_0` with `U_0 = 1 (+) F_{d-1}` and `U_r = exp(-i theta H_r)`,
//! `H_r = |y><0| + |0><y|`, where `|y>` lives on the last `d-1` coordinates and
//! is unbiased to both the standard and the Fourier basis there. Since
//! `H_r^3 = H_r`, `U_r = (I - H_r^2) + H_r^2 cos(theta) - i H_r sin(theta)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{q_mu, q_prime, ComplementaritySummary};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::parallel::{map_indexed, Execution};
use crate::quantum::fourier_matrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapScanPoint {
    pub d: usize,
    pub theta: f64,
    pub c_max: f64,
    pub c_2: f64,
    /// `q' - q_MU` in bits.
    pub delta: f64,
    /// Large-`d` estimate `(1 - cos theta)/2 * log2(d cos^2 theta)`.
    pub predicted_delta: f64,
}

/// Zadoff-Chu sequence of length `n`: `exp(i pi k (k + n mod 2) / n) / sqrt n`.
/// Every entry has modulus `1/sqrt n` and so does every entry of its discrete
/// Fourier transform.
pub fn unbiased_vector(n: usize) -> Vec<Complex64> {
    let parity = (n % 2) as u64;
    let norm = 1.0 / (n as f64).sqrt();
    (0..n as u64)
        .map(|k| {
            // k (k + parity) is even, so reduce mod 2n before scaling to keep
            // the phase argument small.
            let num = (k * (k + parity)) % (2 * n as u64);
            Complex64::from_polar(norm, std::f64::consts::PI * num as f64 / n as f64)
        })
        .collect()
}

/// Largest deviation of `|<e_j|y>|^2` and `|<f_j|y>|^2` from `1/n` over the
/// standard and Fourier bases.
pub fn unbiasedness_defect(y: &[Complex64]) -> f64 {
    let n = y.len();
    let target = 1.0 / n as f64;
    let f = fourier_matrix(n).adjoint();
    let fy = f.apply(y);
    y.iter()
        .chain(&fy)
        .map(|z| (z.norm_sqr() - target).abs())
        .fold(0.0, f64::max)
}

fn check_args(d: usize, theta: f64) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "the construction needs d >= 3, got {d}"
        )));
    }
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, pi/2), got {theta}"
        )));
    }
    Ok(())
}

pub fn gap_unitary(d: usize, theta: f64) -> Result<ComplexMatrix> {
    check_args(d, theta)?;
    let n = d - 1;
    let y_small = unbiased_vector(n);
    let defect = unbiasedness_defect(&y_small);
    if defect > 1e-9 {
        return Err(Error::Numerical(format!(
            "unbiased vector defect {defect:.3e}"
        )));
    }
    let mut y = vec![Complex64::new(0.0, 0.0); d];
    y[1..].copy_from_slice(&y_small);
    let mut e0 = vec![Complex64::new(0.0, 0.0); d];
    e0[0] = Complex64::new(1.0, 0.0);

    let h = &ComplexMatrix::outer(&y, &e0) + &ComplexMatrix::outer(&e0, &y);
    let h2 = h.matmul(&h);
    let u_r = &(&(&ComplexMatrix::identity(d) - &h2) + &h2.scale(theta.cos()))
        - &h.scale_complex(Complex64::new(0.0, theta.sin()));

    let f = fourier_matrix(n);
    let u_0 = ComplexMatrix::from_fn(d, d, |i, j| match (i, j) {
        (0, 0) => Complex64::new(1.0, 0.0),
        (0, _) | (_, 0) => Complex64::new(0.0, 0.0),
        _ => f[(i - 1, j - 1)],
    });
    Ok(u_r.matmul(&u_0))
}

/// Overlaps `|U_jk|^2` of the constructed pair and the resulting gap.
pub fn gap_construction(d: usize, theta: f64) -> Result<GapScanPoint> {
    let u = gap_unitary(d, theta)?;
    let c: Vec<Vec<f64>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|k| u[(j, k)].norm_sqr().clamp(0.0, 1.0))
                .collect()
        })
        .collect();
    let cs = ComplementaritySummary::from_matrix(d, c, true);
    let cos = theta.cos();
    Ok(GapScanPoint {
        d,
        theta,
        c_max: cs.c_max,
        c_2: cs.c_2,
        delta: q_prime(&cs)? - q_mu(&cs),
        predicted_delta: 0.5 * (1.0 - cos) * (d as f64 * cos * cos).log2(),
    })
}

pub fn gap_scan(dims: &[usize], theta: f64, exec: Execution) -> Result<Vec<GapScanPoint>> {
    map_indexed(exec, dims.len(), |i| gap_construction(dims[i], theta))
        .into_iter()
        .collect()
}

/// Ordinary least-squares slope of `y` against `x`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
