//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)`. The complex entry
//! `a_pq = |a_pq| e^{i phi}` is first rotated onto the real axis by the phase
//! `diag(1, e^{-i phi})`, after which the classical real Jacobi rotation applies.
//! Sweeps stop once the off-diagonal mass falls below `(EPS_REL * ||A||_F)^2`.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::HERMITIAN_TOL;

const MAX_SWEEPS: usize = 100;
const EPS_REL: f64 = 1e-15;

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V diag(f(lambda)) V^dagger`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &w) in fl.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian to within [`HERMITIAN_TOL`] (max entry of
/// `M - M^dagger`); it is symmetrized before the rotations start.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(jacobi(m.hermitian_part()))
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(m).map(|e| e.eigenvalues)
}

fn jacobi(mut a: ComplexMatrix) -> HermitianEigen {
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = (EPS_REL * scale).powi(2);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let phase_bar = phase.conj();
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // A <- A G, V <- V G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - phase_bar * akq * s;
        a[(k, q)] = akp * s + phase_bar * akq * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - phase_bar * vkq * s;
        v[(k, q)] = vkp * s + phase_bar * vkq * c;
    }
    // A <- G^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - phase * aqk * s;
        a[(q, k)] = apk * s + phase * aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
}
