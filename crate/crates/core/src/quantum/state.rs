use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, partial_trace, permute_subsystems, tensor_product, ComplexMatrix,
};
use crate::tolerances::{HERMITIAN_TOL, PSD_CLAMP, STRUCTURE_TOL};

/// Unit-trace PSD operator on a composite space with dimensions `dims`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace one and positivity, then stores the
    /// symmetrized matrix.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let state = Self::from_matrix_unchecked(matrix, dims)?;
        let tr = state.matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURE_TOL || tr.im.abs() > STRUCTURE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let eig = hermitian_eig(&state.matrix)?;
        if eig.min() < -PSD_CLAMP {
            return Err(Error::NotPositive(eig.min()));
        }
        Ok(state)
    }

    /// Checks shape and Hermiticity only; used for operators that are states by
    /// construction (reductions, channel outputs).
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dimensions {dims:?} do not match a {}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
            dims,
        })
    }

    /// `|psi><psi|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64], dims: &[usize]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::from_matrix_unchecked(ComplexMatrix::outer(&v, &v), dims.to_vec())
    }

    pub fn maximally_mixed(dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        Self {
            matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64),
            dims: dims.to_vec(),
        }
    }

    /// `(1/sqrt d) sum_i |i>|i>` on `C^d (x) C^d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let amp = 1.0 / (d as f64).sqrt();
        let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            psi[i * d + i] = Complex64::new(amp, 0.0);
        }
        Self::pure(&psi, &[d, d]).expect("valid by construction")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Reduced state on `keep`, in ascending subsystem order.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let mut k = keep.to_vec();
        k.sort_unstable();
        k.dedup();
        let m = partial_trace(&self.matrix, &self.dims, &k)?;
        let dims = k.iter().map(|&i| self.dims[i]).collect();
        Self::from_matrix_unchecked(m, dims)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            matrix: tensor_product(&self.matrix, &other.matrix),
            dims,
        }
    }

    /// Reorders subsystems: new subsystem `i` is old subsystem `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let m = permute_subsystems(&self.matrix, &self.dims, perm)?;
        let dims = perm.iter().map(|&i| self.dims[i]).collect();
        Self::from_matrix_unchecked(m, dims)
    }

    /// Treats the whole space as a single subsystem.
    pub fn flattened(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            dims: vec![self.dim()],
        }
    }

    /// Same matrix with a different factorization of the dimension.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        Self::from_matrix_unchecked(self.matrix.clone(), dims)
    }

    /// `sum_i w_i rho_i` for a probability vector `w`.
    pub fn mixture(weights: &[f64], states: &[Self]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch(
                "weights and states differ in length".into(),
            ));
        }
        let mut m = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dims != first.dims {
                return Err(Error::DimensionMismatch(
                    "mixture components differ in dimensions".into(),
                ));
            }
            m += &s.matrix.scale(*w);
        }
        Self::new(m, first.dims.clone())
    }
}

/// Orthonormal basis stored as the unitary whose column `j` is `|x_j>`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis {
    unitary: ComplexMatrix,
}

impl OrthonormalBasis {
    pub fn new(unitary: ComplexMatrix) -> Result<Self> {
        if !unitary.is_square() {
            return Err(Error::NotSquare {
                rows: unitary.rows(),
                cols: unitary.cols(),
            });
        }
        let defect = unitary.isometry_defect();
        if defect > STRUCTURE_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self { unitary })
    }

    pub fn computational(d: usize) -> Self {
        Self {
            unitary: ComplexMatrix::identity(d),
        }
    }

    /// `F[j,k] = omega^{jk} / sqrt d`, `omega = exp(2 pi i / d)`.
    pub fn fourier(d: usize) -> Self {
        Self {
            unitary: fourier_matrix(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.unitary.rows()
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.unitary.column(j)
    }

    pub fn projector(&self, j: usize) -> ComplexMatrix {
        let v = self.vector(j);
        ComplexMatrix::outer(&v, &v)
    }

    /// Basis with complex-conjugated vectors.
    pub fn conjugate(&self) -> Self {
        Self {
            unitary: self.unitary.conj(),
        }
    }
}

pub fn fourier_matrix(d: usize) -> ComplexMatrix {
    let norm = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, d, |j, k| {
        let angle = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
        Complex64::from_polar(norm, angle)
    })
}
