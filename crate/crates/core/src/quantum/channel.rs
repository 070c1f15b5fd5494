use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix};
use crate::quantum::{conditional_entropy, DensityMatrix};
use crate::tolerances::STRUCTURE_TOL;

/// Completely positive trace-preserving map in Kraus form; every operator is
/// `d_out x d_in`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| {
            Error::InvalidArgument("a channel needs at least one Kraus operator".into())
        })?;
        let shape = (first.rows(), first.cols());
        if let Some((i, k)) = ops
            .iter()
            .enumerate()
            .find(|(_, k)| (k.rows(), k.cols()) != shape)
        {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator {i} is {}x{}, expected {}x{}",
                k.rows(),
                k.cols(),
                shape.0,
                shape.1
            )));
        }
        let mut total = ComplexMatrix::zeros(shape.1, shape.1);
        for k in &ops {
            total += &k.adjoint().matmul(k);
        }
        let defect = total.max_abs_diff(&ComplexMatrix::identity(shape.1));
        if defect > STRUCTURE_TOL {
            return Err(Error::NotTracePreserving(defect));
        }
        Ok(Self { ops })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            ops: vec![ComplexMatrix::identity(d)],
        }
    }

    /// `rho -> Tr(rho) I/d` via the `d^2` operators `|i><j| / sqrt d`.
    pub fn fully_depolarizing(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let ops = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut k = ComplexMatrix::zeros(d, d);
                k[(i, j)] = num_complex::Complex64::new(s, 0.0);
                k
            })
            .collect();
        Self { ops }
    }

    /// Complete dephasing in the computational basis.
    pub fn dephasing(d: usize) -> Self {
        let ops = (0..d)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(d, d);
                k[(i, i)] = num_complex::Complex64::new(1.0, 0.0);
                k
            })
            .collect();
        Self { ops }
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn input_dim(&self) -> usize {
        self.ops[0].cols()
    }

    pub fn output_dim(&self) -> usize {
        self.ops[0].rows()
    }

    /// Applies the channel to a state on its input space.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel input dimension {}, state dimension {}",
                self.input_dim(),
                rho.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.output_dim(), self.output_dim());
        for k in &self.ops {
            out += &rho.matrix().conjugate_by(k);
        }
        DensityMatrix::from_matrix_unchecked(out, vec![self.output_dim()])
    }

    /// Applies the channel to subsystem `pos` of a composite state.
    pub fn apply_on(&self, rho: &DensityMatrix, pos: usize) -> Result<DensityMatrix> {
        let dims = rho.dims();
        if pos >= dims.len() || dims[pos] != self.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel input dimension {} does not match subsystem {pos} of {dims:?}",
                self.input_dim()
            )));
        }
        let left: usize = dims[..pos].iter().product();
        let right: usize = dims[pos + 1..].iter().product();
        let out_dim = left * self.output_dim() * right;
        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        for k in &self.ops {
            let mut full = k.clone();
            if left > 1 {
                full = tensor_product(&ComplexMatrix::identity(left), &full);
            }
            if right > 1 {
                full = tensor_product(&full, &ComplexMatrix::identity(right));
            }
            out += &rho.matrix().conjugate_by(&full);
        }
        let mut new_dims = dims.to_vec();
        new_dims[pos] = self.output_dim();
        DensityMatrix::from_matrix_unchecked(out, new_dims)
    }

    /// `(I (x) E)(|phi><phi|)` with `|phi>` maximally entangled on `C^d_in (x) C^d_in`.
    pub fn choi_state(&self) -> DensityMatrix {
        let phi = DensityMatrix::maximally_entangled(self.input_dim());
        self.apply_on(&phi, 1)
            .expect("dimensions match by construction")
    }

    /// `-H(A|B)` of the Choi state.
    pub fn coherent_information(&self) -> f64 {
        -conditional_entropy(&self.choi_state(), &[1]).expect("bipartite Choi state")
    }
}
