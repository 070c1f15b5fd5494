use crate::error::{Error, Result};
use crate::linalg::{psd_eig, psd_sqrt, ComplexMatrix};
use crate::quantum::{DensityMatrix, OrthonormalBasis};
use crate::tolerances::STRUCTURE_TOL;

/// Finite POVM on `C^dim`. Square roots of the effects are cached since every
/// complementarity factor and post-measurement state needs them.
#[derive(Clone, Debug)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    sqrt_elements: Vec<ComplexMatrix>,
    rank_one_projective: bool,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidArgument("a POVM needs at least one element".into()))?;
        let dim = first.rows();
        let mut cleaned = Vec::with_capacity(elements.len());
        let mut sqrt_elements = Vec::with_capacity(elements.len());
        let mut rank_one_projective = true;
        for (j, e) in elements.iter().enumerate() {
            if !e.is_square() || e.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "element {j} is {}x{}, expected {dim}x{dim}",
                    e.rows(),
                    e.cols()
                )));
            }
            let eig = psd_eig(e)?;
            let h = e.hermitian_part();
            rank_one_projective &= is_rank_one_projector(&eig.eigenvalues);
            sqrt_elements.push(psd_sqrt(e)?);
            cleaned.push(h);
        }
        let povm = Self {
            dim,
            elements: cleaned,
            sqrt_elements,
            rank_one_projective,
        };
        let defect = povm.completeness_defect();
        if defect > STRUCTURE_TOL {
            return Err(Error::IncompletePovm(defect));
        }
        Ok(povm)
    }

    /// Rank-one projectors onto the basis vectors.
    pub fn from_basis(basis: &OrthonormalBasis) -> Self {
        let elements: Vec<ComplexMatrix> = (0..basis.dim()).map(|j| basis.projector(j)).collect();
        Self {
            dim: basis.dim(),
            sqrt_elements: elements.clone(),
            elements,
            rank_one_projective: true,
        }
    }

    pub fn computational(d: usize) -> Self {
        Self::from_basis(&OrthonormalBasis::computational(d))
    }

    /// The single-outcome measurement `{I}`.
    pub fn trivial(d: usize) -> Result<Self> {
        Self::new(vec![ComplexMatrix::identity(d)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn sqrt_elements(&self) -> &[ComplexMatrix] {
        &self.sqrt_elements
    }

    /// True when every element is a rank-one projector, i.e. the POVM is a
    /// measurement in an orthonormal basis.
    pub fn is_rank_one_projective(&self) -> bool {
        self.rank_one_projective
    }

    pub fn completeness_defect(&self) -> f64 {
        let mut total = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.elements {
            total += e;
        }
        total.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Outcome distribution `p_j = Tr(X_j rho)` for a state on `C^dim`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {}, POVM acts on {}",
                rho.dim(),
                self.dim
            )));
        }
        Ok(self
            .elements
            .iter()
            .map(|e| e.trace_product(rho.matrix()).re.max(0.0))
            .collect())
    }

    /// Elementwise square root of every effect, recomputed (for callers that
    /// built elements by hand and want to cross-check the cache).
    pub fn recompute_sqrt(&self) -> Result<Vec<ComplexMatrix>> {
        self.elements.iter().map(psd_sqrt).collect()
    }
}

fn is_rank_one_projector(eigenvalues: &[f64]) -> bool {
    let n = eigenvalues.len();
    let top = eigenvalues[n - 1];
    (top - 1.0).abs() <= STRUCTURE_TOL
        && eigenvalues[..n - 1]
            .iter()
            .all(|l| l.abs() <= STRUCTURE_TOL)
}
