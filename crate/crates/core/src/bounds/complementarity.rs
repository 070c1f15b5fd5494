use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::quantum::Povm;

/// Overlap matrix `c[j][k]` between the outcomes of two measurements (row `j`
/// indexes X, column `k` indexes Z) and the scalars derived from it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplementaritySummary {
    pub dim: usize,
    pub c: Vec<Vec<f64>>,
    pub c_max: f64,
    /// Second entry of the multiset of overlaps sorted in descending order, so
    /// ties give `c_2 == c_max`.
    pub c_2: f64,
    pub row_max: Vec<f64>,
    pub col_max: Vec<f64>,
    /// Both measurements are rank-one projective (orthonormal bases).
    pub from_bases: bool,
}

impl ComplementaritySummary {
    pub fn from_matrix(dim: usize, c: Vec<Vec<f64>>, from_bases: bool) -> Self {
        let row_max: Vec<f64> = c
            .iter()
            .map(|row| row.iter().copied().fold(0.0, f64::max))
            .collect();
        let ncols = c.first().map_or(0, Vec::len);
        let col_max: Vec<f64> = (0..ncols)
            .map(|k| c.iter().map(|row| row[k]).fold(0.0, f64::max))
            .collect();
        let mut all: Vec<f64> = c.iter().flatten().copied().collect();
        all.sort_by(|a, b| b.total_cmp(a));
        let c_max = all.first().copied().unwrap_or(0.0);
        let c_2 = all.get(1).copied().unwrap_or(c_max);
        Self {
            dim,
            c,
            c_max,
            c_2,
            row_max,
            col_max,
            from_bases,
        }
    }

    /// Sum of the `n` largest overlaps.
    pub fn sum_of_largest(&self, n: usize) -> f64 {
        let mut all: Vec<f64> = self.c.iter().flatten().copied().collect();
        all.sort_by(|a, b| b.total_cmp(a));
        all.iter().take(n).sum()
    }
}

fn check_same_dim(x: &Povm, z: &Povm) -> Result<()> {
    if x.dim() != z.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measurements act on dimensions {} and {}",
            x.dim(),
            z.dim()
        )));
    }
    Ok(())
}

fn largest_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eig(&m.hermitian_part())
        .expect("Hermitian by construction")
        .max()
}

/// `c_jk = ||sqrt(Z_k) X_j sqrt(Z_k)||`, which for rank-one projectors is
/// `|<x_j|z_k>|^2`. Entries are clamped to `[0, 1]`.
pub fn complementarity_matrix(x: &Povm, z: &Povm) -> Result<ComplementaritySummary> {
    check_same_dim(x, z)?;
    let from_bases = x.is_rank_one_projective() && z.is_rank_one_projective();
    let c: Vec<Vec<f64>> = x
        .elements()
        .iter()
        .map(|xj| {
            z.elements()
                .iter()
                .zip(z.sqrt_elements())
                .map(|(zk, sk)| {
                    let v = if from_bases {
                        xj.trace_product(zk).re
                    } else {
                        largest_eigenvalue(&xj.conjugate_by(sk))
                    };
                    v.clamp(0.0, 1.0)
                })
                .collect()
        })
        .collect();
    Ok(ComplementaritySummary::from_matrix(x.dim(), c, from_bases))
}

/// `log2(1 / c_max)`.
pub fn q_mu(cs: &ComplementaritySummary) -> f64 {
    -cs.c_max.log2()
}

/// `q_MU + (1 - sqrt c_max)/2 * log2(c_max / c_2)`; undefined when `c_2 = 0`.
pub fn q_prime(cs: &ComplementaritySummary) -> Result<f64> {
    if cs.c_2 <= 0.0 {
        return Err(Error::Undefined {
            quantity: "q'",
            reason: "the second-largest overlap c_2 is zero".into(),
        });
    }
    Ok(q_mu(cs) + 0.5 * (1.0 - cs.c_max.sqrt()) * (cs.c_max / cs.c_2).log2())
}

/// Complementarity factors `h_j(X,Z) = ||sum_k Z_k X_j Z_k||` and
/// `h_k(Z,X) = ||sum_j X_j Z_k X_j||`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HFactors {
    pub xz: Vec<f64>,
    pub zx: Vec<f64>,
}

fn directional_h(a: &Povm, b: &Povm) -> Vec<f64> {
    a.elements()
        .iter()
        .map(|aj| {
            let mut sum = ComplexMatrix::zeros(a.dim(), a.dim());
            for bk in b.elements() {
                sum += &aj.conjugate_by(bk);
            }
            largest_eigenvalue(&sum).clamp(0.0, 1.0)
        })
        .collect()
}

/// Computes the h-factors directly, except for two orthonormal bases where
/// they reduce to the row and column maxima of the overlap matrix.
pub fn h_factors(x: &Povm, z: &Povm) -> Result<HFactors> {
    check_same_dim(x, z)?;
    if x.is_rank_one_projective() && z.is_rank_one_projective() {
        let cs = complementarity_matrix(x, z)?;
        return Ok(HFactors {
            xz: cs.row_max,
            zx: cs.col_max,
        });
    }
    Ok(HFactors {
        xz: directional_h(x, z),
        zx: directional_h(z, x),
    })
}

/// Direct evaluation of both h-factor lists, never taking the projective
/// shortcut. Exposed so the shortcut can be cross-checked.
pub fn h_factors_direct(x: &Povm, z: &Povm) -> Result<HFactors> {
    check_same_dim(x, z)?;
    Ok(HFactors {
        xz: directional_h(x, z),
        zx: directional_h(z, x),
    })
}
