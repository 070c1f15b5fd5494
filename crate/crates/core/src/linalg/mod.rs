//! Dense complex linear algebra for small operators.
//!
//! Subsystem convention: in a composite space with dimensions `dims`, subsystem
//! `0` is the leftmost tensor factor, so a basis index decomposes as
//! `i = ((i_0 * dims[1] + i_1) * dims[2] + i_2) ...`.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eig, hermitian_eigenvalues, HermitianEigen};
pub use matrix::ComplexMatrix;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::PSD_CLAMP;

/// Largest singular value.
pub fn operator_norm_inf(m: &ComplexMatrix) -> f64 {
    if m.is_square() && m.hermiticity_defect() <= 1e-14 * m.max_abs().max(1.0) {
        let e = hermitian_eig(m).expect("checked Hermitian");
        return e.min().abs().max(e.max().abs());
    }
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.adjoint())
    } else {
        m.adjoint().matmul(m)
    };
    let e = hermitian_eig(&gram).expect("Gram matrix is Hermitian");
    e.max().max(0.0).sqrt()
}

/// Eigendecomposition of a PSD matrix with small negative eigenvalues clamped
/// to zero; anything below `-PSD_CLAMP` is rejected.
pub fn psd_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut e = hermitian_eig(m)?;
    if e.min() < -PSD_CLAMP {
        return Err(Error::NotPositive(e.min()));
    }
    for l in &mut e.eigenvalues {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    Ok(e)
}

/// Principal square root of a PSD matrix.
/// Eigenvalues within rounding noise of zero are treated as exact zeros so
/// that the square root of a projector stays a projector.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = psd_eig(m)?;
    let cutoff = 64.0 * f64::EPSILON * e.max().max(1.0);
    Ok(
        e.reconstruct_with(|l| if l <= cutoff { 0.0 } else { l.sqrt() })
            .hermitian_part(),
    )
}

/// `M^{-1/2}` for a positive definite matrix; fails when the smallest
/// eigenvalue is below `floor`.
pub fn inverse_sqrt(m: &ComplexMatrix, floor: f64) -> Result<ComplexMatrix> {
    let e = hermitian_eig(m)?;
    if e.min() < floor {
        return Err(Error::Numerical(format!(
            "matrix is singular to working precision (min eigenvalue {:.3e})",
            e.min()
        )));
    }
    Ok(e.reconstruct_with(|l| 1.0 / l.sqrt()).hermitian_part())
}

/// Kronecker product: `(A (x) B)[(i*rB + k), (j*cB + l)] = A[i,j] B[k,l]`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Tensor product of a list of matrices, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    let mut it = factors.into_iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, m| tensor_product(&acc, m))
}

fn check_dims(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "invalid subsystem dimensions {dims:?}"
        )));
    }
    let total: usize = dims.iter().product();
    if total != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} multiply to {total}, matrix is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Offsets of every multi-index over `subsystems`, enumerated in row-major
/// order of those subsystems.
fn offsets(dims: &[usize], strides: &[usize], subsystems: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in subsystems {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &base in &out {
            for digit in 0..dims[s] {
                next.push(base + digit * strides[s]);
            }
        }
        out = next;
    }
    out
}

/// Reduced operator on the subsystems listed in `keep` (kept in ascending
/// order); all other subsystems are traced out.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_dims(m, dims)?;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::InvalidArgument(
            "partial trace must keep at least one subsystem".into(),
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::InvalidArgument(format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let st = strides(dims);
    let kept_off = offsets(dims, &st, &keep);
    let traced_off = offsets(dims, &st, &traced);
    let n = kept_off.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, &ri) in kept_off.iter().enumerate() {
        for (j, &cj) in kept_off.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &t in &traced_off {
                acc += m[(ri + t, cj + t)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Reorders tensor factors: output subsystem `i` is input subsystem `perm[i]`.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix> {
    check_dims(m, dims)?;
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..dims.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "{perm:?} is not a permutation"
        )));
    }
    let st = strides(dims);
    // Enumerating the input offsets in the output's subsystem order lists, for
    // each output index, the input index it comes from.
    let src = offsets(dims, &st, perm);
    let n = src.len();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| m[(src[i], src[j])]))
}

/// `I (x) ... (x) op (x) ... (x) I` with `op` on subsystem `pos`.
pub fn embed_operator(op: &ComplexMatrix, dims: &[usize], pos: usize) -> Result<ComplexMatrix> {
    if pos >= dims.len() || !op.is_square() || op.rows() != dims[pos] {
        return Err(Error::DimensionMismatch(format!(
            "cannot place a {}x{} operator on subsystem {pos} of {dims:?}",
            op.rows(),
            op.cols()
        )));
    }
    let left: usize = dims[..pos].iter().product();
    let right: usize = dims[pos + 1..].iter().product();
    let mut out = op.clone();
    if left > 1 {
        out = tensor_product(&ComplexMatrix::identity(left), &out);
    }
    if right > 1 {
        out = tensor_product(&out, &ComplexMatrix::identity(right));
    }
    Ok(out)
}

/// `Tr_pos[(op_pos (x) I) M]`: the operator on the remaining subsystems
/// obtained by contracting subsystem `pos` against `op`.
pub fn contract_subsystem(
    m: &ComplexMatrix,
    dims: &[usize],
    pos: usize,
    op: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    check_dims(m, dims)?;
    if dims.len() < 2 {
        return Err(Error::InvalidArgument(
            "contraction needs at least two subsystems".into(),
        ));
    }
    if pos >= dims.len() || !op.is_square() || op.rows() != dims[pos] {
        return Err(Error::DimensionMismatch(format!(
            "cannot contract a {}x{} operator with subsystem {pos} of {dims:?}",
            op.rows(),
            op.cols()
        )));
    }
    let st = strides(dims);
    let rest: Vec<usize> = (0..dims.len()).filter(|&i| i != pos).collect();
    let rest_off = offsets(dims, &st, &rest);
    let d = dims[pos];
    let n = rest_off.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (i, &ri) in rest_off.iter().enumerate() {
        for (j, &cj) in rest_off.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            // sum_{a,b} op[b,a] M[(a,r),(b,s)]
            for a in 0..d {
                for b in 0..d {
                    let w = op[(b, a)];
                    if w.re == 0.0 && w.im == 0.0 {
                        continue;
                    }
                    acc += w * m[(ri + a * st[pos], cj + b * st[pos])];
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
