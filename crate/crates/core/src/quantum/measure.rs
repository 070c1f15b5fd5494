//! Measurement maps and purification.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{contract_subsystem, embed_operator, ComplexMatrix};
use crate::quantum::{DensityMatrix, Povm};
use crate::tolerances::ENTROPY_FLOOR;

fn check_povm_slot(rho: &DensityMatrix, povm: &Povm, pos: usize) -> Result<()> {
    let dims = rho.dims();
    if pos >= dims.len() || dims[pos] != povm.dim() {
        return Err(Error::DimensionMismatch(format!(
            "POVM on dimension {} cannot measure subsystem {pos} of {dims:?}",
            povm.dim()
        )));
    }
    Ok(())
}

/// Block-diagonal `sum_j |j><j| (x) blocks[j]` with the register as the
/// leftmost factor.
fn register_block_diagonal(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let r = blocks[0].rows();
    let n = blocks.len();
    let mut out = ComplexMatrix::zeros(n * r, n * r);
    for (j, b) in blocks.iter().enumerate() {
        for a in 0..r {
            for c in 0..r {
                out[(j * r + a, j * r + c)] = b[(a, c)];
            }
        }
    }
    out
}

/// Measures subsystem `pos` with `povm` and replaces it by a classical register
/// of dimension `povm.len()` holding the outcome:
/// `sum_j |j><j| (x) Tr_pos[(X_j (x) I) rho]`. The register sits at index `pos`
/// of the output; the other subsystems keep their order.
pub fn measurement_channel(rho: &DensityMatrix, povm: &Povm, pos: usize) -> Result<DensityMatrix> {
    check_povm_slot(rho, povm, pos)?;
    let dims = rho.dims();
    if dims.len() == 1 {
        let p = povm.probabilities(rho)?;
        return DensityMatrix::from_matrix_unchecked(
            ComplexMatrix::from_real_diagonal(&p),
            vec![p.len()],
        );
    }
    let blocks = povm
        .elements()
        .iter()
        .map(|x| contract_subsystem(rho.matrix(), dims, pos, x).map(|b| b.hermitian_part()))
        .collect::<Result<Vec<_>>>()?;
    let mut front_dims = vec![povm.len()];
    front_dims.extend(
        dims.iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &d)| d),
    );
    let front = DensityMatrix::from_matrix_unchecked(register_block_diagonal(&blocks), front_dims)?;
    if pos == 0 {
        return Ok(front);
    }
    // front order: [reg, s_0..s_{pos-1}, s_{pos+1}..]; move reg to index pos.
    let perm: Vec<usize> = (1..=pos)
        .chain(std::iter::once(0))
        .chain(pos + 1..dims.len())
        .collect();
    front.permute(&perm)
}

/// `sum_j |j><j| (x) sqrt(X_j) rho sqrt(X_j)` where `sqrt(X_j)` acts on
/// subsystem `pos`. The register is prepended as subsystem 0 and every
/// original subsystem moves up by one.
pub fn post_measurement_state(
    rho: &DensityMatrix,
    povm: &Povm,
    pos: usize,
) -> Result<DensityMatrix> {
    check_povm_slot(rho, povm, pos)?;
    let blocks = povm
        .sqrt_elements()
        .iter()
        .map(|s| {
            let full = embed_operator(s, rho.dims(), pos)?;
            Ok(rho.matrix().conjugate_by(&full))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut dims = vec![povm.len()];
    dims.extend_from_slice(rho.dims());
    DensityMatrix::from_matrix_unchecked(register_block_diagonal(&blocks), dims)
}

/// Largest entry of the blocks `<j|rho|j'>`, `j != j'`, of subsystem `pos`.
/// Zero for a state that is classical on that subsystem.
pub fn register_coherence(rho: &DensityMatrix, pos: usize) -> Result<f64> {
    let dims = rho.dims();
    if pos >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "subsystem {pos} out of range for {dims:?}"
        )));
    }
    let stride: usize = dims[pos + 1..].iter().product();
    let d = dims[pos];
    let m = rho.matrix();
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        let a = (i / stride) % d;
        for j in 0..m.cols() {
            let b = (j / stride) % d;
            if a != b {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    Ok(worst)
}

/// Pure state on `S (x) P` whose reduction to `S` is `rho`, with the purifier
/// `P` appended as the last subsystem and `dim P = rank(rho)`.
pub fn purify(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let eig = crate::linalg::psd_eig(rho.matrix())?;
    let support: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > ENTROPY_FLOOR)
        .collect();
    if support.is_empty() {
        return Err(Error::Numerical(
            "state has no support above the entropy floor".into(),
        ));
    }
    let d = rho.dim();
    let r = support.len();
    let mut psi = vec![Complex64::new(0.0, 0.0); d * r];
    for (col, &i) in support.iter().enumerate() {
        let amp = eig.eigenvalues[i].sqrt();
        for s in 0..d {
            psi[s * r + col] = eig.eigenvectors[(s, i)] * amp;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(r);
    DensityMatrix::pure(&psi, &dims)
}
