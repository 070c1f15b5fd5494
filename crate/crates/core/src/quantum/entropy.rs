//! Entropies in bits.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, psd_eig, ComplexMatrix};
use crate::quantum::DensityMatrix;
use crate::tolerances::ENTROPY_FLOOR;

/// `-sum p log2 p`, ignoring entries below the entropy floor.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > ENTROPY_FLOOR)
        .map(|&x| -x * x.log2())
        .sum()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    matrix_entropy(rho.matrix())
}

fn matrix_entropy(m: &ComplexMatrix) -> f64 {
    let eig = hermitian_eig(m).expect("density matrices are Hermitian");
    shannon_entropy(&eig.eigenvalues)
}

fn entropy_of(rho: &DensityMatrix, subsystems: &[usize]) -> Result<f64> {
    if subsystems.len() == rho.num_subsystems() {
        return Ok(von_neumann_entropy(rho));
    }
    Ok(von_neumann_entropy(&rho.reduce(subsystems)?))
}

fn validate_subset(rho: &DensityMatrix, set: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{what} must name at least one subsystem"
        )));
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= rho.num_subsystems()) {
        return Err(Error::InvalidArgument(format!(
            "{what} names subsystem {bad}, state has {}",
            rho.num_subsystems()
        )));
    }
    Ok(s)
}

/// `H(S|C) = H(SC) - H(C)` where `C = conditioning` and `S` is every other
/// subsystem.
pub fn conditional_entropy(rho: &DensityMatrix, conditioning: &[usize]) -> Result<f64> {
    let c = validate_subset(rho, conditioning, "conditioning set")?;
    if c.len() == rho.num_subsystems() {
        return Err(Error::InvalidArgument(
            "conditioning set covers every subsystem".into(),
        ));
    }
    Ok(von_neumann_entropy(rho) - entropy_of(rho, &c)?)
}

/// `I(S:C) = H(S) + H(C) - H(SC)` for disjoint subsystem sets; subsystems in
/// neither set are traced out.
pub fn mutual_information(rho: &DensityMatrix, a: &[usize], b: &[usize]) -> Result<f64> {
    let a = validate_subset(rho, a, "first subsystem set")?;
    let b = validate_subset(rho, b, "second subsystem set")?;
    if a.iter().any(|i| b.contains(i)) {
        return Err(Error::InvalidArgument("subsystem sets overlap".into()));
    }
    let mut ab: Vec<usize> = a.iter().chain(&b).copied().collect();
    ab.sort_unstable();
    Ok(entropy_of(rho, &a)? + entropy_of(rho, &b)? - entropy_of(rho, &ab)?)
}

/// Mutual information of a joint distribution given as `joint[x][y]`.
pub fn classical_mutual_information(joint: &[Vec<f64>]) -> f64 {
    let px: Vec<f64> = joint.iter().map(|row| row.iter().sum()).collect();
    let ny = joint.iter().map(Vec::len).max().unwrap_or(0);
    let py: Vec<f64> = (0..ny)
        .map(|y| {
            joint
                .iter()
                .map(|row| row.get(y).copied().unwrap_or(0.0))
                .sum()
        })
        .collect();
    let flat: Vec<f64> = joint.iter().flatten().copied().collect();
    shannon_entropy(&px) + shannon_entropy(&py) - shannon_entropy(&flat)
}

/// `D(rho||sigma) = Tr rho log2 rho - Tr rho log2 sigma` for PSD `sigma`
/// (not necessarily normalized). Returns `f64::INFINITY` when the support of
/// `rho` is not contained in the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if !sigma.is_square() || sigma.rows() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, second argument is {}x{}",
            rho.dim(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    let r = hermitian_eig(rho.matrix())?;
    let s = psd_eig(sigma)?;
    // overlap[i][k] = |<r_i|s_k>|^2
    let w = r.eigenvectors.adjoint().matmul(&s.eigenvectors);
    let mut cross = 0.0;
    for (i, &lam) in r.eigenvalues.iter().enumerate() {
        if lam <= ENTROPY_FLOOR {
            continue;
        }
        for (k, &mu) in s.eigenvalues.iter().enumerate() {
            let weight = lam * w[(i, k)].norm_sqr();
            if weight <= ENTROPY_FLOOR {
                continue;
            }
            if mu <= ENTROPY_FLOOR {
                return Ok(f64::INFINITY);
            }
            cross += weight * mu.log2();
        }
    }
    Ok(-shannon_entropy(&r.eigenvalues) - cross)
}
