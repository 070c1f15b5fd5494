//! Seeded randomness and the random ensembles used by the sweeps.
//!
//! * Haar unitaries: QR of a complex Ginibre matrix with the phases of the
//!   triangular factor fixed to be positive. Gram-Schmidt produces exactly that
//!   normalization, so the columns of the orthonormalized Ginibre matrix are
//!   Haar distributed.
//! * Mixed states: Hilbert-Schmidt measure, i.e. the reduction of a Haar pure
//!   state on the system doubled with an equal-dimension ancilla.
//! * POVMs: `X_i = S^{-1/2} G_i S^{-1/2}` with `G_i` Wishart and `S = sum G_i`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{inverse_sqrt, partial_trace, ComplexMatrix};
use crate::quantum::{DensityMatrix, KrausChannel, OrthonormalBasis, Povm};

const POVM_RETRIES: usize = 10;

/// Deterministic stream of uniform and normal variates.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent source for instance `index` of a sweep seeded with `seed`.
    pub fn for_instance(seed: u64, index: u64) -> Self {
        Self::new(child_seed(seed, index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circularly symmetric complex normal with unit variance.
    pub fn complex_normal(&mut self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.normal() * s, self.normal() * s)
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }
}

/// SplitMix64 finalizer over `(seed, index)`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Orthonormalizes the columns in place (modified Gram-Schmidt, two passes).
/// Returns `false` if a column is numerically dependent on the previous ones.
fn orthonormalize_columns(m: &mut ComplexMatrix) -> bool {
    let (n, k) = (m.rows(), m.cols());
    for j in 0..k {
        for _pass in 0..2 {
            for i in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    proj += m[(r, i)].conj() * m[(r, j)];
                }
                for r in 0..n {
                    let sub = proj * m[(r, i)];
                    m[(r, j)] -= sub;
                }
            }
        }
        let norm: f64 = (0..n).map(|r| m[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return false;
        }
        for r in 0..n {
            m[(r, j)] /= norm;
        }
    }
    true
}

/// Haar-random unitary of dimension `d`.
pub fn haar_unitary(d: usize, rng: &mut RandomSource) -> Result<OrthonormalBasis> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    loop {
        let mut g = rng.ginibre(d, d);
        if orthonormalize_columns(&mut g) {
            return OrthonormalBasis::new(g);
        }
    }
}

/// Haar-random `rows x cols` isometry (`rows >= cols`).
pub fn haar_isometry(rows: usize, cols: usize, rng: &mut RandomSource) -> Result<ComplexMatrix> {
    if cols == 0 || rows < cols {
        return Err(Error::InvalidArgument(format!(
            "no {rows}x{cols} isometry exists"
        )));
    }
    loop {
        let mut g = rng.ginibre(rows, cols);
        if orthonormalize_columns(&mut g) {
            return Ok(g);
        }
    }
}

/// Haar-random unit vector in `C^d`.
pub fn random_unit_vector(d: usize, rng: &mut RandomSource) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| rng.complex_normal()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random pure state on a composite system.
pub fn random_pure_state(dims: &[usize], rng: &mut RandomSource) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    DensityMatrix::pure(&random_unit_vector(d, rng), dims)
}

/// Hilbert-Schmidt random mixed state (purification dimension = system dimension).
pub fn random_density_matrix(dims: &[usize], rng: &mut RandomSource) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    let psi = random_unit_vector(d * d, rng);
    let joint = ComplexMatrix::outer(&psi, &psi);
    let reduced = partial_trace(&joint, &[d, d], &[0])?;
    DensityMatrix::from_matrix_unchecked(reduced.hermitian_part(), dims.to_vec())
}

/// Random PSD matrix `G G^dagger` with `G` a `d x rank` Ginibre matrix.
pub fn random_psd(d: usize, rank: usize, rng: &mut RandomSource) -> ComplexMatrix {
    let g = rng.ginibre(d, rank.max(1));
    g.matmul(&g.adjoint()).hermitian_part()
}

/// Random POVM with `n` full-rank elements on `C^d`.
pub fn random_povm(d: usize, n: usize, rng: &mut RandomSource) -> Result<Povm> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument(
            "a POVM needs a positive dimension and element count".into(),
        ));
    }
    if n == 1 {
        return Povm::trivial(d);
    }
    for _ in 0..POVM_RETRIES {
        let gs: Vec<ComplexMatrix> = (0..n).map(|_| random_psd(d, d, rng)).collect();
        let mut total = ComplexMatrix::zeros(d, d);
        for g in &gs {
            total += g;
        }
        let Ok(w) = inverse_sqrt(&total, 1e-8) else {
            continue;
        };
        let elements: Vec<ComplexMatrix> = gs
            .iter()
            .map(|g| g.conjugate_by(&w).hermitian_part())
            .collect();
        return Povm::new(elements);
    }
    Err(Error::Numerical(format!(
        "random POVM normalization was singular {POVM_RETRIES} times in a row"
    )))
}

/// Rank-one projective measurement in a Haar-random basis.
pub fn random_basis_povm(d: usize, rng: &mut RandomSource) -> Result<Povm> {
    Ok(Povm::from_basis(&haar_unitary(d, rng)?))
}

/// Random channel from a Haar isometry `C^{d_in} -> C^{d_out} (x) C^{n_kraus}`.
pub fn random_channel(
    d_in: usize,
    d_out: usize,
    n_kraus: usize,
    rng: &mut RandomSource,
) -> Result<KrausChannel> {
    let v = haar_isometry(d_out * n_kraus, d_in, rng)?;
    // Row index of v is (out, env) with env fastest; Kraus op e collects rows (*, e).
    let ops = (0..n_kraus)
        .map(|e| ComplexMatrix::from_fn(d_out, d_in, |o, i| v[(o * n_kraus + e, i)]))
        .collect();
    KrausChannel::new(ops)
}
