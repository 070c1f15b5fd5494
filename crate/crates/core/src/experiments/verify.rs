//! Both sides of each inequality, evaluated on a concrete instance.
//!
//! Layout conventions: the measured system `A` is subsystem 0. Bipartite
//! states are `[A, B]`, tripartite states are `[A, B, C]`, and register
//! states are `[A, Y]` with `Y` classical.

use crate::bounds::{h_factors_direct, MeasurementPair};
use crate::error::{Error, Result};
use crate::experiments::{Check, VerificationRecord};
use crate::linalg::{
    embed_operator, hermitian_eig, operator_norm_inf, psd_eig, psd_sqrt, ComplexMatrix,
};
use crate::quantum::{
    conditional_entropy, measurement_channel, mutual_information, post_measurement_state, purify,
    register_coherence, relative_entropy, DensityMatrix, Povm,
};
use crate::tolerances::STRUCTURE_TOL;

fn expect_parts(rho: &DensityMatrix, n: usize, layout: &str) -> Result<()> {
    if rho.num_subsystems() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {layout} state, got subsystem dimensions {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

fn expect_bases(pair: &MeasurementPair) -> Result<()> {
    if !pair.summary().from_bases {
        return Err(Error::InvalidArgument(
            "this relation is stated for orthonormal bases; use the POVM form".into(),
        ));
    }
    Ok(())
}

/// `H(M|S)` after measuring `A` (subsystem 0) of a bipartite `rho` with `povm`.
fn measured_conditional_entropy(rho: &DensityMatrix, povm: &Povm) -> Result<f64> {
    conditional_entropy(&measurement_channel(rho, povm, 0)?, &[1])
}

fn measured_mutual_information(rho: &DensityMatrix, povm: &Povm) -> Result<f64> {
    mutual_information(&measurement_channel(rho, povm, 0)?, &[0], &[1])
}

/// Improved and baseline records for the bipartite uncertainty relation.
#[derive(Clone, Debug)]
pub struct BipartiteUr {
    pub improved: VerificationRecord,
    pub baseline: VerificationRecord,
}

/// `H(X|B) + H(Z|B) >= q(rho_A) + H(A|B)` for two orthonormal bases, next to
/// the same inequality with `q_MU` in place of `q(rho_A)`.
pub fn verify_bipartite_ur(
    rho_ab: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<BipartiteUr> {
    expect_parts(rho_ab, 2, "bipartite")?;
    expect_bases(pair)?;
    let lhs = measured_conditional_entropy(rho_ab, pair.x())?
        + measured_conditional_entropy(rho_ab, pair.z())?;
    let h_ab = conditional_entropy(rho_ab, &[1])?;
    let q = pair.q_state(&rho_ab.reduce(&[0])?)?;
    let dims = rho_ab.dims();
    Ok(BipartiteUr {
        improved: VerificationRecord::at_least(Check::UrBipartite, dims, lhs, q + h_ab, tol),
        baseline: VerificationRecord::at_least(
            Check::UrBipartiteMu,
            dims,
            lhs,
            pair.q_mu() + h_ab,
            tol,
        ),
    })
}

/// `H(X|B) + H(Z|C) >= q(rho_A)`.
pub fn verify_tripartite_ur(
    rho_abc: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<VerificationRecord> {
    expect_parts(rho_abc, 3, "tripartite")?;
    let lhs = measured_conditional_entropy(&rho_abc.reduce(&[0, 1])?, pair.x())?
        + measured_conditional_entropy(&rho_abc.reduce(&[0, 2])?, pair.z())?;
    let rhs = pair.q_state(&rho_abc.reduce(&[0])?)?;
    Ok(VerificationRecord::at_least(
        Check::UrTripartite,
        rho_abc.dims(),
        lhs,
        rhs,
        tol,
    ))
}

/// `f = min{H(A|BX), H(A|BZ)}` evaluated on the post-measurement states
/// `sum_j |j><j| (x) sqrt(X_j) rho_AB sqrt(X_j)`.
pub fn memory_correction(rho_ab: &DensityMatrix, pair: &MeasurementPair) -> Result<f64> {
    expect_parts(rho_ab, 2, "bipartite")?;
    // Post-measurement layout is [register, A, B]; condition on register and B.
    let hx = conditional_entropy(&post_measurement_state(rho_ab, pair.x(), 0)?, &[0, 2])?;
    let hz = conditional_entropy(&post_measurement_state(rho_ab, pair.z(), 0)?, &[0, 2])?;
    Ok(hx.min(hz))
}

/// `H(X|B) + H(Z|B) >= q(rho_A) + H(A|B) - f` for general POVMs. Returns the
/// record and the value of `f`.
pub fn verify_bipartite_povm_ur(
    rho_ab: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<(VerificationRecord, f64)> {
    expect_parts(rho_ab, 2, "bipartite")?;
    let lhs = measured_conditional_entropy(rho_ab, pair.x())?
        + measured_conditional_entropy(rho_ab, pair.z())?;
    let f = memory_correction(rho_ab, pair)?;
    let rhs = pair.q_state(&rho_ab.reduce(&[0])?)? + conditional_entropy(rho_ab, &[1])? - f;
    Ok((
        VerificationRecord::at_least(Check::UrPovmBipartite, rho_ab.dims(), lhs, rhs, tol),
        f,
    ))
}

/// `I(X:B) + I(Z:B) <= r - H(A|B)`, with `+ f` on the right for POVMs that are
/// not orthonormal bases. For bases a second record compares against Hall's
/// `r_H - H(A|B)`.
pub fn verify_ier_bipartite(
    rho_ab: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<Vec<VerificationRecord>> {
    expect_parts(rho_ab, 2, "bipartite")?;
    let lhs = measured_mutual_information(rho_ab, pair.x())?
        + measured_mutual_information(rho_ab, pair.z())?;
    let h_ab = conditional_entropy(rho_ab, &[1])?;
    let dims = rho_ab.dims();
    if pair.summary().from_bases {
        Ok(vec![
            VerificationRecord::at_most(Check::IerBipartite, dims, lhs, pair.r() - h_ab, tol),
            VerificationRecord::at_most(Check::IerHall, dims, lhs, pair.r_hall() - h_ab, tol),
        ])
    } else {
        let f = memory_correction(rho_ab, pair)?;
        Ok(vec![VerificationRecord::at_most(
            Check::IerBipartite,
            dims,
            lhs,
            pair.r() - h_ab + f,
            tol,
        )])
    }
}

/// `I(X:B) + I(Z:C) <= r`.
pub fn verify_ier_tripartite(
    rho_abc: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<VerificationRecord> {
    expect_parts(rho_abc, 3, "tripartite")?;
    let lhs = measured_mutual_information(&rho_abc.reduce(&[0, 1])?, pair.x())?
        + measured_mutual_information(&rho_abc.reduce(&[0, 2])?, pair.z())?;
    Ok(VerificationRecord::at_most(
        Check::IerTripartite,
        rho_abc.dims(),
        lhs,
        pair.r(),
        tol,
    ))
}

/// `I(X:Y) + I(Z:Y) <= r` for a state classical on `Y` (subsystem 1).
pub fn verify_ier_register(
    rho_ay: &DensityMatrix,
    pair: &MeasurementPair,
    tol: f64,
) -> Result<VerificationRecord> {
    expect_parts(rho_ay, 2, "system-register")?;
    let coherence = register_coherence(rho_ay, 1)?;
    if coherence > STRUCTURE_TOL {
        return Err(Error::NotClassical(coherence));
    }
    let lhs = measured_mutual_information(rho_ay, pair.x())?
        + measured_mutual_information(rho_ay, pair.z())?;
    Ok(VerificationRecord::at_most(
        Check::IerRegister,
        rho_ay.dims(),
        lhs,
        pair.r(),
        tol,
    ))
}

fn largest_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eig(&m.hermitian_part())
        .expect("Hermitian by construction")
        .max()
}

/// `||sum_k Z_k s Z_k|| <= max_k ||sqrt(Z_k) s sqrt(Z_k)||` for PSD `s`.
pub fn pinching_lemma_check(
    sigma: &ComplexMatrix,
    z: &Povm,
    tol: f64,
) -> Result<VerificationRecord> {
    psd_eig(sigma)?;
    if sigma.rows() != z.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, POVM acts on dimension {}",
            sigma.rows(),
            sigma.cols(),
            z.dim()
        )));
    }
    let mut pinched = ComplexMatrix::zeros(z.dim(), z.dim());
    for zk in z.elements() {
        pinched += &sigma.conjugate_by(zk);
    }
    let lhs = largest_eigenvalue(&pinched);
    let rhs = z
        .sqrt_elements()
        .iter()
        .map(|s| largest_eigenvalue(&sigma.conjugate_by(s)))
        .fold(0.0, f64::max);
    Ok(VerificationRecord::at_most(
        Check::Pinching,
        &[z.dim()],
        lhs,
        rhs,
        tol,
    ))
}

/// `max_j ||sum_k Z_k X_j Z_k|| <= c_max`, with the h-factors always computed
/// from their definition.
pub fn h_factor_check(pair: &MeasurementPair, tol: f64) -> Result<VerificationRecord> {
    let h = h_factors_direct(pair.x(), pair.z())?;
    let lhs = h.xz.iter().copied().fold(0.0, f64::max);
    Ok(VerificationRecord::at_most(
        Check::HFactorVsOverlap,
        &[pair.dim()],
        lhs,
        pair.summary().c_max,
        tol,
    ))
}

/// `||S + T|| <= max{||S||, ||T||} + ||sqrt(S) sqrt(T)||` for PSD `S`, `T`.
pub fn sum_norm_lemma_check(
    s: &ComplexMatrix,
    t: &ComplexMatrix,
    tol: f64,
) -> Result<VerificationRecord> {
    if s.rows() != t.rows() || !s.is_square() || !t.is_square() {
        return Err(Error::DimensionMismatch(
            "operands must be square of equal size".into(),
        ));
    }
    let (ss, st) = (psd_sqrt(s)?, psd_sqrt(t)?);
    let lhs = operator_norm_inf(&(s + t));
    let rhs = operator_norm_inf(s).max(operator_norm_inf(t)) + operator_norm_inf(&ss.matmul(&st));
    Ok(VerificationRecord::at_most(
        Check::SumNorm,
        &[s.rows()],
        lhs,
        rhs,
        tol,
    ))
}

/// `H(Z|C) >= D(rho_AB || sum_k Z_k rho_AB Z_k)` where `C` purifies `rho_AB`
/// and `Z` acts on `A` (subsystem 0). Returns `None` when the relative entropy
/// is infinite, so the caller can count the instance as skipped.
pub fn relative_entropy_lemma_check(
    rho_ab: &DensityMatrix,
    z: &Povm,
    tol: f64,
) -> Result<Option<VerificationRecord>> {
    if rho_ab.dims()[0] != z.dim() {
        return Err(Error::DimensionMismatch(format!(
            "POVM acts on dimension {}, subsystem 0 has dimension {}",
            z.dim(),
            rho_ab.dims()[0]
        )));
    }
    let mut sigma = ComplexMatrix::zeros(rho_ab.dim(), rho_ab.dim());
    for zk in z.elements() {
        sigma += &rho_ab
            .matrix()
            .conjugate_by(&embed_operator(zk, rho_ab.dims(), 0)?);
    }
    let rhs = relative_entropy(rho_ab, &sigma.hermitian_part())?;
    if !rhs.is_finite() {
        return Ok(None);
    }
    let pure = purify(rho_ab)?;
    let n = pure.num_subsystems();
    let rho_ac = pure.reduce(&[0, n - 1])?;
    let lhs = measured_conditional_entropy(&rho_ac, z)?;
    Ok(Some(VerificationRecord::at_least(
        Check::RelativeEntropy,
        rho_ab.dims(),
        lhs,
        rhs,
        tol,
    )))
}

/// Every link of `q_MU <= q' <= lambda_min[Delta(1/2)] <= q <= q(rho)` for each
/// state, and of `r <= r_G <= r_H`, for a pair of orthonormal bases.
pub fn verify_bound_chain(
    pair: &MeasurementPair,
    states: &[DensityMatrix],
    exec: crate::Execution,
    tol: f64,
) -> Result<Vec<VerificationRecord>> {
    expect_bases(pair)?;
    let d = [pair.dim()];
    let report = pair.report(None, exec)?;
    let q_prime = pair.q_prime()?;
    let mut out = vec![
        VerificationRecord::at_most(Check::BoundChain, &d, report.q_mu, q_prime, tol),
        VerificationRecord::at_most(Check::BoundChain, &d, q_prime, report.lambda_half, tol),
        VerificationRecord::at_most(Check::BoundChain, &d, report.lambda_half, report.q_opt, tol),
    ];
    for rho in states {
        out.push(VerificationRecord::at_most(
            Check::BoundChain,
            &d,
            report.q_opt,
            pair.q_state(rho)?,
            tol,
        ));
    }
    let r_g = pair.r_grudka()?;
    out.push(VerificationRecord::at_most(
        Check::ExclusionChain,
        &d,
        report.r,
        r_g,
        tol,
    ));
    out.push(VerificationRecord::at_most(
        Check::ExclusionChain,
        &d,
        r_g,
        report.r_hall,
        tol,
    ));
    Ok(out)
}
