//! Randomized sweeps over the inequalities, one suite per family of checks.
//!
//! Every instance draws from its own `RandomSource` seeded by mixing the suite
//! seed with the instance index, so a sweep gives identical records whether it
//! runs sequentially or in parallel, and any record can be replayed from the
//! seed it carries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::MeasurementPair;
use crate::error::{Error, Result};
use crate::experiments::generic::{generic_unitary_scan, GenericUnitaryStats};
use crate::experiments::verify::{
    h_factor_check, pinching_lemma_check, relative_entropy_lemma_check, sum_norm_lemma_check,
    verify_bipartite_povm_ur, verify_bipartite_ur, verify_ier_bipartite, verify_ier_register,
    verify_ier_tripartite, verify_tripartite_ur,
};
use crate::experiments::VerificationRecord;
use crate::linalg::ComplexMatrix;
use crate::parallel::{map_indexed, Execution};
use crate::quantum::random::{
    child_seed, haar_unitary, random_basis_povm, random_density_matrix, random_povm, random_psd,
    random_pure_state, RandomSource,
};
use crate::quantum::{DensityMatrix, Povm};
use crate::tolerances::VERIFY_TOL;

pub const SMOKE_TRIALS: usize = 50;
pub const FULL_TRIALS: usize = 500;

/// Minimal gap between entry moduli for a unitary to count as generic.
pub const GENERIC_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    UrBipartite,
    UrTripartite,
    UrPovm,
    Ier,
    Pinching,
    SumNorm,
    RelEntropy,
    GenericUnitary,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::UrBipartite,
        Suite::UrTripartite,
        Suite::UrPovm,
        Suite::Ier,
        Suite::Pinching,
        Suite::SumNorm,
        Suite::RelEntropy,
        Suite::GenericUnitary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::UrBipartite => "ur-bipartite",
            Suite::UrTripartite => "ur-tripartite",
            Suite::UrPovm => "ur-povm",
            Suite::Ier => "ier",
            Suite::Pinching => "pinching",
            Suite::SumNorm => "sum-norm",
            Suite::RelEntropy => "rel-entropy",
            Suite::GenericUnitary => "generic-unitary",
        }
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }

    fn default_dims(self) -> Vec<Vec<usize>> {
        match self {
            Suite::UrBipartite | Suite::UrPovm | Suite::Ier => {
                vec![vec![2, 2], vec![3, 3], vec![4, 4]]
            }
            Suite::UrTripartite => vec![vec![2, 2, 2], vec![3, 2, 2], vec![3, 3, 3]],
            Suite::Pinching | Suite::SumNorm => (2..=5).map(|d| vec![d]).collect(),
            Suite::RelEntropy => vec![vec![2, 2], vec![3, 2], vec![2, 3], vec![3, 3]],
            Suite::GenericUnitary => vec![vec![3], vec![2]],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Which bipartite states the state-based suites draw.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatePreset {
    /// Hilbert-Schmidt random mixed states.
    #[default]
    Random,
    /// The maximally entangled state; needs equal local dimensions.
    MaxEntangled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub trials: usize,
    /// Overrides the suite's dimension grid; instance `i` uses entry
    /// `i % dims.len()`.
    pub dims: Option<Vec<Vec<usize>>>,
    pub tol: f64,
    pub state: StatePreset,
    #[serde(skip)]
    pub exec: Execution,
}

impl SweepConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        Self {
            seed,
            trials,
            dims: None,
            tol: VERIFY_TOL,
            state: StatePreset::Random,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub records: Vec<VerificationRecord>,
    /// Instances dropped because a quantity was undefined (infinite relative
    /// entropy).
    pub skipped: usize,
    pub generic: Vec<GenericUnitaryStats>,
}

impl SuiteOutcome {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
            + self.generic.iter().filter(|g| !g.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Smallest slack over all records, or `None` without records.
    pub fn min_slack(&self) -> Option<f64> {
        self.records.iter().map(|r| r.slack).reduce(f64::min)
    }
}

/// Splits `dims` into bipartite and tripartite entries, falling back to the
/// defaults for either kind the override does not provide.
fn split_by_arity(dims: &[Vec<usize>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let two: Vec<_> = dims.iter().filter(|d| d.len() == 2).cloned().collect();
    let three: Vec<_> = dims.iter().filter(|d| d.len() == 3).cloned().collect();
    (
        if two.is_empty() {
            Suite::Ier.default_dims()
        } else {
            two
        },
        if three.is_empty() {
            Suite::UrTripartite.default_dims()
        } else {
            three
        },
    )
}

fn validate_dims(suite: Suite, dims: &[Vec<usize>]) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|d| d.is_empty() || d.contains(&0)) {
        return Err(Error::InvalidArgument(
            "dimension lists must be non-empty and positive".into(),
        ));
    }
    let arity_ok = |d: &Vec<usize>| match suite {
        Suite::UrBipartite | Suite::UrPovm | Suite::RelEntropy => d.len() == 2,
        Suite::UrTripartite => d.len() == 3,
        Suite::Ier => d.len() == 2 || d.len() == 3,
        Suite::Pinching | Suite::SumNorm | Suite::GenericUnitary => d.len() == 1,
    };
    if let Some(bad) = dims.iter().find(|d| !arity_ok(d)) {
        return Err(Error::InvalidArgument(format!(
            "dimensions {bad:?} do not fit suite {suite}"
        )));
    }
    Ok(())
}

fn bipartite_state(
    dims: &[usize],
    preset: StatePreset,
    rng: &mut RandomSource,
) -> Result<DensityMatrix> {
    match preset {
        StatePreset::Random => random_density_matrix(dims, rng),
        StatePreset::MaxEntangled if dims[0] == dims[1] => {
            Ok(DensityMatrix::maximally_entangled(dims[0]))
        }
        StatePreset::MaxEntangled => Err(Error::InvalidArgument(format!(
            "a maximally entangled state needs equal local dimensions, got {dims:?}"
        ))),
    }
}

fn basis_pair(d: usize, rng: &mut RandomSource) -> Result<MeasurementPair> {
    MeasurementPair::from_bases(&haar_unitary(d, rng)?, &haar_unitary(d, rng)?)
}

fn povm_pair(d: usize, lo: usize, hi: usize, rng: &mut RandomSource) -> Result<MeasurementPair> {
    let nx = rng.int_in(lo, hi);
    let nz = rng.int_in(lo, hi);
    MeasurementPair::new(random_povm(d, nx, rng)?, random_povm(d, nz, rng)?)
}

/// `sum_y p_y rho_y (x) |y><y|` with Dirichlet(1) weights and Hilbert-Schmidt
/// random `rho_y`.
pub fn random_cq_state(d_a: usize, d_y: usize, rng: &mut RandomSource) -> Result<DensityMatrix> {
    let raw: Vec<f64> = (0..d_y).map(|_| -(1.0 - rng.uniform()).ln()).collect();
    let total: f64 = raw.iter().sum();
    let mut m = ComplexMatrix::zeros(d_a * d_y, d_a * d_y);
    for (y, w) in raw.iter().enumerate() {
        let rho = random_density_matrix(&[d_a], rng)?;
        let mut proj = ComplexMatrix::zeros(d_y, d_y);
        proj[(y, y)] = num_complex::Complex64::new(w / total, 0.0);
        m += &crate::linalg::tensor_product(rho.matrix(), &proj);
    }
    DensityMatrix::new(m, vec![d_a, d_y])
}

/// What one instance contributes to a suite.
struct InstanceResult {
    records: Vec<VerificationRecord>,
    skipped: usize,
}

impl InstanceResult {
    fn of(records: Vec<VerificationRecord>) -> Self {
        Self {
            records,
            skipped: 0,
        }
    }
}

fn run_instance(
    suite: Suite,
    i: usize,
    seed: u64,
    dims: &[Vec<usize>],
    cfg: &SweepConfig,
) -> Result<InstanceResult> {
    let rng = &mut RandomSource::new(seed);
    let tol = cfg.tol;
    let pick = |list: &[Vec<usize>]| list[i % list.len()].clone();
    match suite {
        Suite::UrBipartite => {
            let d = pick(dims);
            let rho = bipartite_state(&d, cfg.state, rng)?;
            let out = verify_bipartite_ur(&rho, &basis_pair(d[0], rng)?, tol)?;
            Ok(InstanceResult::of(vec![out.improved, out.baseline]))
        }
        Suite::UrTripartite => {
            let d = pick(dims);
            let rho = random_pure_state(&d, rng)?;
            let pair = povm_pair(d[0], 2, 5, rng)?;
            Ok(InstanceResult::of(vec![verify_tripartite_ur(
                &rho, &pair, tol,
            )?]))
        }
        Suite::UrPovm => {
            let d = pick(dims);
            let rho = bipartite_state(&d, cfg.state, rng)?;
            let pair = povm_pair(d[0], 2, 5, rng)?;
            Ok(InstanceResult::of(vec![
                verify_bipartite_povm_ur(&rho, &pair, tol)?.0,
            ]))
        }
        Suite::Ier => {
            let (two, three) = split_by_arity(dims);
            let d2 = pick(&two);
            let rho = bipartite_state(&d2, cfg.state, rng)?;
            let mut records = verify_ier_bipartite(&rho, &basis_pair(d2[0], rng)?, tol)?;

            let d3 = pick(&three);
            let rho = random_pure_state(&d3, rng)?;
            records.push(verify_ier_tripartite(
                &rho,
                &povm_pair(d3[0], 2, 5, rng)?,
                tol,
            )?);

            let rho = random_cq_state(d2[0], d2[1], rng)?;
            records.push(verify_ier_register(
                &rho,
                &povm_pair(d2[0], 2, 5, rng)?,
                tol,
            )?);
            Ok(InstanceResult::of(records))
        }
        Suite::Pinching => {
            let d = pick(dims)[0];
            let rank = rng.int_in(1, d);
            let sigma = random_psd(d, rank, rng);
            let nz = rng.int_in(2, 6);
            let z = random_povm(d, nz, rng)?;
            let pinching = pinching_lemma_check(&sigma, &z, tol)?;
            let nx = rng.int_in(2, 6);
            let pair = MeasurementPair::new(random_povm(d, nx, rng)?, z)?;
            Ok(InstanceResult::of(vec![
                pinching,
                h_factor_check(&pair, tol)?,
            ]))
        }
        Suite::SumNorm => {
            let d = pick(dims)[0];
            let (rs, rt) = (rng.int_in(1, d), rng.int_in(1, d));
            let s = random_psd(d, rs, rng);
            let t = random_psd(d, rt, rng);
            Ok(InstanceResult::of(vec![sum_norm_lemma_check(&s, &t, tol)?]))
        }
        Suite::RelEntropy => {
            let d = pick(dims);
            let rho = bipartite_state(&d, cfg.state, rng)?;
            let z: Povm = random_basis_povm(d[0], rng)?;
            Ok(match relative_entropy_lemma_check(&rho, &z, tol)? {
                Some(r) => InstanceResult::of(vec![r]),
                None => InstanceResult {
                    records: vec![],
                    skipped: 1,
                },
            })
        }
        Suite::GenericUnitary => unreachable!("handled without per-instance records"),
    }
}

/// Runs `cfg.trials` instances of `suite`.
pub fn run_suite(suite: Suite, cfg: &SweepConfig) -> Result<SuiteOutcome> {
    let dims = cfg.dims.clone().unwrap_or_else(|| suite.default_dims());
    validate_dims(suite, &dims)?;
    let suite_seed = child_seed(cfg.seed, 0x5EED_0000 + suite.index());

    if suite == Suite::GenericUnitary {
        let generic = dims
            .iter()
            .enumerate()
            .map(|(i, d)| {
                generic_unitary_scan(
                    d[0],
                    cfg.trials,
                    child_seed(suite_seed, i as u64),
                    GENERIC_GAP,
                    cfg.exec,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(SuiteOutcome {
            suite,
            seed: suite_seed,
            trials: cfg.trials,
            records: vec![],
            skipped: 0,
            generic,
        });
    }

    let results = map_indexed(cfg.exec, cfg.trials, |i| {
        let seed = child_seed(suite_seed, i as u64);
        run_instance(suite, i, seed, &dims, cfg).map(|mut r| {
            for rec in &mut r.records {
                rec.seed = Some(seed);
            }
            r
        })
    });
    let mut records = Vec::new();
    let mut skipped = 0;
    for r in results {
        let r = r?;
        records.extend(r.records);
        skipped += r.skipped;
    }
    Ok(SuiteOutcome {
        suite,
        seed: suite_seed,
        trials: cfg.trials,
        records,
        skipped,
        generic: vec![],
    })
}
