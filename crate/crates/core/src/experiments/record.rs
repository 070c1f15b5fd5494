use serde::{Deserialize, Serialize};

/// Which inequality a record evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `H(X|B) + H(Z|B) >= q(rho_A) + H(A|B)` for orthonormal bases.
    UrBipartite,
    /// The same left side against the weaker `q_MU + H(A|B)`.
    UrBipartiteMu,
    /// `H(X|B) + H(Z|C) >= q(rho_A)` for POVMs on a tripartite state.
    UrTripartite,
    /// `H(X|B) + H(Z|B) >= q(rho_A) + H(A|B) - f` for POVMs.
    UrPovmBipartite,
    /// `I(X:B) + I(Z:B) <= r - H(A|B) (+ f for POVMs)`.
    IerBipartite,
    /// `I(X:B) + I(Z:B) <= r_H - H(A|B)`.
    IerHall,
    /// `I(X:B) + I(Z:C) <= r`.
    IerTripartite,
    /// `I(X:Y) + I(Z:Y) <= r` with `Y` a classical register.
    IerRegister,
    /// `||sum_k Z_k s Z_k|| <= max_k ||sqrt(Z_k) s sqrt(Z_k)||`.
    Pinching,
    /// `max_j h_j(X,Z) <= c_max`.
    HFactorVsOverlap,
    /// `||S + T|| <= max{||S||, ||T||} + ||sqrt(S) sqrt(T)||`.
    SumNorm,
    /// `H(Z|C) >= D(rho_AB || sum_k Z_k rho_AB Z_k)`.
    RelativeEntropy,
    /// One link of `q_MU <= q' <= lambda_min[Delta(1/2)] <= q <= q(rho)`.
    BoundChain,
    /// One link of `r <= r_G <= r_H`.
    ExclusionChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs >= rhs`
    AtLeast,
    /// `lhs <= rhs`
    AtMost,
}

/// Both sides of one inequality on one instance. `slack` is signed so that a
/// satisfied inequality has `slack >= 0` whichever direction it points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check: Check,
    pub relation: Relation,
    pub dims: Vec<usize>,
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
}

impl VerificationRecord {
    pub fn new(
        check: Check,
        relation: Relation,
        dims: &[usize],
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> Self {
        let slack = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost => rhs - lhs,
        };
        Self {
            check,
            relation,
            dims: dims.to_vec(),
            seed: None,
            lhs,
            rhs,
            slack,
            tol,
            // NaN slack fails.
            pass: slack >= -tol,
        }
    }

    pub fn at_least(check: Check, dims: &[usize], lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(check, Relation::AtLeast, dims, lhs, rhs, tol)
    }

    pub fn at_most(check: Check, dims: &[usize], lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(check, Relation::AtMost, dims, lhs, rhs, tol)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}
