//! Brute-force checks over small prime fields, kept independent of the
//! module machinery so they can referee the classifier.

mod resolution;
mod zero_divisors;

pub use resolution::{koszul_oracle, KoszulOracleReport, OracleStep};
pub use zero_divisors::{
    verify_zero_divisor, zero_divisor_search, zero_divisor_search_full, Coverage, SkippedBlock, ZeroDivisorReport,
    ZeroDivisorWitness,
};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::linalg::{FieldSpec, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the oracle needs a prime field, got {0}")]
    NotPrimeField(String),
    #[error("algebra is over {algebra} but the oracle is configured for {oracle}")]
    FieldMismatch { algebra: String, oracle: String },
    #[error("malformed oracle input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub field: FieldSpec,
    /// Largest `d + e` for the zero-divisor search.
    pub max_total_degree: usize,
    /// Largest number of `(x, y)` pairs tried in total.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            field: FieldSpec::Prime(2),
            max_total_degree: 4,
            budget: 1_000_000,
        }
    }
}

/// First degree in which the corner from `from` to `to` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CornerHit {
    pub from: usize,
    pub to: usize,
    pub first_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimenessReport {
    pub window: usize,
    /// Every ordered pair of distinct vertices.
    pub pairs: Vec<CornerHit>,
    /// All off-diagonal corners are nonzero within the window.
    pub prime_by_corners: bool,
}

/// For each ordered pair `i != j`, the least `n <= window` with
/// `e_j A_n e_i != 0`. A piecewise domain is prime exactly when every
/// off-diagonal corner is nonzero.
pub fn primeness_oracle(alg: &impl GradedAlgebra, window: usize) -> PrimenessReport {
    let r = alg.vertex_count();
    let window = window.min(alg.max_degree());
    let h = alg.hilbert();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let first_degree = (0..=window).find(|&n| h.grids[n][j][i] > 0);
            pairs.push(CornerHit { from: i, to: j, first_degree });
        }
    }
    let prime_by_corners = pairs.iter().all(|p| p.first_degree.is_some());
    PrimenessReport {
        window,
        pairs,
        prime_by_corners,
    }
}
