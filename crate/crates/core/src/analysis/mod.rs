//! Decision procedures built on the module engine: Frobenius structure of a
//! finite dual, the Koszul syzygy condition, the Ext algebra, and the
//! classifiers that combine them.

mod classify;
mod ext;
mod frobenius;
mod syzygy_condition;

pub use classify::*;
pub use ext::ext_algebra;
pub use frobenius::{frobenius_check, FrobeniusVerdict};
pub use syzygy_condition::{
    koszul_syzygy_condition, frobenius_fastpath, verify_witness, ConditionMethod, ConditionStatus, DetectorTally,
    Obstruction, SyzygyConditionVerdict, SyzygyConfig, SyzygyWitness,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, PresentationError};
use crate::linalg::LinalgError;
use crate::modules::ModuleError;
use crate::oracle::OracleError;
use crate::quiver::QuiverError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
