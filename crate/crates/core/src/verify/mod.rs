//! Exact projective centralizers via twisted commutants, and dual-pair
//! verification.

mod centralizer;
mod commutant;
mod report;

pub use centralizer::{projective_centralizer, Centralizer, Membership};
pub use commutant::{twisted_commutant, TwistedCommutant, TwistedCommutantProblem};
pub use report::{
    pairing_table, spec_equal, verify_dual_pair, CentralizerSummary, Failure, FailureCode,
    PairingTable, Side, VerificationReport,
};

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::cyclo::CycloError;
use crate::matrep::MatrepError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("ambient shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("identity component of the centralizer is not a sum of matrix algebras")]
    IdentityComponentNotSemisimpleBlocks,
    #[error("generator for coset {0:?} has no finite order modulo the identity component")]
    InfiniteProjectiveOrder(Vec<u64>),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("no invertible element found for twist {0}, and none was ruled out")]
    WitnessUndecided(String),
    #[error(transparent)]
    Matrep(#[from] MatrepError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
