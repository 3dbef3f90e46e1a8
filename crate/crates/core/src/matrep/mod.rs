//! Concrete matrix realizations: translation and character operators on
//! functions on a finite abelian group, tensor-slot embeddings, commutator
//! scalars and equality up to scalars.

mod ops;
mod shape;

pub use ops::{
    character_matrix, commutator_root, commutator_scalar, embed_factor, projective_equal,
    scalar_stats, translation_matrix, ScalarStats,
};
pub(crate) use ops::{character_by, translation_by};
pub use shape::{Ambient, Factor, TensorShape};

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::cyclo::CycloError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrepError {
    #[error("unknown tensor label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate tensor label {0:?}")]
    DuplicateLabel(String),
    #[error("tensor factor {0:?} has dimension 0")]
    ZeroDimension(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group mismatch")]
    GroupMismatch,
    #[error("commutator is not a scalar")]
    NotProjectivelyCommuting,
    #[error("commutator scalar {scalar} is not a root of unity of order dividing {dim}")]
    ScalarOrder { scalar: String, dim: usize },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
