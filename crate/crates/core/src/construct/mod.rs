//! Explicit dual pairs: group specs for every construction, from connected
//! pairs through single-orbit pairs to multi-orbit gluing.

mod build;
mod ingredients;
mod spec;

pub use build::{
    connected_pair, general_xx_hat_pair, multi_orbit_glue, single_orbit_pair, type2_pair,
    xx_hat_pair, Type2Variant,
};
pub(crate) use build::h_side_gluing;
pub use ingredients::{GluedSummand, MultiOrbitSpec, OrientationKey, SingleOrbitIngredients};
pub use spec::{AlgebraSpace, GlBlock, Generator, GroupSpec, IdentityComponent};

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::cyclo::CycloError;
use crate::matrep::MatrepError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("empty decomposition")]
    EmptyDecomposition,
    #[error("input is not a dual pair: {0}")]
    InputNotDualPair(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("incompatible gluing: {0}")]
    IncompatibleGluing(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("malformed group spec: {0}")]
    MalformedSpec(String),
    #[error(transparent)]
    Matrep(#[from] MatrepError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
