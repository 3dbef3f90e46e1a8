//! Finite abelian groups, characters, enumeration by order, explicit
//! isomorphisms and the hyperbolic decomposition of symplectic pairings.

pub mod coords;
mod group;
mod iso;
mod symplectic;

pub use group::{char_eval, enumerate_abelian_groups, Character, FinAbGroup, GroupElement};
pub use iso::{
    automorphisms, canonical_iso, dual_isomorphism_transport, subgroup_form, CanonicalIso, Hom,
    SubgroupForm,
};
pub use symplectic::{
    standard_pairing, symplectic_decompose, HyperbolicDecomposition, HyperbolicPair,
    SymplecticPairing,
};

use thiserror::Error;

use crate::cyclo::CycloError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("element and group do not match")]
    GroupMismatch,
    #[error("invalid invariant factors {0:?}")]
    InvalidFactors(Vec<u64>),
    #[error("pairing is degenerate")]
    DegeneratePairing,
    #[error("pairing is not alternating")]
    NotAlternating,
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}
