//! Enumeration of classification data for a given ambient dimension:
//! single-orbit ingredient tuples and glued multi-orbit specs, with a
//! canonical form for rows and a construct-and-verify check pipeline.

mod canonical;
mod check;
mod enumerate;

pub use canonical::canonicalize_row;
pub use check::{check_row, check_rows, construct_row, CheckSummary, RowCheck};
pub use enumerate::{
    enumerate_multi_orbit, enumerate_multi_orbit_capped, enumerate_single_orbit, DEFAULT_ROW_CAP,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianError, FinAbGroup};
use crate::construct::{ConstructError, MultiOrbitSpec, SingleOrbitIngredients};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration exceeds the cap of {0} rows")]
    TooManyRows(usize),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowIngredients {
    Single(SingleOrbitIngredients),
    Multi(MultiOrbitSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationRow {
    pub ingredients: RowIngredients,
    pub gamma: FinAbGroup,
    pub gamma_hat: FinAbGroup,
    pub ambient_dim: usize,
    /// Number of orbits (summands).
    pub parts: usize,
    /// Glued rows are representatives of gluing classes under the canonical
    /// labeling; distinct representatives are not claimed to be
    /// non-conjugate.
    pub gluing_representative: bool,
}

impl ClassificationRow {
    pub fn single(ing: SingleOrbitIngredients) -> ClassificationRow {
        ClassificationRow {
            gamma: ing.gamma(),
            gamma_hat: ing.gamma_hat(),
            ambient_dim: ing.ambient_dim(),
            parts: 1,
            gluing_representative: false,
            ingredients: RowIngredients::Single(ing),
        }
    }

    pub fn multi(spec: MultiOrbitSpec) -> ClassificationRow {
        ClassificationRow {
            gamma: spec.gamma.clone(),
            gamma_hat: spec.gamma.clone(),
            ambient_dim: spec.ambient_dim(),
            parts: spec.summands.len(),
            gluing_representative: true,
            ingredients: RowIngredients::Multi(spec),
        }
    }

    /// The summands' ingredients, in order.
    pub fn summands(&self) -> Vec<&SingleOrbitIngredients> {
        match &self.ingredients {
            RowIngredients::Single(s) => vec![s],
            RowIngredients::Multi(m) => m.summands.iter().map(|s| &s.ingredients).collect(),
        }
    }
}

/// Sort key for single-orbit ingredients: dimension first, then
/// `(b, e, 𝓛, 𝓙, 𝓚)` with each group ordered by order then factors.
pub(crate) type IngredientKey = (usize, usize, usize, u64, Vec<u64>, u64, Vec<u64>, u64, Vec<u64>);

pub(crate) fn ingredient_key(ing: &SingleOrbitIngredients) -> IngredientKey {
    (
        ing.ambient_dim(),
        ing.b,
        ing.e,
        ing.l_group.order(),
        ing.l_group.factors().to_vec(),
        ing.j_group.order(),
        ing.j_group.factors().to_vec(),
        ing.k_group.order(),
        ing.k_group.factors().to_vec(),
    )
}
