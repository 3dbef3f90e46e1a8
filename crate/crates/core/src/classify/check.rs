use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClassificationRow, RowIngredients};
use crate::construct::{multi_orbit_glue, single_orbit_pair, ConstructError, GroupSpec};
use crate::verify::verify_dual_pair;

/// Outcome of constructing and verifying one row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub index: usize,
    pub passed: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<RowCheck>,
}

pub fn construct_row(row: &ClassificationRow) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    match &row.ingredients {
        RowIngredients::Single(ing) => single_orbit_pair(ing),
        RowIngredients::Multi(spec) => multi_orbit_glue(spec),
    }
}

/// Constructs the pair, verifies it, and checks the component groups
/// against the row's Γ and Γ̂.
pub fn check_row(index: usize, row: &ClassificationRow) -> RowCheck {
    let mut problems = Vec::new();
    match construct_row(row) {
        Err(e) => problems.push(format!("construction failed: {e}")),
        Ok((g, h)) => {
            if g.component_group != row.gamma {
                problems.push(format!("G component group {} != {}", g.component_group, row.gamma));
            }
            if h.component_group != row.gamma_hat {
                problems.push(format!("H component group {} != {}", h.component_group, row.gamma_hat));
            }
            if g.dim() != row.ambient_dim {
                problems.push(format!("ambient dimension {} != {}", g.dim(), row.ambient_dim));
            }
            match verify_dual_pair(&g, &h) {
                Err(e) => problems.push(format!("verification error: {e}")),
                Ok(r) => problems.extend(r.failures.iter().map(|f| format!("{}: {}", f.code, f.detail))),
            }
        }
    }
    RowCheck {
        index,
        passed: problems.is_empty(),
        problems,
    }
}

/// Checks every row on the current rayon pool; results are in row order.
pub fn check_rows(rows: &[ClassificationRow]) -> CheckSummary {
    let results: Vec<RowCheck> = rows
        .par_iter()
        .enumerate()
        .map(|(i, r)| check_row(i, r))
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    CheckSummary {
        total: rows.len(),
        passed,
        failed: results.into_iter().filter(|r| !r.passed).collect(),
    }
}
