//! Exact arithmetic in cyclotomic fields ℚ(ζ_m) and exact linear algebra
//! over them.

mod echelon;
mod field;
mod int;
mod matrix;
mod num;
mod root;

pub(crate) use echelon::axpy;
pub use echelon::{Echelon, SparseVec};
pub use field::{
    conductor_cap, cyclotomic_polynomial, euler_phi, set_conductor_cap, Field,
    DEFAULT_CONDUCTOR_CAP,
};
pub use int::Int;
pub use matrix::{mat_kernel, CycMatrix};
pub use num::{cyc_arith, cyc_root_of_unity, ArithOp, CycNum};
pub use root::RootOfUnity;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("conductor {conductor} exceeds the configured cap {cap}")]
    ConductorTooLarge { conductor: u32, cap: u32 },
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
    #[error("malformed cyclotomic data: {0}")]
    Malformed(String),
}

pub fn lcm(a: u32, b: u32) -> u64 {
    let g = num_integer::gcd(a as u64, b as u64);
    if g == 0 {
        0
    } else {
        a as u64 / g * b as u64
    }
}

/// Least common multiple of two conductors, checked against the cap.
pub fn common_conductor(a: u32, b: u32) -> Result<u32, CycloError> {
    let l = lcm(a, b);
    let cap = conductor_cap();
    if l > cap as u64 {
        return Err(CycloError::ConductorTooLarge {
            conductor: u32::try_from(l).unwrap_or(u32::MAX),
            cap,
        });
    }
    Ok(l as u32)
}
