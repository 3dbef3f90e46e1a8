//! Exact construction and verification of reductive dual pairs in PGL(n, ℂ).

pub mod cyclo;
pub mod abelian;
pub mod matrep;
pub mod construct;
pub mod verify;
pub mod classify;
