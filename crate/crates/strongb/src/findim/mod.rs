//! Finite-dimensional algebras, bimodules, cochain calculus, and the
//! estimation routines built on them.

pub mod algebra;
pub mod cocycle;
pub mod dist;
pub mod group;
pub mod linalg;
pub mod multilinear;
pub mod norms;
pub mod strongb;
pub mod zeroprod;

/// Tolerance for structural axioms (associativity, module laws, units).
pub const AXIOM_TOLERANCE: f64 = 1e-12;

/// Tolerance below which a basis is considered rank-deficient.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Hard cap on cochain-space sizes for kernel computations.
pub const COCHAIN_SIZE_LIMIT: usize = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum FindimError {
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
