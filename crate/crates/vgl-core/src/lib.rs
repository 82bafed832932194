//! Exact decision and certification toolkit for the polynomial semiring
//! `R+[X1..Xd]` preordered by the relations `Xi >= 1`.
//!
//! The crate decides the algebraic preorder `p <= q` with a constructive
//! transport-plan witness (`dominance`), evaluates the spectral conditions
//! that characterize it asymptotically (`spectral`), searches for catalytic
//! and asymptotic certificates (`certify`), and ships the five model
//! preordered semifields together with an executable lemma bench
//! (`semifield`, `bench`).
//!
//! All order decisions are exact: coefficients are arbitrary-precision
//! rationals, the dominance decision runs an integral max-flow after
//! denominator clearing, tropical conditions are settled by a rational
//! simplex method, and univariate evaluation conditions by Sturm sequences.

pub mod bench;
pub mod certify;
pub mod dominance;
pub mod exponent;
pub mod flow;
pub mod lp;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod semifield;
pub mod spectral;
pub mod sturm;

pub use exponent::ExponentVec;
pub use poly::SparsePoly;
pub use rational::Rat;

/// Errors shared across the crate's decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("evaluation point must have strictly positive coordinates")]
    NonpositiveCoordinate,
    #[error("operands must have equal mass (coefficient sum)")]
    MassMismatch,
    #[error("transport plan marginals do not match")]
    MarginalMismatch,
    #[error("invalid spectrum point: {0}")]
    InvalidPoint(String),
    #[error("semifield model mismatch")]
    ModelMismatch,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element is not order-equivalent to 1 in this model")]
    NotEquivalentToOne,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("strict spectral precondition failed: {0}")]
    SpectralPrecondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
