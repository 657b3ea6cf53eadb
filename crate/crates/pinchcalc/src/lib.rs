//! Exact-arithmetic invariants of torus knots via the pinch-move calculus.
//!
//! A pinch move is a nonorientable band move between neighboring strands of a
//! torus knot; iterating it reduces any `T(p,q)` to an unknot in a finite
//! number `n` of steps. This crate computes that reduction, the data set that
//! classifies it ([`pinch::SeedData`]), and the knot invariants that hang off
//! of it:
//!
//! - the signature, both by the Gordon-Litherland-Murasugi recursion and by a
//!   closed formula over the reduction data,
//! - the upsilon concordance invariant, by the Feller-Krcatovich recursion
//!   and by a closed formula,
//! - the gap `upsilon - sigma/2`, whose absolute value bounds the
//!   nonorientable 4-genus from below, with `n` as the conjectured value,
//! - an independent Seifert-matrix signature oracle built from the standard
//!   positive braid form, used to cross-check the recursion transcription.
//!
//! All arithmetic is arbitrary precision; there is no floating point anywhere.

pub mod classify;
pub mod invariants;
pub mod knot;
pub mod oracle;
pub mod pinch;

use num_bigint::BigInt;
use thiserror::Error;

pub use classify::{classify, Classification, Tag};
pub use invariants::{report, InvariantReport};
pub use knot::TorusKnot;
pub use pinch::{pinch_sequence, synthesize, PinchSequence, SeedData, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd is undefined for (0, 0)")]
    BothZero,
    #[error("T({p},{q}) is not a torus knot: both parameters are even")]
    BothEven { p: BigInt, q: BigInt },
    #[error("T({p},{q}) is not a torus knot: not coprime (gcd = {g})")]
    NotCoprime { p: BigInt, q: BigInt, g: BigInt },
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: BigInt, m: BigInt },
    #[error("modulus {m} must be at least 2")]
    BadModulus { m: BigInt },
    #[error("pinch move is undefined on the unknot T({p},{q})")]
    UnknotPinch { p: BigInt, q: BigInt },
    #[error("seed constraint (b) violated: p0 = {p0} requires eps_1 = -1")]
    SeedConstraintB { p0: BigInt },
    #[error("seed constraint (c) violated: q1 = {q1} must be odd and >= 3")]
    SeedConstraintQ1 { q1: BigInt },
    #[error("seed constraint violated: m_{k} = {m} must be a positive even integer >= 2")]
    SeedConstraintM { k: usize, m: BigInt },
    #[error("seed constraint violated: p0 = {p0} must be nonnegative")]
    SeedConstraintP0 { p0: BigInt },
    #[error("seed has {got} m values, expected {want}")]
    SeedMsLength { want: usize, got: usize },
    #[error("rho index ({k},{n}) is out of range")]
    RhoIndex { k: usize, n: usize },
    #[error("rho table bound {max_n} exceeds the sequence length {n}")]
    RhoBound { max_n: usize, n: usize },
    #[error("Seifert matrix dimension {dim} exceeds the cap {cap}")]
    OracleCap { dim: usize, cap: usize },
    #[error("family constraint violated: {0}")]
    FamilyConstraint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
