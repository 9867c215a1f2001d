//! Exact-arithmetic Gelfand-Tsetlin tableaux machinery for the symplectic Lie
//! algebra `sp(2n)` and the spinor-type modules of `so(2n)` it is paired with.
//!
//! The crate provides:
//! - [`scalars`]: arbitrary-precision rationals, the integer-shift order, and
//!   the ring Q(sqrt 2);
//! - [`tableau`]: type C and type D tableau shapes with the standardness,
//!   regularity and genericity predicates, shifts and weights;
//! - [`algebra`]: the matrix realization of `sp(2n)`, structure constants,
//!   formal algebra elements and the quadratic Casimir;
//! - [`action`]: the Gelfand-Tsetlin coefficient functions and generator
//!   actions on formal linear combinations of tableaux;
//! - [`enumeration`]: exhaustive enumeration of standard tableau sets, the
//!   Weyl dimension oracle, and the combinatorial maps on them;
//! - [`modules`]: finite-dimensional, generic, bounded and subquotient module
//!   universes with membership, weights, supports, cones and classification;
//! - [`oscillator`]: an independent Weyl-algebra realization of the degree-1
//!   bounded modules used for differential testing;
//! - [`verify`]: the seeded verification engine behind the CLI and the
//!   acceptance suite.

pub mod action;
pub mod algebra;
pub mod enumeration;
pub mod modules;
pub mod oscillator;
pub mod scalars;
pub mod tableau;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of shape: {0}")]
    BadIndex(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("tableau is not a member of the module basis: {0}")]
    NotMember(String),
    #[error("regularity violated: {0}")]
    NotRegular(String),
    #[error("invalid module parameters: {0}")]
    BadSpec(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
