//! Exact rational linear algebra and the lattice of finite unions of linear
//! subspaces.
//!
//! Every zero locus handled by the separation engine is a finite union of
//! linear subspaces of a rational vector space. This module provides the
//! carrier types: [`RatMatrix`] over arbitrary-precision [`Rational`]
//! scalars, [`Subspace`] in canonical reduced-row-echelon constraint form,
//! and [`SubspaceUnion`] in absorbed, canonically ordered form. All
//! operations are exact; nothing here ever rounds.

mod matrix;
mod subspace;

pub use matrix::RatMatrix;
pub use subspace::{Subspace, SubspaceUnion};

use num::BigRational;
use thiserror::Error;

/// Exact scalar: arbitrary-precision rational, always reduced, denominator
/// positive.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses the wire form used throughout the JSON reports: `"p/q"`, or just
/// `"p"` when the denominator is one.
pub fn parse_rational(s: &str) -> Result<Rational, ExactLinError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| ExactLinError::BadRational(s.to_string()))
}

/// Formats a rational in the same wire form accepted by [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactLinError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector has length {got}, ambient dimension is {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("not a rational number: {0:?}")]
    BadRational(String),
}
