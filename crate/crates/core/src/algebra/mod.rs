//! Exact arithmetic substrate: rationals, univariate and sparse multivariate
//! (optionally Laurent) polynomials, rational functions and fraction-free
//! linear solving.

mod field;
mod linalg;
mod multipoly;
mod poly;
mod ratfunc;
pub mod rational;

pub use field::Field;
pub use linalg::{determinant, matrix_rank, solve_linear_exact};
pub use multipoly::{Monomial, MultiPoly};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, rat, Rational};

use thiserror::Error;

/// Univariate polynomial with exact rational coefficients.
pub type UniPoly = Poly<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero substituted into variable `{var}` which carries a negative exponent")]
    Domain { var: String },
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("singular system: rank {rank} of {size} (kernel dimension {})", size - rank)]
    Singular { rank: usize, size: usize },
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("negative exponent on `{var}` is not allowed in polynomial mode")]
    NegativeExponent { var: String },
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}
