//! Exact engines for Somos-type bilinear recurrences and the identity checks
//! that accompany them.

mod checks;
mod laurent;
mod qrt;
mod somos;
mod window;

pub use checks::{divisibility_check, hankel_check, DivisibilityReport, IdentityReport};
pub use laurent::{laurent_check, LaurentReport, LaurentTerm, DEFAULT_LAURENT_CAP};
pub use qrt::{f_from_tau, map_iter, map_step_back, map_step_forward, qrt_integral};
pub use somos::{eds_generate, somos4_step, somos4_step_back, somos_k_run, Somos4Problem, SomosKSpec};
pub use window::SequenceWindow;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecurrenceError {
    /// A term that must be divided by is zero; the index is where it sits.
    #[error("vanishing tau at index {index}")]
    VanishingTau { index: i64 },
    #[error("index {index} outside window [{lo}, {hi}]")]
    Range { index: i64, lo: i64, hi: i64 },
    #[error("zero value at index {index} where a nonzero value is required")]
    Domain { index: i64 },
    #[error("term at index {index} is not an integer")]
    NotInteger { index: i64 },
    #[error("requested n = {requested} exceeds the cap {cap}; raise the cap explicitly if the cost is acceptable")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
