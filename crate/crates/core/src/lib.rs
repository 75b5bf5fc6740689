//! Bilinear recurrences of Somos type and their sigma-function solutions.
//!
//! Exact engines for the recurrences, the genus-one inverse problem with
//! multiprecision Weierstrass functions, Jacobian arithmetic on genus-two
//! curves, and the Hénon-Heiles Bäcklund transformation.

pub mod algebra;
pub mod genus2;
pub mod henon_heiles;
pub mod mp;
pub mod recurrence;
pub mod reproduce;
pub mod schur;
pub mod solver;
pub mod weierstrass;

pub use algebra::{format_rational, parse_rational, MultiPoly, Rational, RationalFunction, UniPoly};
pub use genus2::{CurvePoint, MumfordDivisor, QuinticCurve};
pub use henon_heiles::{HHParams, HHState, LaxMatrix};
pub use recurrence::{SequenceWindow, Somos4Problem, SomosKSpec};
pub use solver::Somos4Solution;
pub use weierstrass::{EllipticInvariants, WeierstrassContext};
