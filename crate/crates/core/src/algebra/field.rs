use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::Rational;

/// Coefficient field shared by the exact (rational) and floating code paths.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    /// Magnitude as `f64`, used for tolerance checks on the floating paths.
    fn magnitude(&self) -> f64;
}

impl Field for Rational {
    fn from_i64(n: i64) -> Self {
        super::rational::int(n)
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        super::rat(n, d)
    }

    fn magnitude(&self) -> f64 {
        super::rational::to_f64(self).abs()
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Field for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
