use serde::{Deserialize, Serialize};

use super::RecurrenceError;
use crate::algebra::{rat, MultiPoly, Rational};

pub const DEFAULT_LAURENT_CAP: usize = 8;

const VARS: [&str; 6] = ["t0", "t1", "t2", "t3", "alpha", "beta"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub index: usize,
    pub num_terms: usize,
    /// Monomial in `t0..t3` that clears all negative exponents.
    pub denominator: String,
    /// No negative power of `alpha` or `beta`.
    pub polynomial_in_coefficients: bool,
    pub laurent: bool,
    /// Value at `alpha = beta = 1`, `t0..t3 = 1`.
    pub specialised: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentReport {
    pub terms: Vec<LaurentTerm>,
    pub pass: bool,
}

/// Symbolic iterates `τ₄..τ_{n_max}` of the Somos-4 recurrence with seeds and
/// coefficients as indeterminates. Each division is exact in the Laurent ring
/// or the check fails.
pub fn symbolic_iterates(n_max: usize) -> Result<Vec<MultiPoly>, RecurrenceError> {
    let v = |i| MultiPoly::var(&VARS, true, i);
    let (alpha, beta) = (v(4), v(5));
    let mut t: Vec<MultiPoly> = (0..4).map(v).collect();
    for n in 4..=n_max {
        let num = &(&alpha * &(&t[n - 1] * &t[n - 3])) + &(&beta * &t[n - 2].pow(2));
        let q = num.exact_div(&t[n - 4])?;
        t.push(q);
    }
    Ok(t)
}

pub fn laurent_check(n_max: usize, cap: usize) -> Result<LaurentReport, RecurrenceError> {
    if n_max > cap {
        return Err(RecurrenceError::CapExceeded { requested: n_max, cap });
    }
    let ones = vec![rat(1, 1); VARS.len()];
    let t = match symbolic_iterates(n_max) {
        Ok(t) => t,
        Err(RecurrenceError::Algebra(crate::algebra::AlgebraError::NotDivisible)) => {
            return Ok(LaurentReport {
                terms: Vec::new(),
                pass: false,
            })
        }
        Err(e) => return Err(e),
    };
    let mut terms = Vec::new();
    for (n, p) in t.iter().enumerate().skip(4) {
        let mins = p.min_exponents();
        let den_exps: Vec<i32> = mins.iter().take(4).map(|&e| (-e).max(0)).collect();
        let den = MultiPoly::monomial(
            &VARS,
            false,
            den_exps.iter().cloned().chain([0, 0]).collect(),
            Rational::from_integer(1.into()),
        )?;
        let poly_coeffs = mins[4] >= 0 && mins[5] >= 0;
        // exact division already made p a Laurent polynomial in t0..t3
        let laurent = poly_coeffs;
        terms.push(LaurentTerm {
            index: n,
            num_terms: p.num_terms(),
            denominator: den.to_string(),
            polynomial_in_coefficients: poly_coeffs,
            laurent,
            specialised: crate::algebra::format_rational(&p.eval(&ones)?),
        });
    }
    let pass = terms.iter().all(|t| t.laurent);
    Ok(LaurentReport { terms, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau4_is_single_division() {
        let t = symbolic_iterates(4).unwrap();
        assert_eq!(t[4].to_string(), "t0^-1*t1^1*t3^1*alpha^1 + t0^-1*t2^2*beta^1");
    }

    #[test]
    fn small_range_is_laurent() {
        let r = laurent_check(7, DEFAULT_LAURENT_CAP).unwrap();
        assert!(r.pass);
        let spec: Vec<&str> = r.terms.iter().map(|t| t.specialised.as_str()).collect();
        assert_eq!(spec, ["2", "3", "7", "23"]);
        assert_eq!(r.terms[0].denominator, "t0^1");
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            laurent_check(9, 8).unwrap_err(),
            RecurrenceError::CapExceeded { requested: 9, cap: 8 }
        );
    }
}
