use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{RecurrenceError, SequenceWindow};
use crate::algebra::rational::{format_rational, is_integer};
use crate::algebra::Rational;

/// JSON-facing outcome of a single identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub indices: Vec<i64>,
    pub residual: String,
    pub pass: bool,
}

impl IdentityReport {
    pub fn exact(identity: &str, indices: Vec<i64>, residual: &Rational) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            indices,
            residual: format_rational(residual),
            pass: residual.is_zero(),
        }
    }
}

/// `τₙ₊ₘτₙ₋ₘ − (τₘ² τₙ₊₁τₙ₋₁ − τₘ₋₁τₘ₊₁ τₙ²)`.
///
/// Zero for elliptic divisibility sequences. For a general Somos-4 window the
/// value is returned as data; nothing is claimed about it.
pub fn hankel_check(w: &SequenceWindow, m: i64, n: i64) -> Result<Rational, RecurrenceError> {
    let t = |i: i64| w.at(i);
    let lhs = t(n + m)? * t(n - m)?;
    let tm = t(m)?;
    let rhs = tm * tm * t(n + 1)? * t(n - 1)? - t(m - 1)? * t(m + 1)? * t(n)? * t(n)?;
    Ok(lhs - rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    /// Number of pairs `(n, m)` with `1 ≤ n ≤ m`, `n | m` that were examined.
    pub pairs_checked: usize,
    /// Pairs `(n, m)` where `τₙ ∤ τₘ`.
    pub violations: Vec<(i64, i64)>,
    pub pass: bool,
}

/// Checks `τₙ | τₘ` whenever `n | m`, over the positive indices of `w`.
pub fn divisibility_check(w: &SequenceWindow) -> Result<DivisibilityReport, RecurrenceError> {
    let mut vals: Vec<(i64, BigInt)> = Vec::new();
    for (n, t) in w.iter() {
        if !is_integer(t) {
            return Err(RecurrenceError::NotInteger { index: n });
        }
        if n >= 1 {
            vals.push((n, t.numer().clone()));
        }
    }
    let get = |i: i64| vals.iter().find(|(k, _)| *k == i).map(|(_, v)| v);
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (n, tn) in &vals {
        let mut m = *n;
        while let Some(tm) = get(m) {
            pairs += 1;
            let ok = if tn.is_zero() {
                tm.is_zero()
            } else {
                tm.is_multiple_of(tn)
            };
            if !ok {
                violations.push((*n, m));
            }
            m += n;
        }
    }
    Ok(DivisibilityReport {
        pairs_checked: pairs,
        pass: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn eds1() -> SequenceWindow {
        SequenceWindow::from_ints(0, &[0, 1, -1, -1, -1, 2, 1, -3, 5, 7])
    }

    #[test]
    fn hankel_on_eds1() {
        let w = eds1();
        assert_eq!(hankel_check(&w, 2, 3).unwrap(), int(0));
        assert!(matches!(
            hankel_check(&w, 2, 9),
            Err(RecurrenceError::Range { index: 11, .. })
        ));
    }

    #[test]
    fn divisibility_on_eds1() {
        let r = divisibility_check(&eds1()).unwrap();
        assert!(r.pass);
        assert!(r.pairs_checked >= 9 + 4 + 3);

        let mut bad = eds1();
        bad.terms[2] = int(2);
        let r = divisibility_check(&bad).unwrap();
        assert!(!r.pass);
        assert!(r.violations.contains(&(2, 4)));
    }

    #[test]
    fn non_integer_rejected() {
        let w = SequenceWindow::new(0, vec![int(0), crate::algebra::rat(1, 2)]);
        assert_eq!(
            divisibility_check(&w).unwrap_err(),
            RecurrenceError::NotInteger { index: 1 }
        );
    }
}
