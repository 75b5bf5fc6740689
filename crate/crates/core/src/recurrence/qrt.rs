use num_traits::Zero;

use super::{RecurrenceError, SequenceWindow};
use crate::algebra::Rational;

/// `J = f₀f₁ + α(1/f₀ + 1/f₁) + β/(f₀f₁)`, conserved by the map below.
pub fn qrt_integral(
    f0: &Rational,
    f1: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational, RecurrenceError> {
    if f0.is_zero() {
        return Err(RecurrenceError::Domain { index: 0 });
    }
    if f1.is_zero() {
        return Err(RecurrenceError::Domain { index: 1 });
    }
    Ok(f0 * f1 + alpha * (f0.recip() + f1.recip()) + beta / (f0 * f1))
}

/// `fₙ₊₁ = (α + β/fₙ)/(fₙ₋₁fₙ)`; `n` is the index of `fn_`.
pub fn map_step_forward(
    alpha: &Rational,
    beta: &Rational,
    fprev: &Rational,
    fn_: &Rational,
    n: i64,
) -> Result<Rational, RecurrenceError> {
    if fn_.is_zero() {
        return Err(RecurrenceError::Domain { index: n });
    }
    if fprev.is_zero() {
        return Err(RecurrenceError::Domain { index: n - 1 });
    }
    Ok((alpha + beta / fn_) / (fprev * fn_))
}

/// `fₙ₋₁ = (α + β/fₙ)/(fₙfₙ₊₁)`; `n` is the index of `fn_`.
pub fn map_step_back(
    alpha: &Rational,
    beta: &Rational,
    fn_: &Rational,
    fnext: &Rational,
    n: i64,
) -> Result<Rational, RecurrenceError> {
    if fn_.is_zero() {
        return Err(RecurrenceError::Domain { index: n });
    }
    if fnext.is_zero() {
        return Err(RecurrenceError::Domain { index: n + 1 });
    }
    Ok((alpha + beta / fn_) / (fn_ * fnext))
}

/// Orbit `f_lo..f_hi` of the second-order map through `(f₀, f₁)`.
pub fn map_iter(
    alpha: &Rational,
    beta: &Rational,
    f0: &Rational,
    f1: &Rational,
    lo: i64,
    hi: i64,
) -> Result<SequenceWindow, RecurrenceError> {
    let mut fwd = vec![f0.clone(), f1.clone()];
    let mut n = 1;
    while n < hi {
        let next = map_step_forward(alpha, beta, &fwd[fwd.len() - 2], &fwd[fwd.len() - 1], n)?;
        fwd.push(next);
        n += 1;
    }
    let mut back: Vec<Rational> = Vec::new();
    let mut n = 0;
    while n > lo {
        let (a, b) = match back.len() {
            0 => (f0, f1),
            1 => (&back[0], f0),
            k => (&back[k - 1], &back[k - 2]),
        };
        let prev = map_step_back(alpha, beta, a, b, n)?;
        back.push(prev);
        n -= 1;
    }
    back.reverse();
    let first = -(back.len() as i64);
    back.extend(fwd);
    SequenceWindow::new(first, back).slice(lo, hi)
}

/// `fₙ = τₙ₊₁τₙ₋₁/τₙ²` for every interior index of the window.
pub fn f_from_tau(w: &SequenceWindow) -> Result<SequenceWindow, RecurrenceError> {
    if w.len() < 3 {
        return Ok(SequenceWindow::new(w.lo() + 1, Vec::new()));
    }
    let mut out = Vec::with_capacity(w.len() - 2);
    for n in w.lo() + 1..w.hi() {
        let t = w.at(n)?;
        if t.is_zero() {
            return Err(RecurrenceError::VanishingTau { index: n });
        }
        out.push(w.at(n + 1)? * w.at(n - 1)? / (t * t));
    }
    Ok(SequenceWindow::new(w.lo() + 1, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rational::int};
    use crate::recurrence::Somos4Problem;

    #[test]
    fn integral_examples() {
        assert_eq!(qrt_integral(&int(2), &int(1), &int(1), &int(1)).unwrap(), int(4));
        assert_eq!(qrt_integral(&int(1), &int(1), &int(1), &int(1)).unwrap(), int(4));
        assert!(qrt_integral(&int(0), &int(1), &int(1), &int(1)).is_err());
    }

    #[test]
    fn backward_iterate_of_worked_example() {
        let w = map_iter(&int(1), &int(1), &int(2), &int(1), -1, 1).unwrap();
        assert_eq!(w.get(-1).unwrap(), &rat(3, 4));
    }

    #[test]
    fn fixed_point() {
        let w = map_iter(&int(0), &int(1), &int(1), &int(1), -5, 5).unwrap();
        assert!(w.terms.iter().all(|f| *f == int(1)));
    }

    #[test]
    fn integral_conserved_and_matches_tau() {
        let (a, b) = (int(1), int(1));
        let f = map_iter(&a, &b, &int(2), &int(1), -6, 8).unwrap();
        let j0 = qrt_integral(&int(2), &int(1), &a, &b).unwrap();
        for n in -6..8 {
            let j = qrt_integral(f.at(n).unwrap(), f.at(n + 1).unwrap(), &a, &b).unwrap();
            assert_eq!(j, j0);
        }
        let tau = Somos4Problem::new(a.clone(), b.clone(), vec![int(1); 4])
            .unwrap()
            .run(-7, 9)
            .unwrap();
        let g = f_from_tau(&tau).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.get(0).unwrap(), &int(2));
    }

    #[test]
    fn gauge_leaves_f_unchanged() {
        let tau = Somos4Problem::new(int(1), int(1), vec![int(1); 4])
            .unwrap()
            .run(-3, 8)
            .unwrap();
        let g = tau.gauge(&rat(-3, 7), &rat(5, 2));
        assert_eq!(f_from_tau(&g).unwrap(), f_from_tau(&tau).unwrap());
    }
}
