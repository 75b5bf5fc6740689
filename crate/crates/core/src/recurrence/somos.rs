use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{RecurrenceError, SequenceWindow};
use crate::algebra::rational::{serde_str, serde_vec};
use crate::algebra::Rational;

/// `τₙ₊₂τₙ₋₂ = α τₙ₊₁τₙ₋₁ + β τₙ²` with seeds `τ₀..τ₃`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Somos4Problem {
    #[serde(with = "serde_str")]
    pub alpha: Rational,
    #[serde(with = "serde_str")]
    pub beta: Rational,
    #[serde(with = "serde_vec")]
    pub seeds: Vec<Rational>,
}

/// Next term from four consecutive terms `w = (τₙ₋₂, τₙ₋₁, τₙ, τₙ₊₁)`; `first`
/// is the index of `w[0]`, used only for error reporting.
pub fn somos4_step(alpha: &Rational, beta: &Rational, w: &[Rational], first: i64) -> Result<Rational, RecurrenceError> {
    if w[0].is_zero() {
        return Err(RecurrenceError::VanishingTau { index: first });
    }
    Ok((alpha * &w[3] * &w[1] + beta * &w[2] * &w[2]) / &w[0])
}

/// Previous term from `w = (τₙ₋₁, τₙ, τₙ₊₁, τₙ₊₂)`; `first` is the index of `w[0]`.
pub fn somos4_step_back(
    alpha: &Rational,
    beta: &Rational,
    w: &[Rational],
    first: i64,
) -> Result<Rational, RecurrenceError> {
    if w[3].is_zero() {
        return Err(RecurrenceError::VanishingTau { index: first + 3 });
    }
    Ok((alpha * &w[2] * &w[0] + beta * &w[1] * &w[1]) / &w[3])
}

impl Somos4Problem {
    pub fn new(alpha: Rational, beta: Rational, seeds: Vec<Rational>) -> Result<Self, RecurrenceError> {
        if seeds.len() != 4 {
            return Err(RecurrenceError::Invalid(format!(
                "Somos-4 needs 4 seeds, got {}",
                seeds.len()
            )));
        }
        Ok(Somos4Problem { alpha, beta, seeds })
    }

    /// Exact terms `τ_lo..τ_hi`; the seeds sit at indices 0..3 and the window
    /// always covers them.
    pub fn run(&self, lo: i64, hi: i64) -> Result<SequenceWindow, RecurrenceError> {
        let spec = SomosKSpec {
            order_n: 1,
            coefficients: vec![self.beta.clone(), self.alpha.clone()],
            seeds: self.seeds.clone(),
            offset: 0,
        };
        let w = somos_k_run(&spec, lo.min(0), hi.max(3))?;
        w.slice(lo, hi)
    }
}

/// General `(N+2)`-term recurrence of order `2N+2`:
/// `τₙ₊ₙ₊₁ τₙ₋ₙ₋₁ = Σⱼ αⱼ τₙ₊ⱼ τₙ₋ⱼ` for `j = 0..N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SomosKSpec {
    /// N (the recurrence has order 2N+2).
    pub order_n: usize,
    #[serde(with = "serde_vec")]
    pub coefficients: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub seeds: Vec<Rational>,
    /// Index of the first seed.
    pub offset: i64,
}

impl SomosKSpec {
    pub fn order(&self) -> usize {
        2 * self.order_n + 2
    }

    fn validate(&self) -> Result<(), RecurrenceError> {
        if self.order_n == 0 {
            return Err(RecurrenceError::Invalid("N must be at least 1".into()));
        }
        if self.coefficients.len() != self.order_n + 1 {
            return Err(RecurrenceError::Invalid(format!(
                "expected {} coefficients, got {}",
                self.order_n + 1,
                self.coefficients.len()
            )));
        }
        if self.seeds.len() != self.order() {
            return Err(RecurrenceError::Invalid(format!(
                "expected {} seeds, got {}",
                self.order(),
                self.seeds.len()
            )));
        }
        Ok(())
    }

    /// Σⱼ αⱼ τₙ₊ⱼ τₙ₋ⱼ over a window of length 2N+1 centred on `w[N]`.
    fn bilinear_sum(&self, w: &[Rational]) -> Rational {
        let c = self.order_n;
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| a * &w[c + j] * &w[c - j])
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

/// Runs the recurrence in both directions to fill `[lo, hi]`. The window is
/// widened as needed to contain the seeds.
pub fn somos_k_run(spec: &SomosKSpec, lo: i64, hi: i64) -> Result<SequenceWindow, RecurrenceError> {
    spec.validate()?;
    let k = spec.order();
    let s_lo = spec.offset;
    let s_hi = spec.offset + k as i64 - 1;
    let mut terms: std::collections::VecDeque<Rational> = spec.seeds.iter().cloned().collect();
    let mut first = s_lo;

    let mut top = s_hi;
    while top < hi {
        // new index top+1 = m + N + 1 with centre m
        let len = terms.len();
        let w: Vec<Rational> = terms.range(len - k..).cloned().collect();
        if w[0].is_zero() {
            return Err(RecurrenceError::VanishingTau {
                index: top + 1 - k as i64,
            });
        }
        let next = spec.bilinear_sum(&w[1..]) / &w[0];
        terms.push_back(next);
        top += 1;
    }
    while first > lo {
        let w: Vec<Rational> = terms.range(..k).cloned().collect();
        if w[k - 1].is_zero() {
            return Err(RecurrenceError::VanishingTau {
                index: first + k as i64 - 1,
            });
        }
        let prev = spec.bilinear_sum(&w[..k - 1]) / &w[k - 1];
        terms.push_front(prev);
        first -= 1;
    }
    let w = SequenceWindow::new(first, terms.into_iter().collect());
    w.slice(lo.min(s_lo), hi.max(s_hi))
}

/// Antisymmetric elliptic divisibility sequence from `τ₁..τ₄`:
/// `τₙ₊₂τₙ₋₂ = τ₂² τₙ₊₁τₙ₋₁ − τ₁τ₃ τₙ²`, `τ₀ = 0`, `τ₋ₙ = −τₙ`.
///
/// The antisymmetric extension is compatible with the recurrence across
/// `n = 0` only when `τ₁² = 1`, so other values of `τ₁` are rejected.
pub fn eds_generate(seeds: &[Rational], lo: i64, hi: i64) -> Result<SequenceWindow, RecurrenceError> {
    if seeds.len() != 4 {
        return Err(RecurrenceError::Invalid(format!(
            "EDS needs tau_1..tau_4, got {} values",
            seeds.len()
        )));
    }
    let t1 = &seeds[0];
    if t1.is_zero() {
        return Err(RecurrenceError::Domain { index: 1 });
    }
    if !(t1 * t1).is_one() {
        return Err(RecurrenceError::Invalid(
            "antisymmetric extension requires tau_1 = 1 or -1".into(),
        ));
    }
    let alpha = &seeds[1] * &seeds[1];
    let beta = -(t1 * &seeds[2]);
    let top = hi.abs().max(lo.abs()).max(4);
    let mut pos = vec![Rational::zero()];
    pos.extend(seeds.iter().cloned());
    while (pos.len() as i64) <= top {
        let m = pos.len();
        let next = somos4_step(&alpha, &beta, &pos[m - 4..], m as i64 - 4)?;
        pos.push(next);
    }
    let terms: Vec<Rational> = (lo..=hi)
        .map(|n| {
            let t = &pos[n.unsigned_abs() as usize];
            if n < 0 {
                -t.clone()
            } else {
                t.clone()
            }
        })
        .collect();
    let w = SequenceWindow::new(lo, terms);
    // re-verify the recurrence over every full stencil in the window
    for c in lo + 2..=hi - 2 {
        let t = |i: i64| w.get(i).unwrap();
        let lhs = t(c + 2) * t(c - 2);
        let rhs = &alpha * t(c + 1) * t(c - 1) + &beta * t(c) * t(c);
        if lhs != rhs {
            return Err(RecurrenceError::Invalid(format!(
                "recurrence fails at centre {c} after antisymmetric extension"
            )));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rational::int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn somos4_examples() {
        let p = Somos4Problem::new(int(1), int(1), ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(somos4_step(&p.alpha, &p.beta, &p.seeds, 0).unwrap(), int(2));
        let w = p.run(0, 9).unwrap();
        assert_eq!(w.display_terms(), "1,1,1,1,2,3,7,23,59,314");

        // τ₁ = 1, τ₂ = τ₃ = τ₄ = −1 continues as 2, 1, −3, 5, 7
        let q = SomosKSpec {
            order_n: 1,
            coefficients: ints(&[1, 1]),
            seeds: ints(&[1, -1, -1, -1]),
            offset: 1,
        };
        let w = somos_k_run(&q, 1, 9).unwrap();
        assert_eq!(w.slice(5, 9).unwrap().display_terms(), "2,1,-3,5,7");

        let c = Somos4Problem::new(int(1), int(0), ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(c.run(-5, 10).unwrap().terms, vec![int(1); 16]);
    }

    #[test]
    fn backward_run() {
        let p = Somos4Problem::new(int(1), int(1), ints(&[1, 1, 1, 1])).unwrap();
        let w = p.run(-4, 3).unwrap();
        // the sequence is symmetric about n = 3/2
        assert_eq!(w.display_terms(), "23,7,3,2,1,1,1,1");
    }

    #[test]
    fn vanishing_tau_is_reported() {
        let p = Somos4Problem::new(int(1), int(1), ints(&[0, 1, 1, 1])).unwrap();
        assert_eq!(p.run(0, 6).unwrap_err(), RecurrenceError::VanishingTau { index: 0 });
    }

    #[test]
    fn eds_examples() {
        let w = eds_generate(&ints(&[1, -1, -1, -1]), 0, 9).unwrap();
        assert_eq!(w.display_terms(), "0,1,-1,-1,-1,2,1,-3,5,7");
        let w = eds_generate(&ints(&[1, 1, -1, 1]), -12, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(w.get(-n).unwrap(), &-w.get(n).unwrap().clone());
        }
        assert!(eds_generate(&[rat(2, 1), int(1), int(1), int(1)], 0, 5).is_err());
    }

    #[test]
    fn somos_k_trivial_cases() {
        let spec = SomosKSpec {
            order_n: 1,
            coefficients: ints(&[0, 1]),
            seeds: ints(&[1, 1, 1, 1]),
            offset: 0,
        };
        assert_eq!(somos_k_run(&spec, -6, 10).unwrap().terms, vec![int(1); 17]);
    }
}
