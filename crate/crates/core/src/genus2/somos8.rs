use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CurvePoint, Genus2Error, MumfordDivisor, QuinticCurve};
use crate::algebra::{format_rational, matrix_rank, solve_linear_exact, Rational};
use crate::recurrence::{RecurrenceError, SequenceWindow};

/// `fₙ = Uₙ(λ)` along `𝒟ₙ = 𝒟₀ + n(P − ∞)`; `None` marks indices where
/// `deg Uₙ < 2` (the translate meets the theta divisor).
#[derive(Clone, Debug, PartialEq)]
pub struct BolzaSequence {
    pub lambda: Rational,
    pub offset: i64,
    pub values: Vec<Option<Rational>>,
}

impl BolzaSequence {
    pub fn lo(&self) -> i64 {
        self.offset
    }

    pub fn hi(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&Rational> {
        if n < self.lo() || n > self.hi() {
            return None;
        }
        self.values[(n - self.offset) as usize].as_ref()
    }

    pub fn gaps(&self) -> Vec<i64> {
        (self.lo()..=self.hi()).filter(|&n| self.get(n).is_none()).collect()
    }

    /// Maximal gap-free runs `(lo, hi)`.
    pub fn segments(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut start = None;
        for n in self.lo()..=self.hi() + 1 {
            match (self.get(n).is_some(), start) {
                (true, None) => start = Some(n),
                (false, Some(s)) => {
                    out.push((s, n - 1));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }
}

pub fn bolza_seq(
    curve: &QuinticCurve,
    d0: &MumfordDivisor,
    p: &CurvePoint,
    lo: i64,
    hi: i64,
) -> Result<BolzaSequence, Genus2Error> {
    let divs = curve.divisor_sequence(d0, p, lo.min(0), hi.max(0))?;
    let values = divs
        .iter()
        .filter(|(n, _)| (lo..=hi).contains(n))
        .map(|(_, d)| (d.degree() == 2).then(|| d.u.eval(&p.x)))
        .collect();
    Ok(BolzaSequence {
        lambda: p.x.clone(),
        offset: lo,
        values,
    })
}

/// `τ` on `[lo − 1, hi + 1]` from `τₙ₊₁τₙ₋₁ = fₙτₙ²`, in the gauge
/// `τ_{n0} = τ_{n0+1} = 1`. Any other solution differs by `A·Bⁿ`. When the run
/// is bounded by gaps, the end values `τ_{lo−1}`, `τ_{hi+1}` come out zero.
pub fn tau_from_f_anchored(seq: &BolzaSequence, lo: i64, hi: i64, n0: i64) -> Result<SequenceWindow, Genus2Error> {
    if hi <= lo || n0 < lo || n0 >= hi {
        return Err(Genus2Error::Insufficient { rows: 0 });
    }
    let f = |n: i64| seq.get(n).ok_or(Genus2Error::Gap { index: n });
    let len = (hi - lo + 3) as usize;
    let idx = |n: i64| (n - lo + 1) as usize;
    let mut t = vec![Rational::zero(); len];
    t[idx(n0)] = Rational::one();
    t[idx(n0 + 1)] = Rational::one();
    for n in n0 + 1..=hi {
        let prev = &t[idx(n - 1)];
        if prev.is_zero() {
            return Err(RecurrenceError::VanishingTau { index: n - 1 }.into());
        }
        t[idx(n + 1)] = f(n)? * &t[idx(n)] * &t[idx(n)] / prev;
    }
    for n in (lo..=n0).rev() {
        let next = &t[idx(n + 1)];
        if next.is_zero() {
            return Err(RecurrenceError::VanishingTau { index: n + 1 }.into());
        }
        t[idx(n - 1)] = f(n)? * &t[idx(n)] * &t[idx(n)] / next;
    }
    Ok(SequenceWindow::new(lo - 1, t))
}

/// [`tau_from_f_anchored`] with the gauge fixed in the middle of the run,
/// which keeps heights down.
pub fn tau_from_f(seq: &BolzaSequence, lo: i64, hi: i64) -> Result<SequenceWindow, Genus2Error> {
    tau_from_f_anchored(seq, lo, hi, lo + (hi - lo - 1) / 2)
}

/// Indices `n` whose stencil `n−4..n+4` lies in the window with no zero term.
pub fn usable_rows(w: &SequenceWindow) -> Vec<i64> {
    (w.lo() + 4..=w.hi() - 4)
        .filter(|&n| (n - 4..=n + 4).all(|k| w.get(k).is_some_and(|t| !t.is_zero())))
        .collect()
}

fn row(w: &SequenceWindow, n: i64) -> Result<(Vec<Rational>, Rational), Genus2Error> {
    let mut r = Vec::with_capacity(4);
    for j in 0..4 {
        r.push(w.at(n + j)? * w.at(n - j)?);
    }
    Ok((r, w.at(n + 4)? * w.at(n - 4)?))
}

/// Solves for `αⱼ` in `τₙ₊₄τₙ₋₄ = Σⱼ αⱼτₙ₊ⱼτₙ₋ⱼ` from four given rows.
pub fn fit_somos8_rows(w: &SequenceWindow, rows: &[i64]) -> Result<[Rational; 4], Genus2Error> {
    let mut m = Vec::new();
    let mut rhs = Vec::new();
    for &n in rows {
        let (r, b) = row(w, n)?;
        m.push(r);
        rhs.push(b);
    }
    let a = solve_linear_exact(&m, &rhs).map_err(|e| match e {
        crate::algebra::AlgebraError::Singular { rank, .. } => Genus2Error::Degenerate { rank },
        e => e.into(),
    })?;
    Ok([a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()])
}

/// Fits from the first four usable rows that give a nonsingular system.
pub fn fit_somos8(w: &SequenceWindow) -> Result<[Rational; 4], Genus2Error> {
    let rows = usable_rows(w);
    if rows.len() < 4 {
        return Err(Genus2Error::Insufficient { rows: rows.len() });
    }
    let mut chosen = Vec::new();
    let mut m: Vec<Vec<Rational>> = Vec::new();
    for &n in &rows {
        let (r, _) = row(w, n)?;
        m.push(r);
        if matrix_rank(&m) == m.len() {
            chosen.push(n);
            if chosen.len() == 4 {
                return fit_somos8_rows(w, &chosen);
            }
        } else {
            m.pop();
        }
    }
    Err(Genus2Error::Degenerate { rank: m.len() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity: String,
    pub checked: Vec<i64>,
    /// Indices with a nonzero residual, and the residual.
    pub nonzero: Vec<(i64, String)>,
    /// Indices in range whose stencil leaves the data or crosses a gap.
    pub skipped: Vec<i64>,
    pub pass: bool,
}

impl ResidualReport {
    fn new(identity: &str) -> Self {
        ResidualReport {
            identity: identity.into(),
            checked: Vec::new(),
            nonzero: Vec::new(),
            skipped: Vec::new(),
            pass: true,
        }
    }

    fn record(&mut self, n: i64, r: Rational) {
        self.checked.push(n);
        if !r.is_zero() {
            self.nonzero.push((n, format_rational(&r)));
            self.pass = false;
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.nonzero.is_empty() && !self.checked.is_empty();
        self
    }
}

pub fn verify_somos8(w: &SequenceWindow, alpha: &[Rational; 4]) -> ResidualReport {
    let mut rep = ResidualReport::new("somos8");
    // cleared of denominators: b·Πdᵢ·(τₙ₊₄τₙ₋₄ − Σ αⱼτₙ₊ⱼτₙ₋ⱼ), integers only
    let b = alpha.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    let a: Vec<BigInt> = alpha.iter().map(|x| x.numer() * (&b / x.denom())).collect();
    for n in w.lo()..=w.hi() {
        if n - 4 < w.lo() || n + 4 > w.hi() {
            rep.skipped.push(n);
            continue;
        }
        let t = |k: i64| w.get(k).expect("stencil inside window");
        let nd: Vec<(BigInt, BigInt)> = (0..=4)
            .map(|j| {
                let (x, y) = (t(n + j), t(n - j));
                (x.numer() * y.numer(), x.denom() * y.denom())
            })
            .collect();
        let others = |skip: usize| {
            nd.iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .fold(BigInt::one(), |acc, (_, (_, d))| acc * d)
        };
        let mut r = &b * &nd[4].0 * others(4);
        for j in 0..4 {
            r -= &a[j] * &nd[j].0 * others(j);
        }
        if r.is_zero() {
            rep.record(n, Rational::zero());
        } else {
            let (x, s) = row(w, n).expect("stencil inside window");
            let sum = x.iter().zip(alpha).fold(Rational::zero(), |acc, (x, a)| acc + x * a);
            rep.record(n, s - sum);
        }
    }
    rep.finish()
}

/// `fₙ⁴Π_{k=1}^{3}(fₙ₊ₖfₙ₋ₖ)^{4−k} = α₀ + Σ_{j=1}^{3} αⱼfₙʲΠ_{k=1}^{j−1}(fₙ₊ₖfₙ₋ₖ)^{j−k}`.
pub fn verify_sixth_order(seq: &BolzaSequence, alpha: &[Rational; 4]) -> ResidualReport {
    let mut rep = ResidualReport::new("sixth-order");
    for n in seq.lo()..=seq.hi() {
        let stencil: Option<Vec<&Rational>> = (n - 3..=n + 3).map(|k| seq.get(k)).collect();
        let Some(s) = stencil else {
            rep.skipped.push(n);
            continue;
        };
        let fn_ = s[3];
        let big_f: Vec<Rational> = (1..=3).map(|k| s[3 + k] * s[3 - k]).collect();
        let g = |j: usize| {
            let mut v = num_traits::pow(fn_.clone(), j);
            for k in 1..j {
                v *= num_traits::pow(big_f[k - 1].clone(), j - k);
            }
            v
        };
        let rhs = &alpha[0] + (1..=3).fold(Rational::zero(), |acc, j| acc + &alpha[j] * g(j));
        rep.record(n, g(4) - rhs);
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn setup(d0_x: i64) -> (QuinticCurve, BolzaSequence) {
        let c = QuinticCurve::from_ints([1, -4, 0, 0, 0]).unwrap();
        let d0 = c
            .divisor_of_points(&[c.point(int(0), int(1)).unwrap(), c.point(int(d0_x), int(1)).unwrap()])
            .unwrap();
        let p = c.point(int(-1), int(1)).unwrap();
        let s = bolza_seq(&c, &d0, &p, -12, 12).unwrap();
        (c, s)
    }

    #[test]
    fn bolza_initial_value() {
        let c = QuinticCurve::from_ints([1, -4, 0, 0, 0]).unwrap();
        let d0 = c
            .divisor_of_points(&[c.point(int(0), int(1)).unwrap(), c.point(int(-1), int(1)).unwrap()])
            .unwrap();
        let s = bolza_seq(&c, &d0, &c.point(int(1), int(1)).unwrap(), -2, 2).unwrap();
        assert_eq!(s.get(0), Some(&int(2)));
    }

    #[test]
    fn constant_f_gives_constant_tau() {
        let s = BolzaSequence {
            lambda: int(0),
            offset: 0,
            values: vec![Some(int(1)); 6],
        };
        let t = tau_from_f(&s, 0, 5).unwrap();
        assert_eq!((t.lo(), t.hi()), (-1, 6));
        assert!(t.terms.iter().all(|x| x.is_one()));
        let t = tau_from_f_anchored(&s, 0, 5, 0).unwrap();
        assert!(t.terms.iter().all(|x| x.is_one()));
    }

    #[test]
    fn fit_is_window_and_base_independent() {
        let (_, s) = setup(1);
        let (lo, hi) = *s.segments().iter().max_by_key(|(a, b)| b - a).unwrap();
        let t = tau_from_f(&s, lo, hi).unwrap();
        let rows = usable_rows(&t);
        let a = fit_somos8(&t).unwrap();
        let b = fit_somos8_rows(&t, &rows[rows.len() - 4..]).unwrap();
        assert_eq!(a, b);
        assert!(verify_somos8(&t, &a).pass);
        assert!(verify_sixth_order(&s, &a).pass);

        let t2 = tau_from_f_anchored(&s, lo, hi, lo + 3).unwrap();
        assert_eq!(fit_somos8(&t2).unwrap(), a);

        let (_, s2) = setup(-1);
        let (lo2, hi2) = *s2.segments().iter().max_by_key(|(a, b)| b - a).unwrap();
        let t3 = tau_from_f(&s2, lo2, hi2).unwrap();
        assert_eq!(fit_somos8(&t3).unwrap(), a);
    }

    #[test]
    fn perturbation_is_localised() {
        let (_, s) = setup(1);
        let (lo, hi) = *s.segments().iter().max_by_key(|(a, b)| b - a).unwrap();
        let mut t = tau_from_f(&s, lo, hi).unwrap();
        let a = fit_somos8(&t).unwrap();
        let k = t.lo() + 10;
        let idx = (k - t.lo()) as usize;
        t.terms[idx] += int(1);
        let rep = verify_somos8(&t, &a);
        let bad: Vec<i64> = rep.nonzero.iter().map(|(n, _)| *n).collect();
        let expect: Vec<i64> = rep.checked.iter().cloned().filter(|n| (n - k).abs() <= 4).collect();
        assert_eq!(bad, expect);
    }
}
