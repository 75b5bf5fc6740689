//! Exact arithmetic on the Jacobian of `y² = 4x⁵ + c₄x⁴ + c₃x³ + c₂x² + c₁x + c₀`
//! in Mumford representation, and the order-8 bilinear recurrence satisfied by
//! tau sequences along a translation by a theta-divisor point.

mod somos8;

pub use somos8::{
    bolza_seq, fit_somos8, fit_somos8_rows, tau_from_f, tau_from_f_anchored, usable_rows, verify_sixth_order,
    verify_somos8, BolzaSequence, ResidualReport,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::rational::{int, serde_str, serde_vec};
use crate::algebra::{format_rational, AlgebraError, Rational, UniPoly};
use crate::recurrence::RecurrenceError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Genus2Error {
    #[error("singular curve: f and f' share the factor {common}")]
    Singular { common: String },
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: String, y: String },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("x = {0} is not a root of U")]
    NotRoot(String),
    #[error("theta-divisor gap at index {index}")]
    Gap { index: i64 },
    #[error("only {rows} usable rows; at least 4 are needed")]
    Insufficient { rows: usize },
    #[error("degenerate configuration: the fitting system has rank {rank} on every choice of rows")]
    Degenerate { rank: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuinticCurve {
    #[serde(with = "serde_str")]
    pub c0: Rational,
    #[serde(with = "serde_str")]
    pub c1: Rational,
    #[serde(with = "serde_str")]
    pub c2: Rational,
    #[serde(with = "serde_str")]
    pub c3: Rational,
    #[serde(with = "serde_str")]
    pub c4: Rational,
}

impl QuinticCurve {
    pub fn new(c: [Rational; 5]) -> Result<Self, Genus2Error> {
        let [c0, c1, c2, c3, c4] = c;
        let curve = QuinticCurve { c0, c1, c2, c3, c4 };
        curve.validate()?;
        Ok(curve)
    }

    pub fn from_ints(c: [i64; 5]) -> Result<Self, Genus2Error> {
        Self::new(c.map(int))
    }

    /// Rejects curves where `f` has a repeated root.
    pub fn validate(&self) -> Result<(), Genus2Error> {
        let f = self.f();
        let g = UniPoly::gcd(&f, &f.derivative());
        if g.degree() != Some(0) {
            return Err(Genus2Error::Singular { common: g.to_string() });
        }
        Ok(())
    }

    pub fn f(&self) -> UniPoly {
        UniPoly::new(vec![
            self.c0.clone(),
            self.c1.clone(),
            self.c2.clone(),
            self.c3.clone(),
            self.c4.clone(),
            int(4),
        ])
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.f().eval(x)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        &p.y * &p.y == self.eval(&p.x)
    }

    pub fn point(&self, x: Rational, y: Rational) -> Result<CurvePoint, Genus2Error> {
        let p = CurvePoint { x, y };
        if !self.contains(&p) {
            return Err(Genus2Error::NotOnCurve {
                x: format_rational(&p.x),
                y: format_rational(&p.y),
            });
        }
        Ok(p)
    }

    /// Reduced divisor `(P₁ − ∞) + (P₂ − ∞)`.
    pub fn divisor_of_points(&self, pts: &[CurvePoint]) -> Result<MumfordDivisor, Genus2Error> {
        let mut d = MumfordDivisor::identity();
        for p in pts {
            d = self.add(&d, &self.point_divisor(p)?)?;
        }
        Ok(d)
    }

    /// `P − ∞` as `{x − λ, μ}`.
    pub fn point_divisor(&self, p: &CurvePoint) -> Result<MumfordDivisor, Genus2Error> {
        if !self.contains(p) {
            return Err(Genus2Error::NotOnCurve {
                x: format_rational(&p.x),
                y: format_rational(&p.y),
            });
        }
        Ok(MumfordDivisor {
            u: UniPoly::linear_root(p.x.clone()),
            v: UniPoly::constant(p.y.clone()),
        })
    }

    pub fn check(&self, d: &MumfordDivisor) -> Result<(), Genus2Error> {
        let du =
            d.u.degree()
                .ok_or_else(|| Genus2Error::InvalidDivisor("U = 0".into()))?;
        if du > 2 {
            return Err(Genus2Error::InvalidDivisor("deg U > 2".into()));
        }
        if !d.u.leading().is_one() {
            return Err(Genus2Error::InvalidDivisor("U not monic".into()));
        }
        if d.v.degree().is_some_and(|dv| dv >= du) {
            return Err(Genus2Error::InvalidDivisor("deg V >= deg U".into()));
        }
        let r = (&(&d.v * &d.v) - &self.f()).rem(&d.u)?;
        if !r.is_zero() {
            return Err(Genus2Error::InvalidDivisor("V^2 - f is not divisible by U".into()));
        }
        Ok(())
    }

    /// Cantor composition followed by reduction.
    pub fn add(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> Result<MumfordDivisor, Genus2Error> {
        self.check(a)?;
        self.check(b)?;
        let f = self.f();
        let (d1, e1, e2) = UniPoly::xgcd(&a.u, &b.u);
        let (d, c1, s3) = UniPoly::xgcd(&d1, &(&a.v + &b.v));
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let mut u = (&a.u * &b.u).exact_div(&(&d * &d))?;
        let num = &(&(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v)) + &(&s3 * &(&(&a.v * &b.v) + &f));
        let mut v = num.exact_div(&d)?.rem(&u)?;
        while u.degree().unwrap_or(0) > 2 {
            let un = (&f - &(&v * &v)).exact_div(&u)?;
            u = un.monic();
            v = (-&v).rem(&u)?;
        }
        u = u.monic();
        v = v.rem(&u)?;
        Ok(MumfordDivisor { u, v })
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor {
            u: d.u.clone(),
            v: -&d.v,
        }
    }

    pub fn double(&self, d: &MumfordDivisor) -> Result<MumfordDivisor, Genus2Error> {
        self.add(d, d)
    }

    /// `n·D` by double-and-add.
    pub fn mul(&self, d: &MumfordDivisor, n: i64) -> Result<MumfordDivisor, Genus2Error> {
        let base = if n < 0 { self.neg(d) } else { d.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = MumfordDivisor::identity();
        let mut pw = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pw)?;
            }
            k >>= 1;
            if k > 0 {
                pw = self.double(&pw)?;
            }
        }
        Ok(acc)
    }

    /// `𝒟ₙ = 𝒟₀ + n(P − ∞)` for `lo ≤ n ≤ hi` (which must contain 0).
    pub fn divisor_sequence(
        &self,
        d0: &MumfordDivisor,
        p: &CurvePoint,
        lo: i64,
        hi: i64,
    ) -> Result<Vec<(i64, MumfordDivisor)>, Genus2Error> {
        if lo > 0 || hi < 0 {
            return Err(Genus2Error::InvalidDivisor("range must contain 0".into()));
        }
        let step = self.point_divisor(p)?;
        let back = self.neg(&step);
        let mut fwd = vec![d0.clone()];
        for _ in 0..hi {
            let next = self.add(fwd.last().unwrap(), &step)?;
            fwd.push(next);
        }
        let mut bwd = Vec::new();
        let mut cur = d0.clone();
        for _ in lo..0 {
            cur = self.add(&cur, &back)?;
            bwd.push(cur.clone());
        }
        bwd.reverse();
        Ok(bwd.into_iter().chain(fwd).zip(lo..=hi).map(|(d, n)| (n, d)).collect())
    }

    /// `y` coordinate of the point of `D` above `x₀`, i.e. `V(x₀)`.
    pub fn y_from_divisor(&self, d: &MumfordDivisor, x0: &Rational) -> Result<Rational, Genus2Error> {
        if !d.u.eval(x0).is_zero() {
            return Err(Genus2Error::NotRoot(format_rational(x0)));
        }
        Ok(d.v.eval(x0))
    }

    /// Shift `x → x − c₄/20`, which removes the `x⁴` term.
    pub fn depressed(&self) -> Result<(QuinticCurve, Rational), Genus2Error> {
        let s = -&self.c4 / int(20);
        let f = self.f();
        let lin = UniPoly::new(vec![s.clone(), Rational::one()]);
        let mut acc = UniPoly::zero();
        for c in f.coeffs().iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        let c: Vec<Rational> = (0..5).map(|i| acc.coeff(i)).collect();
        Ok((
            QuinticCurve::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone()])?,
            s,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(with = "serde_str")]
    pub x: Rational,
    #[serde(with = "serde_str")]
    pub y: Rational,
}

impl CurvePoint {
    pub fn involution(&self) -> CurvePoint {
        CurvePoint {
            x: self.x.clone(),
            y: -&self.y,
        }
    }
}

/// `(U, V)` with `U` monic of degree ≤ 2, `deg V < deg U` and `U | V² − f`.
#[derive(Clone, Debug, PartialEq)]
pub struct MumfordDivisor {
    pub u: UniPoly,
    pub v: UniPoly,
}

impl MumfordDivisor {
    pub fn identity() -> Self {
        MumfordDivisor {
            u: UniPoly::one(),
            v: UniPoly::zero(),
        }
    }

    pub fn degree(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    pub fn to_json(&self) -> DivisorJson {
        DivisorJson {
            u: self.u.coeffs().to_vec(),
            v: self.v.coeffs().to_vec(),
        }
    }

    pub fn from_json(j: &DivisorJson) -> Self {
        MumfordDivisor {
            u: UniPoly::new(j.u.clone()),
            v: UniPoly::new(j.v.clone()),
        }
    }
}

impl std::fmt::Display for MumfordDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{U = {}, V = {}}}", self.u, self.v)
    }
}

/// Coefficients in ascending degree, as exact strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorJson {
    #[serde(rename = "U", with = "serde_vec")]
    pub u: Vec<Rational>,
    #[serde(rename = "V", with = "serde_vec")]
    pub v: Vec<Rational>,
}
