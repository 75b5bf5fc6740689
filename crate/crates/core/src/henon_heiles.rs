//! Case (ii) Hénon-Heiles system: integrals, Lax matrix, and the Bäcklund
//! transformation realised as conjugation by an elementary Darboux matrix.
//!
//! The Lax matrix only sees `q₁` through `q₁²` and `q₁p₁`, so the BT is
//! computed on [`LaxCoords`] and the sign of `q₁` is chosen afterwards. In
//! exact mode `q̃₁²` is often not a rational square; the coordinate-level
//! routines stay exact regardless.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::rational::{exact_sqrt, to_f64};
use crate::algebra::{Field, Poly, Rational, UniPoly};
use crate::genus2::{CurvePoint, Genus2Error, MumfordDivisor, QuinticCurve};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HHError {
    #[error("q1 = 0 with m != 0 (or p1 undetermined)")]
    Singular,
    #[error("B(lambda) = 0: lambda is an x-coordinate of the current divisor")]
    DivisorCollision,
    #[error("f(lambda) has no square root in this number system")]
    NoSquareRoot,
    #[error("q1^2 of the new state has no admissible square root")]
    Branch,
    #[error("transformed Lax matrix lost its structure (residual {0:e})")]
    Consistency(f64),
    #[error("coincident separation variables")]
    Degenerate,
    #[error("genus-2 pipeline: {0}")]
    Genus2(#[from] Genus2Error),
}

/// Number system for the shared real / exact code path.
pub trait Scalar: Field {
    /// Square root when it exists in the system (non-negative reals, rational squares).
    fn sqrt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Relative tolerance for structural checks; zero means exact.
    fn tolerance() -> f64;
}

impl Scalar for f64 {
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn tolerance() -> f64 {
        1e-9
    }
}

impl Scalar for Rational {
    fn sqrt(&self) -> Option<Self> {
        exact_sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn tolerance() -> f64 {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HHParams<T> {
    pub a: T,
    pub c: T,
    pub m: T,
}

impl<T: Scalar> HHParams<T> {
    pub fn new(a: T, c: T, m: T) -> Self {
        HHParams { a, c, m }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HHState<T> {
    pub q1: T,
    pub q2: T,
    pub p1: T,
    pub p2: T,
}

/// The combinations of the phase point that enter the Lax matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxCoords<T> {
    pub q1_sq: T,
    pub q2: T,
    pub q1p1: T,
    pub p2: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Branch {
    /// Keep the sign of the current `q₁`.
    #[default]
    Continuity,
    Positive,
    Negative,
}

impl<T: Scalar> HHState<T> {
    pub fn new(q1: T, q2: T, p1: T, p2: T) -> Self {
        HHState { q1, q2, p1, p2 }
    }

    pub fn coords(&self) -> LaxCoords<T> {
        LaxCoords {
            q1_sq: self.q1.clone() * self.q1.clone(),
            q2: self.q2.clone(),
            q1p1: self.q1.clone() * self.p1.clone(),
            p2: self.p2.clone(),
        }
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.q1.to_f64(), self.q2.to_f64(), self.p1.to_f64(), self.p2.to_f64()]
    }

    /// `m²/q₁²`, zero when `m = 0` (even at `q₁ = 0`).
    fn m_term(&self, pr: &HHParams<T>) -> Result<T, HHError> {
        if pr.m.is_zero() {
            return Ok(T::zero());
        }
        if self.q1.is_zero() {
            return Err(HHError::Singular);
        }
        Ok(pr.m.clone() * pr.m.clone() / (self.q1.clone() * self.q1.clone()))
    }
}

impl<T: Scalar> LaxCoords<T> {
    /// Recovers a phase point; `reference` is the previous `q₁` for [`Branch::Continuity`].
    pub fn to_state(&self, branch: Branch, reference: Option<&T>) -> Result<HHState<T>, HHError> {
        let r = self.q1_sq.sqrt().ok_or(HHError::Branch)?;
        if r.is_zero() {
            return Err(HHError::Branch);
        }
        let negative = match branch {
            Branch::Positive => false,
            Branch::Negative => true,
            Branch::Continuity => reference.is_some_and(|q| q.to_f64() < 0.0),
        };
        let q1 = if negative { -r } else { r };
        let p1 = self.q1p1.clone() / q1.clone();
        Ok(HHState::new(q1, self.q2.clone(), p1, self.p2.clone()))
    }

    /// `p₁²` and `m²/q₁²`, both expressed through `q₁²`.
    fn squares(&self, pr: &HHParams<T>) -> Result<(T, T), HHError> {
        if self.q1_sq.is_zero() {
            return Err(HHError::Singular);
        }
        let p1_sq = self.q1p1.clone() * self.q1p1.clone() / self.q1_sq.clone();
        let m_term = pr.m.clone() * pr.m.clone() / self.q1_sq.clone();
        Ok((p1_sq, m_term))
    }

    pub fn h1(&self, pr: &HHParams<T>) -> Result<T, HHError> {
        let (p1_sq, m_term) = self.squares(pr)?;
        Ok(h1_parts(&self.q1_sq, &self.q2, &p1_sq, &self.p2, &m_term, pr))
    }

    pub fn h2(&self, pr: &HHParams<T>) -> Result<T, HHError> {
        let (p1_sq, m_term) = self.squares(pr)?;
        Ok(h2_parts(
            &self.q1_sq,
            &self.q2,
            &p1_sq,
            &self.q1p1,
            &self.p2,
            &m_term,
            pr,
        ))
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.q1_sq.to_f64(),
            self.q2.to_f64(),
            self.q1p1.to_f64(),
            self.p2.to_f64(),
        ]
    }
}

fn half<T: Scalar>() -> T {
    T::from_ratio(1, 2)
}

fn h1_parts<T: Scalar>(q1_sq: &T, q2: &T, p1_sq: &T, p2: &T, m_term: &T, pr: &HHParams<T>) -> T {
    let h = half::<T>();
    h.clone() * (p1_sq.clone() + p2.clone() * p2.clone())
        + q2.clone() * q2.clone() * q2.clone()
        + h.clone() * q2.clone() * q1_sq.clone()
        - h.clone() * pr.a.clone() * q1_sq.clone()
        + pr.c.clone() * q2.clone()
        - h * m_term.clone()
}

fn h2_parts<T: Scalar>(q1_sq: &T, q2: &T, p1_sq: &T, q1p1: &T, p2: &T, m_term: &T, pr: &HHParams<T>) -> T {
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let s = q2.clone() + two.clone() * pr.a.clone();
    let inner =
        q2.clone() * q2.clone() - two * pr.a.clone() * q2.clone() + pr.c.clone() + four * pr.a.clone() * pr.a.clone();
    s.clone() * p1_sq.clone() / T::from_i64(4)
        - q1p1.clone() * p2.clone() / T::from_i64(4)
        - q1_sq.clone() * q1_sq.clone() / T::from_i64(32)
        - inner * q1_sq.clone() / T::from_i64(8)
        - m_term.clone() * s / T::from_i64(4)
}

/// The Hamiltonian.
pub fn h1<T: Scalar>(st: &HHState<T>, pr: &HHParams<T>) -> Result<T, HHError> {
    let m_term = st.m_term(pr)?;
    let q1_sq = st.q1.clone() * st.q1.clone();
    let p1_sq = st.p1.clone() * st.p1.clone();
    Ok(h1_parts(&q1_sq, &st.q2, &p1_sq, &st.p2, &m_term, pr))
}

/// The second integral, in involution with `h₁`.
pub fn h2<T: Scalar>(st: &HHState<T>, pr: &HHParams<T>) -> Result<T, HHError> {
    let m_term = st.m_term(pr)?;
    let q1_sq = st.q1.clone() * st.q1.clone();
    let p1_sq = st.p1.clone() * st.p1.clone();
    let q1p1 = st.q1.clone() * st.p1.clone();
    Ok(h2_parts(&q1_sq, &st.q2, &p1_sq, &q1p1, &st.p2, &m_term, pr))
}

/// `L(x) = [[A, B], [C, −A]]`, traceless, entries polynomial in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxMatrix<T: Field> {
    pub a: Poly<T>,
    pub b: Poly<T>,
    pub c: Poly<T>,
}

impl<T: Scalar> LaxMatrix<T> {
    pub fn entries(&self) -> [[Poly<T>; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), -&self.a]]
    }

    pub fn trace(&self) -> Poly<T> {
        &self.a + &(-&self.a)
    }

    /// `−det L = A² + BC`, the right-hand side of `y² = f(x)`.
    pub fn spectral_poly(&self) -> Poly<T> {
        &(&self.a * &self.a) + &(&self.b * &self.c)
    }
}

pub fn lax_matrix<T: Scalar>(st: &HHState<T>, pr: &HHParams<T>) -> Result<LaxMatrix<T>, HHError> {
    let co = st.coords();
    let m_term = st.m_term(pr)?;
    let p1_sq = st.p1.clone() * st.p1.clone();
    Ok(lax_from_parts(&co, &p1_sq, &m_term, pr))
}

pub fn lax_from_coords<T: Scalar>(co: &LaxCoords<T>, pr: &HHParams<T>) -> Result<LaxMatrix<T>, HHError> {
    let (p1_sq, m_term) = co.squares(pr)?;
    Ok(lax_from_parts(co, &p1_sq, &m_term, pr))
}

fn lax_from_parts<T: Scalar>(co: &LaxCoords<T>, p1_sq: &T, m_term: &T, pr: &HHParams<T>) -> LaxMatrix<T> {
    let eighth = T::from_ratio(1, 8);
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let a = &pr.a;
    let lin = co.q1_sq.clone() + four.clone() * co.q2.clone() * co.q2.clone()
        - T::from_i64(8) * a.clone() * co.q2.clone()
        + T::from_i64(16) * a.clone() * a.clone()
        + four.clone() * pr.c.clone();
    LaxMatrix {
        a: Poly::new(vec![-(eighth.clone() * co.q1p1.clone()), half::<T>() * co.p2.clone()]),
        b: Poly::new(vec![
            eighth.clone() * (p1_sq.clone() - m_term.clone()),
            eighth.clone() * lin,
            four * a.clone() - co.q2.clone(),
            two.clone(),
        ]),
        c: Poly::new(vec![
            -(eighth * co.q1_sq.clone()),
            co.q2.clone() + two.clone() * a.clone(),
            two,
        ]),
    }
}

/// Coefficients `[f₀, …, f₅]` of the spectral curve `y² = f(x)`, `f₅ = 4`.
pub fn spectral_curve<T: Scalar>(st: &HHState<T>, pr: &HHParams<T>) -> Result<[T; 6], HHError> {
    Ok(curve_coeffs(&lax_matrix(st, pr)?))
}

pub fn spectral_curve_coords<T: Scalar>(co: &LaxCoords<T>, pr: &HHParams<T>) -> Result<[T; 6], HHError> {
    Ok(curve_coeffs(&lax_from_coords(co, pr)?))
}

fn curve_coeffs<T: Scalar>(l: &LaxMatrix<T>) -> [T; 6] {
    let f = l.spectral_poly();
    std::array::from_fn(|i| f.coeff(i))
}

/// The same curve written through the integrals.
pub fn spectral_curve_from_integrals<T: Scalar>(h1: &T, h2: &T, pr: &HHParams<T>) -> [T; 6] {
    let a = pr.a.clone();
    let c = pr.c.clone();
    [
        pr.m.clone() * pr.m.clone() / T::from_i64(64),
        h2.clone() / T::from_i64(2),
        h1.clone() / T::from_i64(2) + a.clone() * (T::from_i64(4) * a.clone() * a.clone() + c.clone()),
        c + T::from_i64(12) * a.clone() * a.clone(),
        T::from_i64(12) * a,
        T::from_i64(4),
    ]
}

pub fn quintic_curve(f: &[Rational; 6]) -> Result<QuinticCurve, HHError> {
    debug_assert_eq!(f[5], Rational::from_i64(4));
    Ok(QuinticCurve::new([
        f[0].clone(),
        f[1].clone(),
        f[2].clone(),
        f[3].clone(),
        f[4].clone(),
    ])?)
}

type PMat<T> = [[Poly<T>; 2]; 2];

fn pmat_mul<T: Scalar>(x: &PMat<T>, y: &PMat<T>) -> PMat<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j])))
}

fn poly_norm<T: Scalar>(p: &Poly<T>) -> f64 {
    p.coeffs().iter().map(|c| c.magnitude()).fold(0.0, f64::max)
}

fn pmat_norm<T: Scalar>(m: &PMat<T>) -> f64 {
    m.iter().flatten().map(poly_norm).fold(0.0, f64::max)
}

/// `p(x) = (x − λ)·q(x) + r`.
fn div_linear<T: Scalar>(p: &Poly<T>, lambda: &T) -> (Poly<T>, T) {
    let cs = p.coeffs();
    if cs.is_empty() {
        return (Poly::zero(), T::zero());
    }
    let mut q = vec![T::zero(); cs.len() - 1];
    let mut r = cs[cs.len() - 1].clone();
    for i in (0..cs.len() - 1).rev() {
        q[i] = r.clone();
        r = cs[i].clone() + r * lambda.clone();
    }
    (Poly::new(q), r)
}

/// Elementary Darboux matrix `[[−Y, Y² + x − λ], [1, −Y]]` and its adjugate.
pub fn darboux_matrix<T: Scalar>(y: &T, lambda: &T) -> (PMat<T>, PMat<T>) {
    let off = Poly::new(vec![y.clone() * y.clone() - lambda.clone(), T::one()]);
    let my = Poly::constant(-y.clone());
    let m = [[my.clone(), off.clone()], [Poly::one(), my.clone()]];
    let adj = [[my.clone(), -&off], [-&Poly::one(), my]];
    (m, adj)
}

/// One application of the BT, with its diagnostics.
#[derive(Clone, Debug)]
pub struct BtStep<T: Field> {
    pub coords: LaxCoords<T>,
    pub mu: T,
    pub y: T,
    /// `‖L̃M − ML‖ / (‖L‖‖M‖)` with `L̃` rebuilt from the extracted coordinates.
    pub lax_residual: f64,
    /// Size of the division remainder and of the structural defects of `M L M⁻¹`.
    pub structure_residual: f64,
}

/// `μ = sign·√f(λ)`.
pub fn mu_at<T: Scalar>(l: &LaxMatrix<T>, lambda: &T, sign: i8) -> Result<T, HHError> {
    let r = l.spectral_poly().eval(lambda).sqrt().ok_or(HHError::NoSquareRoot)?;
    Ok(if sign < 0 { -r } else { r })
}

/// The BT on Lax coordinates: `L̃ = M L M⁻¹` with `M⁻¹ = adj M / (λ − x)`.
pub fn bt_step_coords<T: Scalar>(
    co: &LaxCoords<T>,
    pr: &HHParams<T>,
    lambda: &T,
    mu_sign: i8,
) -> Result<BtStep<T>, HHError> {
    let l = lax_from_coords(co, pr)?;
    let bol = l.c.eval(lambda);
    if bol.magnitude() <= T::tolerance() * (1.0 + poly_norm(&l.c)) {
        return Err(HHError::DivisorCollision);
    }
    let mu = mu_at(&l, lambda, mu_sign)?;
    let y = (mu.clone() + l.a.eval(lambda)) / bol;
    let (m, adj) = darboux_matrix(&y, lambda);
    let ent = l.entries();
    let prod = pmat_mul(&pmat_mul(&m, &ent), &adj);
    let scale = pmat_norm(&prod).max(1.0);
    // (λ − x) q = −(x − λ) q
    let mut quo: Vec<Vec<Poly<T>>> = vec![vec![]; 2];
    let mut defect: f64 = 0.0;
    for (i, row) in prod.iter().enumerate() {
        for p in row {
            let (q, r) = div_linear(p, lambda);
            defect = defect.max(r.magnitude());
            quo[i].push(-&q);
        }
    }
    let (t11, t21) = (&quo[0][0], &quo[1][0]);
    defect = defect.max(poly_norm(&(t11 + &quo[1][1])));
    defect = defect.max((t21.coeff(2) - T::from_i64(2)).magnitude());
    for (p, d) in [(t11, 2), (t21, 3), (&quo[0][1], 4)] {
        for k in d..p.coeffs().len() {
            defect = defect.max(p.coeff(k).magnitude());
        }
    }
    let structure_residual = defect / scale;
    if structure_residual > T::tolerance() * 10.0 {
        return Err(HHError::Consistency(structure_residual));
    }
    let two = T::from_i64(2);
    let eight = T::from_i64(8);
    let next = LaxCoords {
        q1_sq: -(eight.clone() * t21.coeff(0)),
        q2: t21.coeff(1) - two.clone() * pr.a.clone(),
        q1p1: -(eight * t11.coeff(0)),
        p2: two * t11.coeff(1),
    };
    let rebuilt = lax_from_coords(&next, pr).map_err(|_| HHError::Branch)?.entries();
    let lhs = pmat_mul(&rebuilt, &m);
    let rhs = pmat_mul(&m, &ent);
    let diff: PMat<T> = std::array::from_fn(|i| std::array::from_fn(|j| &lhs[i][j] - &rhs[i][j]));
    let lax_residual = pmat_norm(&diff) / (pmat_norm(&ent) * pmat_norm(&m)).max(f64::MIN_POSITIVE);
    if lax_residual > T::tolerance() * 10.0 {
        return Err(HHError::Consistency(lax_residual));
    }
    Ok(BtStep {
        coords: next,
        mu,
        y,
        lax_residual,
        structure_residual,
    })
}

/// The BT on a phase point; the sign of `q̃₁` follows `branch`.
pub fn bt_step<T: Scalar>(
    st: &HHState<T>,
    pr: &HHParams<T>,
    lambda: &T,
    mu_sign: i8,
    branch: Branch,
) -> Result<(HHState<T>, BtStep<T>), HHError> {
    st.m_term(pr)?;
    let step = bt_step_coords(&st.coords(), pr, lambda, mu_sign)?;
    let next = step.coords.to_state(branch, Some(&st.q1))?;
    Ok((next, step))
}

/// Separation variables as a Mumford pair: `U = C(x)/2`, `V = −A(x)`, so
/// `yⱼ = −A(xⱼ)` at the roots `xⱼ` of `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation<T: Field> {
    pub u: Poly<T>,
    pub v: Poly<T>,
}

impl<T: Scalar> Separation<T> {
    pub fn sum(&self) -> T {
        -self.u.coeff(1)
    }

    pub fn product(&self) -> T {
        self.u.coeff(0)
    }

    pub fn discriminant(&self) -> T {
        let b = self.u.coeff(1);
        b.clone() * b - T::from_i64(4) * self.u.coeff(0)
    }

    /// `(xⱼ, yⱼ)` numerically; fails on coincident roots.
    pub fn points(&self) -> Result<[(Complex64, Complex64); 2], HHError> {
        let d = self.discriminant();
        if d.is_zero() || d.magnitude() <= T::tolerance() * (1.0 + self.u.coeff(1).magnitude()).powi(2) {
            return Err(HHError::Degenerate);
        }
        let b = Complex64::new(self.u.coeff(1).to_f64(), 0.0);
        let s = Complex64::new(d.to_f64(), 0.0).sqrt();
        let v1 = self.v.coeff(1).to_f64();
        let v0 = self.v.coeff(0).to_f64();
        let x1 = (-b + s) / 2.0;
        let x2 = (-b - s) / 2.0;
        Ok([(x1, x1 * v1 + v0), (x2, x2 * v1 + v0)])
    }

    /// `max |yⱼ² − f(xⱼ)|` relative to `1 + |f(xⱼ)|`.
    pub fn curve_residual(&self, f: &[T; 6]) -> Result<f64, HHError> {
        let pts = self.points()?;
        let fc: Vec<f64> = f.iter().map(|c| c.to_f64()).collect();
        Ok(pts
            .iter()
            .map(|(x, y)| {
                let fx = fc.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
                (y * y - fx).norm() / (1.0 + fx.norm())
            })
            .fold(0.0, f64::max))
    }
}

impl Separation<Rational> {
    /// Mumford divisor in the orientation where the `(λ, +μ)` BT is the shift
    /// by `(λ, −μ) − ∞`: `(U, A)`, the involution image of `(U, V)`.
    pub fn divisor(&self) -> MumfordDivisor {
        MumfordDivisor {
            u: self.u.clone(),
            v: -&self.v,
        }
    }

    /// `U | V² − f`, checked exactly.
    pub fn on_curve(&self, f: &[Rational; 6]) -> bool {
        let fp = UniPoly::new(f.to_vec());
        let w = &(&self.v * &self.v) - &fp;
        w.rem(&self.u).is_ok_and(|r| r.is_zero())
    }
}

pub fn separation_variables<T: Scalar>(co: &LaxCoords<T>, pr: &HHParams<T>) -> Separation<T> {
    let two = T::from_i64(2);
    let c = Poly::new(vec![
        -(co.q1_sq.clone() / T::from_i64(8)),
        co.q2.clone() + two.clone() * pr.a.clone(),
        two.clone(),
    ]);
    let a = Poly::new(vec![-(co.q1p1.clone() / T::from_i64(8)), co.p2.clone() / two.clone()]);
    Separation {
        u: c.scale(&half::<T>()),
        v: -&a,
    }
}

/// One row of an orbit.
#[derive(Clone, Debug)]
pub struct OrbitRecord<T: Field> {
    pub step: usize,
    pub state: HHState<T>,
    pub h1: T,
    pub h2: T,
    pub lax_residual: f64,
    pub separation: Separation<T>,
}

/// Iterates the BT `steps` times, recording the integrals after every step.
pub fn simulate<T: Scalar>(
    st: &HHState<T>,
    pr: &HHParams<T>,
    lambda: &T,
    mu_sign: i8,
    steps: usize,
    branch: Branch,
) -> Result<Vec<OrbitRecord<T>>, HHError> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = st.clone();
    let mut residual = 0.0;
    for k in 0..=steps {
        out.push(OrbitRecord {
            step: k,
            h1: h1(&cur, pr)?,
            h2: h2(&cur, pr)?,
            lax_residual: residual,
            separation: separation_variables(&cur.coords(), pr),
            state: cur.clone(),
        });
        if k < steps {
            let (next, info) = bt_step(&cur, pr, lambda, mu_sign, branch)?;
            residual = info.lax_residual;
            cur = next;
        }
    }
    Ok(out)
}

/// Largest coordinate difference between the two orders of applying two BTs.
pub fn bianchi_defect(
    st: &HHState<f64>,
    pr: &HHParams<f64>,
    first: (f64, i8),
    second: (f64, i8),
) -> Result<f64, HHError> {
    let co = st.coords();
    let ab = bt_step_coords(
        &bt_step_coords(&co, pr, &first.0, first.1)?.coords,
        pr,
        &second.0,
        second.1,
    )?;
    let ba = bt_step_coords(
        &bt_step_coords(&co, pr, &second.0, second.1)?.coords,
        pr,
        &first.0,
        first.1,
    )?;
    let x = ab.coords.to_f64();
    let y = ba.coords.to_f64();
    Ok(x.iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs() / (1.0 + p.abs()))
        .fold(0.0, f64::max))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckStep {
    pub n: i64,
    pub bt: MumfordDivisor,
    pub jacobian: MumfordDivisor,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckReport {
    pub curve: QuinticCurve,
    pub step_point: CurvePoint,
    pub steps: Vec<CrossCheckStep>,
    pub first_mismatch: Option<i64>,
    pub pass: bool,
}

/// Runs `n` exact BTs with `(λ, μ)` and compares the separation divisors with
/// `𝒟₀ + k((λ, −μ) − ∞)` computed by Cantor arithmetic on the spectral curve.
pub fn cross_check_jacobian(
    co: &LaxCoords<Rational>,
    pr: &HHParams<Rational>,
    lambda: &Rational,
    mu_sign: i8,
    n: usize,
) -> Result<CrossCheckReport, HHError> {
    let f = spectral_curve_coords(co, pr)?;
    let curve = quintic_curve(&f)?;
    let l = lax_from_coords(co, pr)?;
    let mu = mu_at(&l, lambda, mu_sign)?;
    let step_point = curve.point(lambda.clone(), -mu)?;
    let d0 = separation_variables(co, pr).divisor();
    curve.check(&d0)?;
    let jac = curve.divisor_sequence(&d0, &step_point, 0, n as i64)?;
    let mut cur = co.clone();
    let mut steps = Vec::with_capacity(n + 1);
    for (k, dj) in jac {
        if k > 0 {
            cur = bt_step_coords(&cur, pr, lambda, mu_sign)?.coords;
        }
        let bt = separation_variables(&cur, pr).divisor();
        let matches = bt == dj;
        steps.push(CrossCheckStep {
            n: k,
            bt,
            jacobian: dj,
            matches,
        });
    }
    let first_mismatch = steps.iter().find(|s| !s.matches).map(|s| s.n);
    Ok(CrossCheckReport {
        curve,
        step_point,
        pass: first_mismatch.is_none(),
        first_mismatch,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::algebra::rational::int;

    fn worked() -> (HHState<Rational>, HHParams<Rational>) {
        (
            HHState::new(int(2), int(1), int(0), int(0)),
            HHParams::new(int(0), int(0), int(0)),
        )
    }

    fn real_orbit() -> (HHState<f64>, HHParams<f64>) {
        (HHState::new(1.25, 0.5, 0.125, -0.25), HHParams::new(0.0, -1.0, 0.0))
    }

    #[test]
    fn integrals_of_worked_state() {
        let (st, pr) = worked();
        assert_eq!(h1(&st, &pr).unwrap(), int(3));
        assert_eq!(h2(&st, &pr).unwrap(), int(-1));
        let co = st.coords();
        assert_eq!(co.h1(&pr).unwrap(), int(3));
        assert_eq!(co.h2(&pr).unwrap(), int(-1));
    }

    #[test]
    fn singular_q1() {
        let st = HHState::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(h1(&st, &HHParams::new(0.0, 0.0, 1.0)), Err(HHError::Singular));
        assert!(h1(&st, &HHParams::new(0.0, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn spectral_curve_of_worked_state() {
        let (st, pr) = worked();
        let f = spectral_curve(&st, &pr).unwrap();
        assert_eq!(f, [int(0), rat(-1, 2), rat(3, 2), int(0), int(0), int(4)]);
        assert_eq!(lax_matrix(&st, &pr).unwrap().trace(), Poly::zero());
    }

    #[test]
    fn spectral_curve_matches_integrals() {
        let pr = HHParams::new(rat(1, 3), rat(-2, 5), rat(3, 7));
        let st = HHState::new(rat(3, 2), rat(-1, 4), rat(2, 3), rat(5, 6));
        let f = spectral_curve(&st, &pr).unwrap();
        let g = spectral_curve_from_integrals(&h1(&st, &pr).unwrap(), &h2(&st, &pr).unwrap(), &pr);
        assert_eq!(f, g);
    }

    #[test]
    fn exact_step_of_worked_state() {
        let (st, pr) = worked();
        let step = bt_step_coords(&st.coords(), &pr, &rat(1, 2), 1).unwrap();
        assert_eq!(step.mu, rat(1, 2));
        assert_eq!(step.lax_residual, 0.0);
        assert_eq!(
            step.coords,
            LaxCoords {
                q1_sq: int(8),
                q2: int(-2),
                q1p1: int(-4),
                p2: int(6)
            }
        );
        assert_eq!(step.coords.h1(&pr).unwrap(), int(3));
        assert_eq!(step.coords.h2(&pr).unwrap(), int(-1));
        // q̃₁² = 8 has no rational root
        assert_eq!(
            bt_step(&st, &pr, &rat(1, 2), 1, Branch::Continuity).unwrap_err(),
            HHError::Branch
        );
        let back = bt_step_coords(&step.coords, &pr, &rat(1, 2), -1).unwrap();
        assert_eq!(back.coords, st.coords());
    }

    #[test]
    fn separation_vieta_and_dictionary() {
        let (st, pr) = real_orbit();
        let co = st.coords();
        let sep = separation_variables(&co, &pr);
        let [(x1, y1), (x2, y2)] = sep.points().unwrap();
        assert!(((x1 * x2).re + co.q1_sq / 16.0).abs() < 1e-12);
        assert!(((x1 + x2).re + (co.q2 + 2.0 * pr.a) / 2.0).abs() < 1e-12);
        // q₁² = 16℘₁₂, q₂ = −2℘₂₂ − 2a, q₁p₁ = 8℘₂₂₁, p₂ = −2℘₂₂₂
        let p12 = -(x1 * x2);
        let p22 = x1 + x2;
        let p221 = (x1 * y2 - x2 * y1) / (x1 - x2);
        let p222 = (y1 - y2) / (x1 - x2);
        assert!((16.0 * p12 - co.q1_sq).norm() < 1e-12);
        assert!((-2.0 * p22 - 2.0 * pr.a - co.q2).norm() < 1e-12);
        assert!((8.0 * p221 - co.q1p1).norm() < 1e-12);
        assert!((-2.0 * p222 - co.p2).norm() < 1e-12);
        let f = spectral_curve(&st, &pr).unwrap();
        assert!(sep.curve_residual(&f).unwrap() < 1e-12);
    }

    #[test]
    fn real_step_round_trip_and_invariants() {
        let (st, pr) = real_orbit();
        let (h1a, h2a) = (h1(&st, &pr).unwrap(), h2(&st, &pr).unwrap());
        let (s1, i1) = bt_step(&st, &pr, &0.5, 1, Branch::Continuity).unwrap();
        assert!(i1.lax_residual < 1e-12);
        assert!((h1(&s1, &pr).unwrap() - h1a).abs() < 1e-10 * h1a.abs());
        assert!((h2(&s1, &pr).unwrap() - h2a).abs() < 1e-10 * h2a.abs());
        let (s2, _) = bt_step(&s1, &pr, &0.5, -1, Branch::Continuity).unwrap();
        for (p, q) in s2.to_f64().iter().zip(st.to_f64()) {
            assert!((p - q).abs() < 1e-10, "{p} vs {q}");
        }
    }

    #[test]
    fn cross_check_on_worked_state() {
        let (st, pr) = worked();
        let rep = cross_check_jacobian(&st.coords(), &pr, &rat(1, 2), 1, 5).unwrap();
        assert!(rep.pass, "{:?}", rep.first_mismatch);
        assert_eq!(rep.steps.len(), 6);
        let rep0 = cross_check_jacobian(&st.coords(), &pr, &rat(1, 2), 1, 0).unwrap();
        assert!(rep0.pass);
    }

    #[test]
    fn flipped_sign_runs_backwards() {
        let (st, pr) = worked();
        let co = st.coords();
        let f = spectral_curve_coords(&co, &pr).unwrap();
        let curve = quintic_curve(&f).unwrap();
        let p = curve.point(rat(1, 2), rat(-1, 2)).unwrap();
        let d0 = separation_variables(&co, &pr).divisor();
        let seq = curve.divisor_sequence(&d0, &p, -3, 0).unwrap();
        let mut cur = co;
        for k in 1..=3 {
            cur = bt_step_coords(&cur, &pr, &rat(1, 2), -1).unwrap().coords;
            let sep = separation_variables(&cur, &pr);
            assert!(sep.on_curve(&f));
            assert_eq!(sep.divisor(), seq[3 - k].1);
        }
    }

    #[test]
    fn collision_detected() {
        // C(x) = 2x² − 2 vanishes at x = 1
        let st = HHState::new(int(4), int(0), int(0), int(0));
        let pr = HHParams::new(int(0), int(0), int(0));
        assert_eq!(
            bt_step(&st, &pr, &int(1), 1, Branch::Continuity).unwrap_err(),
            HHError::DivisorCollision
        );
    }
}
