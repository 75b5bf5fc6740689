//! Weierstrass σ, ζ, ℘ and ℘′ for invariants `(g₂, g₃)`, with periods from
//! the arithmetic-geometric mean and the Abel map from Carlson's `R_F`.
//!
//! Conventions. Roots of `4x³ − g₂x − g₃` are ordered by decreasing real part
//! (`e₁ ≥ e₂ ≥ e₃` when all are real). Half-periods are
//! `ω₁ = π / (2 M(√(e₁−e₃), √(e₁−e₂)))` and
//! `ω₃ = iπ / (2 M(√(e₁−e₃), √(e₂−e₃)))`, adjusted so that `Im(ω₃/ω₁) > 0`.
//! With `q = exp(iπω₃/ω₁)` and `v = πz/(2ω₁)`,
//! `σ(z) = (2ω₁/π) exp(η₁z²/(2ω₁)) θ₁(v)/θ₁′(0)`.

mod carlson;

pub use carlson::carlson_rf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rational;
use crate::mp::{bits_for_digits, Complex, Real};

pub const DEFAULT_DIGITS: u32 = 25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeierstrassError {
    #[error("degenerate curve: discriminant g2^3 - 27 g3^2 = {discriminant} (use the alternating closed form when alpha = 0)")]
    Degenerate { discriminant: String },
    #[error("argument is a lattice point (pole)")]
    Pole,
    #[error("point is not on the curve: |y^2 - (4x^3 - g2 x - g3)| = {residual:e}")]
    NotOnCurve { residual: f64 },
    #[error("precision exhausted: {0}")]
    Precision(String),
}

/// `(g₂, g₃)`; exact rationals are kept when available.
#[derive(Clone, Debug)]
pub struct EllipticInvariants {
    pub g2: Complex,
    pub g3: Complex,
    pub exact: Option<(Rational, Rational)>,
}

impl EllipticInvariants {
    pub fn rational(g2: &Rational, g3: &Rational, p: usize) -> Self {
        EllipticInvariants {
            g2: Complex::from_rational(g2, p),
            g3: Complex::from_rational(g3, p),
            exact: Some((g2.clone(), g3.clone())),
        }
    }

    pub fn complex(g2: Complex, g3: Complex) -> Self {
        EllipticInvariants { g2, g3, exact: None }
    }
}

/// Point of ℂ modulo the period lattice, with its lattice coordinates
/// `z = a·2ω₁ + b·2ω₃`, `a, b ∈ [0, 1)`.
#[derive(Clone, Debug)]
pub struct JacobianPoint {
    pub z: Complex,
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Debug)]
pub struct WeierstrassContext {
    pub invariants: EllipticInvariants,
    pub roots: [Complex; 3],
    pub omega1: Complex,
    pub omega3: Complex,
    pub eta1: Complex,
    pub eta3: Complex,
    pub q: Complex,
    pub digits: u32,
    pub bits: usize,
    pub legendre_residual: f64,
    /// `θ₁′(0)` and `θ₁‴(0)` without the common `2q^{1/4}` factor.
    th1: Complex,
    pi: Real,
}

/// `θ₁` and its first three `v`-derivatives, without the `2q^{1/4}` factor.
struct Theta {
    t: Complex,
    t1: Complex,
    t2: Complex,
    t3: Complex,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ContextDump {
    pub g2: String,
    pub g3: String,
    pub e: [String; 3],
    pub omega1: String,
    pub omega3: String,
    pub eta1: String,
    pub eta3: String,
    pub precision: u32,
    pub legendre_residual: f64,
}

fn c64_fmt(z: &Complex, digits: usize) -> String {
    z.to_string_digits(digits)
}

/// Roots of `4x³ − g₂x − g₃`, polished by Newton steps at full precision.
fn cubic_roots(g2: &Complex, g3: &Complex, p: usize) -> [Complex; 3] {
    let g2f = g2.to_c64();
    let g3f = g3.to_c64();
    // depressed cubic x³ + px + q
    let pp = -g2f / 4.0;
    let qq = -g3f / 4.0;
    let disc = (qq * qq / 4.0 + pp * pp * pp / 27.0).sqrt();
    let mut c = (-qq / 2.0 + disc).powf(1.0 / 3.0);
    if c.norm() < 1e-300 {
        c = (-qq / 2.0 - disc).powf(1.0 / 3.0);
    }
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut guesses = [Complex64::new(0.0, 0.0); 3];
    let mut ck = c;
    for g in guesses.iter_mut() {
        *g = if ck.norm() < 1e-300 {
            Complex64::new(0.0, 0.0)
        } else {
            ck - pp / (3.0 * ck)
        };
        ck *= w;
    }
    let four = Complex::from_f64(4.0, 0.0, p);
    let twelve = Complex::from_f64(12.0, 0.0, p);
    let polish = |x0: Complex64| {
        let mut x = Complex::from_c64(x0, p);
        for _ in 0..(p / 8 + 8) {
            let f = &(&(&four * &(&x * &(&x * &x))) - &(g2 * &x)) - g3;
            let d = &(&twelve * &(&x * &x)) - g2;
            if d.is_zero() {
                break;
            }
            let step = &f / &d;
            x = &x - &step;
            let s = step.abs().to_f64();
            if s == 0.0 || s < x.abs().to_f64() * 2f64.powi(-(p as i32) + 4) {
                break;
            }
        }
        x
    };
    let mut r = guesses.map(polish);
    r.sort_by(|a, b| {
        let (ar, br) = (a.re.to_f64(), b.re.to_f64());
        br.partial_cmp(&ar)
            .unwrap()
            .then(b.im.to_f64().partial_cmp(&a.im.to_f64()).unwrap())
    });
    r
}

/// Arithmetic-geometric mean with the optimal choice of square root at each step.
fn agm(a: &Complex, b: &Complex) -> Complex {
    let p = a.prec();
    let half = Real::from_f64(0.5, p);
    let (mut a, mut b) = (a.clone(), b.clone());
    let tol = 2f64.powi(-(p as i32) + 8);
    for _ in 0..200 {
        if (&a - &b).abs().to_f64() <= tol * a.abs().to_f64() {
            break;
        }
        let a1 = (&a + &b).scale(&half);
        let mut b1 = (&a * &b).sqrt();
        if (&a1 - &b1).abs() > (&a1 + &b1).abs() {
            b1 = -b1;
        }
        a = a1;
        b = b1;
    }
    a
}

impl WeierstrassContext {
    pub fn new(inv: EllipticInvariants, digits: u32) -> Result<Self, WeierstrassError> {
        let bits = bits_for_digits(digits);
        let p = bits;
        let g2 = inv.g2.clone();
        let g3 = inv.g3.clone();

        // nondegeneracy
        match &inv.exact {
            Some((a, b)) => {
                let d = a * a * a - Rational::from_integer(27.into()) * b * b;
                if d == Rational::from_integer(0.into()) {
                    return Err(WeierstrassError::Degenerate {
                        discriminant: crate::algebra::format_rational(&d),
                    });
                }
            }
            None => {
                let d = &(&g2 * &(&g2 * &g2)) - &(&(&g3 * &g3) * &Complex::from_f64(27.0, 0.0, p));
                let scale = g2.abs().to_f64().powi(3).max(27.0 * g3.abs().to_f64().powi(2));
                if d.abs().to_f64() <= scale * 10f64.powi(-(digits as i32) + 3) {
                    return Err(WeierstrassError::Degenerate {
                        discriminant: d.to_string_digits(6),
                    });
                }
            }
        }

        let roots = cubic_roots(&g2, &g3, p);
        let [e1, e2, e3] = roots.clone();
        let pi = Real::pi(p);
        let halfpi = pi.scale_f64(0.5);
        let a = (&e1 - &e3).sqrt();
        let mut b = (&e1 - &e2).sqrt();
        let mut c = (&e2 - &e3).sqrt();
        if (&a - &b).abs() > (&a + &b).abs() {
            b = -b;
        }
        if (&a - &c).abs() > (&a + &c).abs() {
            c = -c;
        }
        let mut w1 = Complex::from_real(halfpi.clone()) / agm(&a, &b);
        let mut w3 = Complex::i(p).scale(&halfpi) / agm(&a, &c);

        // orientation and reduction of τ = ω₃/ω₁
        let mut tau = &w3 / &w1;
        if tau.im.is_negative() {
            w3 = -w3;
            tau = -tau;
        }
        for _ in 0..64 {
            let k = tau.re.round();
            if !k.is_zero() {
                w3 = &w3 - &w1.scale(&k);
                tau = &w3 / &w1;
            }
            if tau.abs().to_f64() < 1.0 && tau.im.to_f64() < 0.5 {
                let t = w1.clone();
                w1 = w3.clone();
                w3 = -t;
                tau = &w3 / &w1;
            } else {
                break;
            }
        }
        let q = tau.mul_i().scale(&pi).exp();

        let mut ctx = WeierstrassContext {
            invariants: inv,
            roots,
            omega1: w1,
            omega3: w3,
            eta1: Complex::zero(p),
            eta3: Complex::zero(p),
            q,
            digits,
            bits,
            legendre_residual: f64::NAN,
            th1: Complex::zero(p),
            pi,
        };
        let th0 = ctx.theta(&Complex::zero(p));
        ctx.th1 = th0.t1.clone();
        // η₁ = −(π²/(12ω₁)) θ₁‴(0)/θ₁′(0)
        let pi2 = &ctx.pi * &ctx.pi;
        ctx.eta1 = -(&(&th0.t3 / &th0.t1) * &Complex::from_real(&pi2 / &Real::from_i64(12, p))) / ctx.omega1.clone();
        ctx.eta3 = ctx.zeta(&ctx.omega3.clone())?;
        let leg = &(&(&ctx.eta1 * &ctx.omega3) - &(&ctx.eta3 * &ctx.omega1)) - &Complex::i(p).scale(&halfpi);
        ctx.legendre_residual = leg.abs().to_f64();
        ctx.check_periods()?;
        Ok(ctx)
    }

    pub fn from_rational(g2: &Rational, g3: &Rational, digits: u32) -> Result<Self, WeierstrassError> {
        let p = bits_for_digits(digits);
        Self::new(EllipticInvariants::rational(g2, g3, p), digits)
    }

    pub fn from_f64(g2: Complex64, g3: Complex64, digits: u32) -> Result<Self, WeierstrassError> {
        let p = bits_for_digits(digits);
        Self::new(
            EllipticInvariants::complex(Complex::from_c64(g2, p), Complex::from_c64(g3, p)),
            digits,
        )
    }

    /// Tolerance `10^-(digits−8)` used for self-checks.
    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.digits as i32) + 8)
    }

    fn p(&self) -> usize {
        self.bits
    }

    fn cr(&self, x: f64) -> Complex {
        Complex::from_f64(x, 0.0, self.bits)
    }

    /// The three half-periods must map to the three roots.
    fn check_periods(&self) -> Result<(), WeierstrassError> {
        let w2 = &self.omega1 + &self.omega3;
        let tol = 10f64.powi(-(self.digits as i32) / 2);
        for w in [&self.omega1, &self.omega3, &w2] {
            let x = self.wp(w)?;
            let best = self
                .roots
                .iter()
                .map(|e| (&x - e).abs().to_f64())
                .fold(f64::INFINITY, f64::min);
            if best > tol * (1.0 + x.abs().to_f64()) {
                return Err(WeierstrassError::Precision(
                    "half-periods do not map to the roots of the cubic".into(),
                ));
            }
        }
        Ok(())
    }

    /// Real lattice coordinates `(a, b)` with `z = a·2ω₁ + b·2ω₃`.
    pub fn lattice_coords(&self, z: &Complex) -> (Real, Real) {
        let u = &self.omega1 + &self.omega1;
        let w = &self.omega3 + &self.omega3;
        let det = &(&u.re * &w.im) - &(&u.im * &w.re);
        let a = &(&(&z.re * &w.im) - &(&z.im * &w.re)) / &det;
        let b = &(&(&u.re * &z.im) - &(&u.im * &z.re)) / &det;
        (a, b)
    }

    fn lattice_point(&self, m: &Real, n: &Real) -> Complex {
        &self.omega1.scale(&(m + m)) + &self.omega3.scale(&(n + n))
    }

    /// `z − 2mω₁ − 2nω₃` with `(m, n)` the nearest integers to the lattice coordinates.
    fn center(&self, z: &Complex) -> (Complex, i64, i64) {
        let (a, b) = self.lattice_coords(z);
        let m = a.round();
        let n = b.round();
        let zr = z - &self.lattice_point(&m, &n);
        (zr, m.to_f64() as i64, n.to_f64() as i64)
    }

    /// Reduced representative in the cell `[0, 1)²`; coordinates within
    /// `10^-(digits−5)` of an integer are snapped.
    pub fn reduce(&self, z: &Complex) -> JacobianPoint {
        let (a, b) = self.lattice_coords(z);
        let snap = 10f64.powi(-(self.digits as i32) + 5);
        let fix = |t: &Real| {
            let r = t.round();
            let d = (t - &r).abs().to_f64();
            let t = if d < snap { r } else { t.clone() };
            &t - &t.floor()
        };
        let (fa, fb) = (fix(&a), fix(&b));
        let shift_a = &a - &fa;
        let shift_b = &b - &fb;
        let zr = z - &self.lattice_point(&shift_a.round(), &shift_b.round());
        JacobianPoint {
            z: zr,
            a: fa.to_f64(),
            b: fb.to_f64(),
        }
    }

    fn theta(&self, v: &Complex) -> Theta {
        let p = self.p();
        let eps = 2f64.powi(-(p as i32) - 8);
        let lq = self.q.abs().to_f64().ln();
        let iv = v.im.to_f64().abs();
        let (s1, c1) = (v.sin(), v.cos());
        let two_v = v + v;
        let (s2, c2) = (two_v.sin(), two_v.cos());
        let q2 = &self.q * &self.q;
        let mut qpow = Complex::one(p); // q^{n(n+1)}
        let mut qstep = q2.clone(); // q^{2(n+1)}
        let (mut sn, mut cn) = (s1, c1);
        let mut out = Theta {
            t: Complex::zero(p),
            t1: Complex::zero(p),
            t2: Complex::zero(p),
            t3: Complex::zero(p),
        };
        for n in 0..10_000i64 {
            let k = (2 * n + 1) as f64;
            let bound = (lq * (n * (n + 1)) as f64 + k * iv).exp() * k * k * k;
            if n > 0 && bound < eps {
                break;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let w = qpow.scale(&Real::from_f64(sign, p));
            let ks = self.cr(k);
            let ws = &w * &sn;
            let wc = &w * &cn;
            out.t = &out.t + &ws;
            out.t1 = &out.t1 + &(&wc * &ks);
            out.t2 = &out.t2 - &(&ws * &(&ks * &ks));
            out.t3 = &out.t3 - &(&wc * &(&ks * &(&ks * &ks)));
            // advance (2n+1)v → (2n+3)v
            let s_next = &(&sn * &c2) + &(&cn * &s2);
            let c_next = &(&cn * &c2) - &(&sn * &s2);
            sn = s_next;
            cn = c_next;
            qpow = &qpow * &qstep;
            qstep = &qstep * &q2;
        }
        out
    }

    fn v_of(&self, z: &Complex) -> Complex {
        (z / &self.omega1).scale(&self.pi.scale_f64(0.5))
    }

    fn pole_check(&self, zr: &Complex) -> Result<(), WeierstrassError> {
        let tiny = 10f64.powi(-(self.digits as i32) / 2 - 2) * self.omega1.abs().to_f64();
        if zr.abs().to_f64() < tiny {
            Err(WeierstrassError::Pole)
        } else {
            Ok(())
        }
    }

    /// σ at a centred argument (no quasi-periodic reduction).
    fn sigma_centered(&self, zr: &Complex) -> Complex {
        let th = self.theta(&self.v_of(zr));
        let pref = &(&self.omega1 + &self.omega1) / &Complex::from_real(self.pi.clone());
        let ex = (&(&self.eta1 * &(zr * zr)) / &(&self.omega1 + &self.omega1)).exp();
        &(&pref * &ex) * &(&th.t / &self.th1)
    }

    /// Principal-branch `log σ(z)` continued by quasi-periodicity; only
    /// `exp` of the result is meaningful.
    pub fn log_sigma(&self, z: &Complex) -> Result<Complex, WeierstrassError> {
        let (zr, m, n) = self.center(z);
        self.pole_check(&zr)?;
        let s = self.sigma_centered(&zr);
        let p = self.p();
        let mr = Real::from_i64(m, p);
        let nr = Real::from_i64(n, p);
        // σ(zr + 2mω₁ + 2nω₃) = (−1)^{m+n+mn} exp((2mη₁ + 2nη₃)(zr + mω₁ + nω₃)) σ(zr)
        let eta = &self.eta1.scale(&(&mr + &mr)) + &self.eta3.scale(&(&nr + &nr));
        let shift = &(&zr + &self.omega1.scale(&mr)) + &self.omega3.scale(&nr);
        let parity = (m + n + m * n).rem_euclid(2);
        let ipi = Complex::i(p).scale(&self.pi.scale_f64(parity as f64));
        Ok(&(&s.ln() + &(&eta * &shift)) + &ipi)
    }

    pub fn sigma(&self, z: &Complex) -> Complex {
        if z.is_zero() {
            return Complex::zero(self.p());
        }
        let (zr, m, n) = self.center(z);
        if m == 0 && n == 0 {
            return self.sigma_centered(&zr);
        }
        match self.log_sigma(z) {
            Ok(l) => l.exp(),
            Err(_) => Complex::zero(self.p()),
        }
    }

    pub fn zeta(&self, z: &Complex) -> Result<Complex, WeierstrassError> {
        let v = self.v_of(z);
        let th = self.theta(&v);
        if th.t.is_zero() {
            return Err(WeierstrassError::Pole);
        }
        let k = Complex::from_real(self.pi.clone()) / (&self.omega1 + &self.omega1);
        Ok(&(&(&self.eta1 * z) / &self.omega1) + &(&k * &(&th.t1 / &th.t)))
    }

    pub fn wp(&self, z: &Complex) -> Result<Complex, WeierstrassError> {
        let (zr, _, _) = self.center(z);
        self.pole_check(&zr)?;
        let th = self.theta(&self.v_of(&zr));
        let k = Complex::from_real(self.pi.clone()) / (&self.omega1 + &self.omega1);
        let r1 = &th.t1 / &th.t;
        let r2 = &th.t2 / &th.t;
        Ok(&(-(&self.eta1 / &self.omega1)) - &(&(&k * &k) * &(&r2 - &(&r1 * &r1))))
    }

    pub fn wp_prime(&self, z: &Complex) -> Result<Complex, WeierstrassError> {
        let (zr, _, _) = self.center(z);
        self.pole_check(&zr)?;
        let th = self.theta(&self.v_of(&zr));
        let k = Complex::from_real(self.pi.clone()) / (&self.omega1 + &self.omega1);
        let r1 = &th.t1 / &th.t;
        let r2 = &th.t2 / &th.t;
        let r3 = &th.t3 / &th.t;
        let inner = &(&r3 - &(&(&r2 * &r1) * &self.cr(3.0))) + &(&(&r1 * &(&r1 * &r1)) * &self.cr(2.0));
        Ok(-(&(&k * &(&k * &k)) * &inner))
    }

    /// `(℘′)² − (4℘³ − g₂℘ − g₃)` at `z`.
    pub fn ode_residual(&self, z: &Complex) -> Result<Complex, WeierstrassError> {
        let x = self.wp(z)?;
        let y = self.wp_prime(z)?;
        Ok(&(&y * &y) - &self.cubic(&x))
    }

    fn cubic(&self, x: &Complex) -> Complex {
        let inv = &self.invariants;
        &(&(&self.cr(4.0) * &(x * &(x * x))) - &(&inv.g2 * x)) - &inv.g3
    }

    /// `z = ∫_∞^{(x,y)} dx/y`, returned as the reduced representative with the
    /// branch fixed by `℘′(z) = y`.
    pub fn abel_map(&self, x: &Complex, y: &Complex) -> Result<JacobianPoint, WeierstrassError> {
        let res = (&(y * y) - &self.cubic(x)).abs().to_f64();
        let scale = 1.0 + y.abs().to_f64().powi(2);
        if res > 10f64.powi(-(self.digits as i32) / 2) * scale {
            return Err(WeierstrassError::NotOnCurve { residual: res });
        }
        let p = self.p();
        let args: Vec<Complex> = self.roots.iter().map(|e| x - e).collect();
        // rotate so that no argument sits on the negative real axis:
        // e^{-iφ/2} R_F(a e^{-iφ}) integrates from x to ∞ along the ray arg = φ
        let mut best: Option<(f64, f64)> = None;
        for k in 0..16 {
            let phi = -std::f64::consts::PI + (k as f64 + 0.5) * std::f64::consts::PI / 8.0;
            let worst = args
                .iter()
                .filter(|a| a.abs().to_f64() > 0.0)
                .map(|a| {
                    let t = (a.arg().to_f64() - phi).rem_euclid(2.0 * std::f64::consts::PI);
                    (t - std::f64::consts::PI).abs()
                })
                .fold(f64::INFINITY, f64::min);
            if best.is_none_or(|(w, _)| worst > w) {
                best = Some((worst, phi));
            }
        }
        let phi = best.map_or(0.0, |b| b.1);
        let rot = Complex::new(Real::zero(p), Real::from_f64(-phi, p)).exp();
        let half_rot = Complex::new(Real::zero(p), Real::from_f64(-phi / 2.0, p)).exp();
        let ra: Vec<Complex> = args.iter().map(|a| a * &rot).collect();
        let mut z = &half_rot * &carlson_rf(&ra[0], &ra[1], &ra[2]);

        let tol = 10f64.powi(-(self.digits as i32) / 2);
        let xs = self.wp(&z)?;
        if (&xs - x).abs().to_f64() > tol * (1.0 + x.abs().to_f64()) {
            return Err(WeierstrassError::Precision(
                "Abel map does not invert p to tolerance".into(),
            ));
        }
        if !y.is_zero() {
            let yp = self.wp_prime(&z)?;
            if (&yp + y).abs() < (&yp - y).abs() {
                z = -z;
            }
        }
        Ok(self.reduce(&z))
    }

    pub fn abel_map_rational(&self, x: &Rational, y: &Rational) -> Result<JacobianPoint, WeierstrassError> {
        let p = self.p();
        self.abel_map(&Complex::from_rational(x, p), &Complex::from_rational(y, p))
    }

    /// `α = ℘′(κ)²`, `β = ℘′(κ)²(℘(2κ) − ℘(κ))`.
    pub fn alpha_beta_from_kappa(&self, kappa: &Complex) -> Result<(Complex, Complex), WeierstrassError> {
        let yp = self.wp_prime(kappa)?;
        let alpha = &yp * &yp;
        if alpha.abs().to_f64() < self.tolerance() {
            return Ok((alpha, Complex::zero(self.p())));
        }
        let x2 = self.wp(&(kappa + kappa))?;
        let x1 = self.wp(kappa)?;
        Ok((alpha.clone(), &alpha * &(&x2 - &x1)))
    }

    /// `σ(z+κ)σ(z−κ)/(σ(z)²σ(κ)²) − (℘(κ) − ℘(z))`.
    pub fn addition_formula_residual(&self, z: &Complex, kappa: &Complex) -> Result<Complex, WeierstrassError> {
        let l = &(&self.log_sigma(&(z + kappa))? + &self.log_sigma(&(z - kappa))?)
            - (&(&self.log_sigma(z)? + &self.log_sigma(kappa)?).scale(&Real::from_i64(2, self.p())));
        let lhs = l.exp();
        let rhs = &self.wp(kappa)? - &self.wp(z)?;
        Ok(&lhs - &rhs)
    }

    pub fn dump(&self) -> ContextDump {
        let d = self.digits as usize;
        ContextDump {
            g2: c64_fmt(&self.invariants.g2, d),
            g3: c64_fmt(&self.invariants.g3, d),
            e: [
                c64_fmt(&self.roots[0], d),
                c64_fmt(&self.roots[1], d),
                c64_fmt(&self.roots[2], d),
            ],
            omega1: c64_fmt(&self.omega1, d),
            omega3: c64_fmt(&self.omega3, d),
            eta1: c64_fmt(&self.eta1, d),
            eta3: c64_fmt(&self.eta3, d),
            precision: self.digits,
            legendre_residual: self.legendre_residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn worked() -> WeierstrassContext {
        WeierstrassContext::from_rational(&rat(4, 1), &rat(-1, 1), 25).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn periods_of_worked_curve() {
        let c = worked();
        assert!(close(c.omega1.re.to_f64(), 1.496729323, 5e-9));
        assert!(c.omega1.im.to_f64().abs() < 1e-20);
        assert!(close(c.omega3.im.to_f64(), 1.225694691, 5e-9));
        assert!(c.omega3.re.to_f64().abs() < 1e-20);
        assert!(c.legendre_residual < 1e-17);
    }

    #[test]
    fn lemniscatic_square_lattice() {
        let c = WeierstrassContext::from_rational(&rat(4, 1), &rat(0, 1), 20).unwrap();
        let t = &c.omega3 / &c.omega1;
        assert!(t.re.to_f64().abs() < 1e-15 && close(t.im.to_f64(), 1.0, 1e-15));
    }

    #[test]
    fn degenerate_rejected() {
        // g2 = 3, g3 = 1: 27 − 27 = 0
        assert!(matches!(
            WeierstrassContext::from_rational(&rat(3, 1), &rat(1, 1), 20),
            Err(WeierstrassError::Degenerate { .. })
        ));
    }

    #[test]
    fn sigma_normalisation_and_oddness() {
        let c = worked();
        let p = c.bits;
        let h = Complex::from_f64(1e-6, 2e-6, p);
        let s = c.sigma(&h);
        assert!((&s - &h).abs().to_f64() < 1e-25);
        let z = Complex::from_f64(0.37, 0.81, p);
        assert!((&c.sigma(&z) + &c.sigma(&-z.clone())).abs().to_f64() < 1e-20);
    }

    #[test]
    fn abel_map_of_worked_points() {
        let c = worked();
        let k = c.abel_map_rational(&rat(1, 1), &rat(1, 1)).unwrap();
        let two_w1 = c.omega1.re.to_f64() * 2.0;
        assert!(close(k.z.re.to_f64() - two_w1, -1.134273216, 5e-9));
        let z0 = c.abel_map_rational(&rat(-1, 1), &rat(1, 1)).unwrap();
        assert!(close(z0.z.re.to_f64(), 0.204680500, 5e-9));
        assert!(close(z0.z.im.to_f64(), 1.225694691, 5e-9));
        let x = c.wp(&k.z).unwrap();
        assert!((&x - &Complex::one(c.bits)).abs().to_f64() < 1e-18);
    }

    #[test]
    fn complex_invariants() {
        let c = WeierstrassContext::from_f64(Complex64::new(1.3, -0.7), Complex64::new(0.2, 0.9), 25).unwrap();
        assert!(c.legendre_residual < c.tolerance());
        let p = c.bits;
        for (x, y) in [(0.3, 0.2), (-0.4, 0.9), (1.1, -0.6)] {
            let z = Complex::from_f64(x, y, p);
            assert!(c.ode_residual(&z).unwrap().abs().to_f64() < c.tolerance());
        }
    }
}
