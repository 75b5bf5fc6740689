//! Inverse problem for Somos-4: recover the curve `y² = 4x³ − g₂x − g₃` and
//! the points `κ`, `z₀` from `(α, β, τ₀..τ₃)`, then evaluate
//! `τₙ = A Bⁿ σ(z₀ + nκ) / σ(κ)^{n²}`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::rational::{exact_sqrt, int, pow};
use crate::algebra::{format_rational, Rational};
use crate::mp::{Complex, Real};
use crate::recurrence::{map_step_back, qrt_integral, RecurrenceError, Somos4Problem};
use crate::weierstrass::{JacobianPoint, WeierstrassContext, WeierstrassError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("alpha = 0: the sequence has the alternating closed form, use alternating_closed_form")]
    AlphaZero,
    #[error("beta = 0 with alpha = 0: product recurrence, no closed form offered")]
    ProductRecurrence,
    #[error("degenerate curve (g2^3 = 27 g3^2); the closed form in sigma is not available")]
    Degenerate,
    #[error("sign constraint p'(kappa) p'(z0) = xi mu fails: residual {0:e}; raise --digits")]
    Inconsistent(f64),
    #[error("estimated relative error {estimate:e} at n = {n} exceeds 1e-6; raise --digits")]
    Precision { n: i64, estimate: f64 },
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
}

/// Exact outputs of the first four reconstruction steps.
#[derive(Clone, Debug)]
pub struct Somos4Partial {
    pub problem: Somos4Problem,
    pub tau_minus1: Rational,
    pub f_minus1: Rational,
    pub f0: Rational,
    pub f1: Rational,
    pub j: Rational,
    pub lambda: Rational,
    /// `+√α` when α is a rational square.
    pub mu: Option<Rational>,
    pub g2: Rational,
    pub g3: Rational,
    pub nu: Rational,
    /// `ξμ = f₀²(f₁ − f₋₁)`, always rational.
    pub xi_mu: Rational,
    pub xi: Option<Rational>,
    pub discriminant: Rational,
}

impl Somos4Partial {
    pub fn degenerate(&self) -> bool {
        self.discriminant.is_zero()
    }

    /// `ξ² = 4ν³ − g₂ν − g₃`, checked as `(ξμ)² = α(4ν³ − g₂ν − g₃)`.
    pub fn curve_residual(&self) -> Rational {
        let nu = &self.nu;
        let rhs = int(4) * nu * nu * nu - &self.g2 * nu - &self.g3;
        &self.xi_mu * &self.xi_mu - &self.problem.alpha * rhs
    }
}

pub fn step_exact(problem: &Somos4Problem) -> Result<Somos4Partial, SolverError> {
    let (alpha, beta) = (&problem.alpha, &problem.beta);
    let t = &problem.seeds;
    for (i, s) in t.iter().enumerate() {
        if s.is_zero() {
            return Err(RecurrenceError::VanishingTau { index: i as i64 }.into());
        }
    }
    if alpha.is_zero() {
        return Err(SolverError::AlphaZero);
    }
    // the recurrence at n = 1: τ₃τ₋₁ = ατ₂τ₀ + βτ₁²
    let tau_minus1 = (alpha * &t[2] * &t[0] + beta * &t[1] * &t[1]) / &t[3];
    if tau_minus1.is_zero() {
        return Err(RecurrenceError::VanishingTau { index: -1 }.into());
    }
    let f0 = &t[1] * &tau_minus1 / (&t[0] * &t[0]);
    let f1 = &t[2] * &t[0] / (&t[1] * &t[1]);
    let j = qrt_integral(&f0, &f1, alpha, beta)?;
    let lambda = (&j * &j / int(4) - beta) / (int(3) * alpha);
    let g2 = int(12) * &lambda * &lambda - int(2) * &j;
    let g3 = int(4) * &lambda * &lambda * &lambda - &g2 * &lambda - alpha;
    let f_minus1 = map_step_back(alpha, beta, &f0, &f1, 0)?;
    let nu = &lambda - &f0;
    let xi_mu = &f0 * &f0 * (&f1 - &f_minus1);
    let mu = exact_sqrt(alpha);
    let xi = mu.as_ref().map(|m| &xi_mu / m);
    let discriminant = &g2 * &g2 * &g2 - int(27) * &g3 * &g3;
    Ok(Somos4Partial {
        problem: problem.clone(),
        tau_minus1,
        f_minus1,
        f0,
        f1,
        j,
        lambda,
        mu,
        g2,
        g3,
        nu,
        xi_mu,
        xi,
        discriminant,
    })
}

#[derive(Clone, Debug)]
pub struct Somos4Solution {
    pub partial: Somos4Partial,
    pub ctx: WeierstrassContext,
    pub mu: Complex,
    pub xi: Complex,
    pub kappa: JacobianPoint,
    pub z0: JacobianPoint,
    /// `ẑ₀` with `2ẑ₀ ≡ κ` and `−3ẑ₀ ≡ z₀`, when such a point exists.
    pub zhat0: Option<JacobianPoint>,
    pub log_a: Complex,
    pub log_b: Complex,
    pub a: Complex,
    pub b: Complex,
    pub sign_residual: f64,
    log_sigma_kappa: Complex,
    error_scale: f64,
}

fn ln_rational(r: &Rational, p: usize) -> Complex {
    Complex::from_rational(r, p).ln()
}

fn near_lattice(ctx: &WeierstrassContext, z: &Complex, tol: f64) -> bool {
    let (a, b) = ctx.lattice_coords(z);
    (&a - &a.round()).abs().to_f64() < tol && (&b - &b.round()).abs().to_f64() < tol
}

pub fn uniformize(partial: &Somos4Partial, digits: u32) -> Result<Somos4Solution, SolverError> {
    if partial.degenerate() {
        return Err(SolverError::Degenerate);
    }
    let ctx = WeierstrassContext::from_rational(&partial.g2, &partial.g3, digits)?;
    let p = ctx.bits;
    let mu = match &partial.mu {
        Some(m) => Complex::from_rational(m, p),
        None => Complex::from_rational(&partial.problem.alpha, p).sqrt(),
    };
    let xi = &Complex::from_rational(&partial.xi_mu, p) / &mu;
    let lambda = Complex::from_rational(&partial.lambda, p);
    let nu = Complex::from_rational(&partial.nu, p);
    let kappa = ctx.abel_map(&lambda, &mu)?;
    let z0 = ctx.abel_map(&nu, &xi)?;

    let prod = &ctx.wp_prime(&kappa.z)? * &ctx.wp_prime(&z0.z)?;
    let target = Complex::from_rational(&partial.xi_mu, p);
    let sign_residual = (&prod - &target).abs().to_f64();
    if sign_residual > 10f64.powi(-(digits as i32) / 2) * (1.0 + target.abs().to_f64()) {
        return Err(SolverError::Inconsistent(sign_residual));
    }

    let t = &partial.problem.seeds;
    let ls_k = ctx.log_sigma(&kappa.z)?;
    let ls_z0 = ctx.log_sigma(&z0.z)?;
    let ls_z0k = ctx.log_sigma(&(&z0.z + &kappa.z))?;
    let log_a = &ln_rational(&t[0], p) - &ls_z0;
    let log_b = &(&(&(&ls_k + &ls_z0) + &ln_rational(&t[1], p)) - &ls_z0k) - &ln_rational(&t[0], p);

    let zhat0 = {
        let half = Real::from_f64(0.5, p);
        let kh = kappa.z.scale(&half);
        let w2 = &ctx.omega1 + &ctx.omega3;
        let tol = 10f64.powi(-(digits as i32) / 2);
        [Complex::zero(p), ctx.omega1.clone(), ctx.omega3.clone(), w2]
            .iter()
            .map(|h| &kh + h)
            .find(|c| {
                let three = c.scale(&Real::from_i64(3, p));
                near_lattice(&ctx, &(&z0.z + &three), tol)
            })
            .map(|c| ctx.reduce(&c))
    };

    let zeta_k = ctx.zeta(&kappa.z)?;
    let error_scale = 1.0
        + ls_k.abs().to_f64()
        + zeta_k.abs().to_f64() * kappa.z.abs().to_f64()
        + ctx.eta1.abs().to_f64() * ctx.omega1.abs().to_f64()
        + ctx.eta3.abs().to_f64() * ctx.omega3.abs().to_f64();

    Ok(Somos4Solution {
        a: log_a.exp(),
        b: log_b.exp(),
        partial: partial.clone(),
        mu,
        xi,
        kappa,
        z0,
        zhat0,
        log_a,
        log_b,
        sign_residual,
        log_sigma_kappa: ls_k,
        error_scale,
        ctx,
    })
}

pub fn solve(problem: &Somos4Problem, digits: u32) -> Result<Somos4Solution, SolverError> {
    uniformize(&step_exact(problem)?, digits)
}

#[derive(Clone, Debug)]
pub struct ClosedFormValue {
    pub n: i64,
    pub value: Complex,
    /// `log τₙ` on some branch; its real part is `log|τₙ|`.
    pub log_value: Complex,
    pub error_estimate: f64,
}

impl ClosedFormValue {
    pub fn log_abs(&self) -> f64 {
        self.log_value.re.to_f64()
    }
}

impl Somos4Solution {
    pub fn closed_form(&self, n: i64) -> Result<ClosedFormValue, SolverError> {
        let ctx = &self.ctx;
        let p = ctx.bits;
        let nn = n as f64;
        let estimate = 10f64.powi(-(ctx.digits as i32) + 2) * (1.0 + nn * nn) * self.error_scale;
        if estimate > 1e-6 {
            return Err(SolverError::Precision { n, estimate });
        }
        let nr = Real::from_i64(n, p);
        let arg = &self.z0.z + &self.kappa.z.scale(&nr);
        let ls = ctx.log_sigma(&arg)?;
        let log_value =
            &(&(&self.log_a + &self.log_b.scale(&nr)) + &ls) - &self.log_sigma_kappa.scale(&Real::from_i64(n * n, p));
        Ok(ClosedFormValue {
            n,
            value: log_value.exp(),
            log_value,
            error_estimate: estimate,
        })
    }

    /// `℘(z₀ + nκ)`, which equals `λ − fₙ`.
    pub fn wp_orbit(&self, n: i64) -> Result<Complex, SolverError> {
        let nr = Real::from_i64(n, self.ctx.bits);
        Ok(self.ctx.wp(&(&self.z0.z + &self.kappa.z.scale(&nr)))?)
    }

    pub fn dump(&self) -> SolutionDump {
        let d = self.ctx.digits as usize;
        let pt = |j: &JacobianPoint| PointDump {
            z: j.z.to_string_digits(d),
            a: j.a,
            b: j.b,
        };
        let q = &self.partial;
        let (alpha_k, beta_k) = match self.ctx.alpha_beta_from_kappa(&self.kappa.z) {
            Ok((a, b)) => (a.to_string_digits(d), b.to_string_digits(d)),
            Err(e) => (e.to_string(), e.to_string()),
        };
        SolutionDump {
            alpha: format_rational(&q.problem.alpha),
            beta: format_rational(&q.problem.beta),
            seeds: q.problem.seeds.iter().map(format_rational).collect(),
            tau_minus1: format_rational(&q.tau_minus1),
            f_minus1: format_rational(&q.f_minus1),
            f0: format_rational(&q.f0),
            f1: format_rational(&q.f1),
            j: format_rational(&q.j),
            lambda: format_rational(&q.lambda),
            mu: q
                .mu
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| self.mu.to_string_digits(d)),
            g2: format_rational(&q.g2),
            g3: format_rational(&q.g3),
            nu: format_rational(&q.nu),
            xi: q
                .xi
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| self.xi.to_string_digits(d)),
            kappa: pt(&self.kappa),
            z0: pt(&self.z0),
            zhat0: self.zhat0.as_ref().map(pt),
            a: self.a.to_string_digits(d),
            b: self.b.to_string_digits(d),
            omega1: self.ctx.omega1.to_string_digits(d),
            omega3: self.ctx.omega3.to_string_digits(d),
            sigma_kappa: self.ctx.sigma(&self.kappa.z).to_string_digits(d),
            residuals: ResidualDump {
                curve: format_rational(&q.curve_residual()),
                sign_constraint: self.sign_residual,
                legendre: self.ctx.legendre_residual,
                alpha_from_kappa: alpha_k,
                beta_from_kappa: beta_k,
            },
            precision: self.ctx.digits,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct PointDump {
    pub z: String,
    pub a: f64,
    pub b: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct ResidualDump {
    pub curve: String,
    pub sign_constraint: f64,
    pub legendre: f64,
    pub alpha_from_kappa: String,
    pub beta_from_kappa: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct SolutionDump {
    pub alpha: String,
    pub beta: String,
    pub seeds: Vec<String>,
    pub tau_minus1: String,
    pub f_minus1: String,
    pub f0: String,
    pub f1: String,
    pub j: String,
    pub lambda: String,
    pub mu: String,
    pub g2: String,
    pub g3: String,
    pub nu: String,
    pub xi: String,
    pub kappa: PointDump,
    pub z0: PointDump,
    pub zhat0: Option<PointDump>,
    pub a: String,
    pub b: String,
    pub omega1: String,
    pub omega3: String,
    pub sigma_kappa: String,
    pub residuals: ResidualDump,
    pub precision: u32,
}

/// Exact solution of `τₙ₊₂τₙ₋₂ = βτₙ²` (the case α = 0):
/// `τ₂ₖ = τ₀(τ₂/τ₀)ᵏ β^{k(k−1)/2}`, `τ₂ₖ₊₁ = τ₁(τ₃/τ₁)ᵏ β^{k(k−1)/2}`.
pub fn alternating_closed_form(problem: &Somos4Problem, n: i64) -> Result<Rational, SolverError> {
    if !problem.alpha.is_zero() {
        return Err(RecurrenceError::Invalid("alternating form requires alpha = 0".into()).into());
    }
    if problem.beta.is_zero() {
        return Err(SolverError::ProductRecurrence);
    }
    let t = &problem.seeds;
    for (i, s) in t.iter().enumerate() {
        if s.is_zero() {
            return Err(RecurrenceError::VanishingTau { index: i as i64 }.into());
        }
    }
    let k = n.div_euclid(2);
    let (base, ratio) = if n.rem_euclid(2) == 0 {
        (&t[0], &t[2] / &t[0])
    } else {
        (&t[1], &t[3] / &t[1])
    };
    Ok(base * pow(&ratio, k) * pow(&problem.beta, k * (k - 1) / 2))
}

/// Relative difference `|a − b| / max(|b|, 1)`.
pub fn relative_error(a: &Complex, b: &Rational) -> f64 {
    let bc = Complex::from_rational(b, a.prec());
    let den = if b.abs() > Rational::one() {
        bc.abs().to_f64()
    } else {
        1.0
    };
    (a - &bc).abs().to_f64() / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rational::int};

    fn somos4() -> Somos4Problem {
        Somos4Problem::new(int(1), int(1), vec![int(1); 4]).unwrap()
    }

    #[test]
    fn exact_steps_of_worked_example() {
        let s = step_exact(&somos4()).unwrap();
        assert_eq!(s.tau_minus1, int(2));
        assert_eq!((s.f0.clone(), s.f1.clone()), (int(2), int(1)));
        assert_eq!(s.j, int(4));
        assert_eq!(s.lambda, int(1));
        assert_eq!((s.g2.clone(), s.g3.clone()), (int(4), int(-1)));
        assert_eq!(s.f_minus1, rat(3, 4));
        assert_eq!(s.nu, int(-1));
        assert_eq!(s.xi, Some(int(1)));
        assert_eq!(s.mu, Some(int(1)));
        assert!(s.curve_residual().is_zero());
    }

    #[test]
    fn exact_steps_are_gauge_invariant() {
        let p = somos4();
        let w = p.run(0, 3).unwrap().gauge(&rat(-5, 3), &rat(7, 2));
        let q = Somos4Problem::new(int(1), int(1), w.terms).unwrap();
        let (a, b) = (step_exact(&p).unwrap(), step_exact(&q).unwrap());
        assert_eq!(
            (a.j, a.lambda, a.g2, a.g3, a.nu, a.xi),
            (b.j, b.lambda, b.g2, b.g3, b.nu, b.xi)
        );
    }

    #[test]
    fn alpha_zero_is_routed() {
        let p = Somos4Problem::new(int(0), int(1), vec![int(1); 4]).unwrap();
        assert_eq!(step_exact(&p).unwrap_err(), SolverError::AlphaZero);
    }

    #[test]
    fn alternating_form() {
        let p = Somos4Problem::new(int(0), int(2), vec![int(1); 4]).unwrap();
        assert_eq!(alternating_closed_form(&p, 4).unwrap(), int(2));
        assert_eq!(alternating_closed_form(&p, 5).unwrap(), int(2));
        let q = Somos4Problem::new(int(0), rat(3, 2), vec![int(2), int(-1), rat(1, 3), int(5)]).unwrap();
        let w = q.run(-20, 20).unwrap();
        for (n, t) in w.iter() {
            assert_eq!(&alternating_closed_form(&q, n).unwrap(), t, "n = {n}");
        }
        let z = Somos4Problem::new(int(0), int(0), vec![int(1); 4]).unwrap();
        assert_eq!(
            alternating_closed_form(&z, 3).unwrap_err(),
            SolverError::ProductRecurrence
        );
    }

    #[test]
    fn worked_example_constants() {
        let s = solve(&somos4(), 25).unwrap();
        let c = |z: &Complex| z.to_c64();
        let close = |a: f64, b: f64| (a - b).abs() < 5e-9;
        let a = c(&s.a);
        assert!(close(a.re, 0.112724016) && close(a.im, -0.824911687), "{a}");
        let b = c(&s.b);
        assert!(close(b.re, 0.215971963) && close(b.im, 0.616028193), "{b}");
        assert!(close(c(&s.ctx.sigma(&s.kappa.z)).re, 1.555836426));
        let zh = c(&s.zhat0.as_ref().unwrap().z);
        assert!(close(zh.re, 0.929592715) && close(zh.im, 1.225694691), "{zh}");
    }

    #[test]
    fn closed_form_round_trip() {
        let p = somos4();
        let s = solve(&p, 25).unwrap();
        let w = p.run(-5, 15).unwrap();
        for (n, t) in w.iter() {
            let v = s.closed_form(n).unwrap();
            assert!(relative_error(&v.value, t) < 1e-6, "n = {n}");
        }
    }

    #[test]
    fn orbit_of_wp_matches_f() {
        let p = Somos4Problem::new(rat(2, 1), rat(-3, 1), vec![int(1), int(2), int(3), int(1)]).unwrap();
        let part = step_exact(&p).unwrap();
        let s = uniformize(&part, 25).unwrap();
        let f = crate::recurrence::f_from_tau(&p.run(-11, 11).unwrap()).unwrap();
        let lam = Complex::from_rational(&part.lambda, s.ctx.bits);
        for (n, fnv) in f.iter() {
            let x = s.wp_orbit(n).unwrap();
            let want = &lam - &Complex::from_rational(fnv, s.ctx.bits);
            assert!(
                (&x - &want).abs().to_f64() < 1e-8 * (1.0 + want.abs().to_f64()),
                "n = {n}"
            );
        }
    }
}
