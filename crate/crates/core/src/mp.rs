//! Multiprecision real and complex scalars on top of `astro-float`.
//!
//! Every value carries its binary precision; binary operations round to the
//! larger of the two. Transcendental functions share a per-thread constants
//! cache, so values may be sent between threads freely.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;

use crate::algebra::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary precision for `digits` significant decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    let b = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 40;
    b.div_ceil(64) * 64
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn from_f64(x: f64, p: usize) -> Self {
        Real {
            v: BigFloat::from_f64(x, p),
            p,
        }
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Real {
            v: BigFloat::from_i64(n, p),
            p,
        }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn parse(s: &str, p: usize) -> Self {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        Real { v, p }
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        let n = Self::parse(&r.numer().to_string(), p);
        let d = Self::parse(&r.denom().to_string(), p);
        &n / &d
    }

    pub fn pi(p: usize) -> Self {
        Real {
            v: with_cc(|cc| cc.pi(p, RM)),
            p,
        }
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    pub fn with_prec(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        Real { v, p }
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        self.v.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn sqrt(&self) -> Self {
        Real {
            v: self.v.sqrt(self.p, RM),
            p: self.p,
        }
    }

    pub fn exp(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.exp(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn ln(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.ln(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn sin(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.sin(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn cos(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.cos(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn sinh(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.sinh(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn cosh(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.cosh(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn atan(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.atan(self.p, RM, cc)),
            p: self.p,
        }
    }

    /// Angle of `(x, y)` in `(−π, π]`.
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let p = y.p.max(x.p);
        if x.is_zero() && y.is_zero() {
            return Real::zero(p);
        }
        let pi = Real::pi(p);
        let half = Real::from_f64(0.5, p);
        if x.abs() >= y.abs() {
            let a = (y / x).atan();
            if !x.is_negative() {
                a
            } else if !y.is_negative() {
                &a + &pi
            } else {
                &a - &pi
            }
        } else {
            let a = (x / y).atan();
            let q = &pi * &half;
            if !y.is_negative() {
                &q - &a
            } else {
                &(-&q) - &a
            }
        }
    }

    pub fn powi(&self, n: usize) -> Self {
        Real {
            v: self.v.powi(n, self.p, RM),
            p: self.p,
        }
    }

    pub fn floor(&self) -> Self {
        Real {
            v: self.v.floor(),
            p: self.p,
        }
    }

    pub fn round(&self) -> Self {
        (self + &Real::from_f64(0.5, self.p)).floor()
    }

    pub fn max(&self, o: &Real) -> Real {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        let s = self.v.to_string();
        round_sci(&s, digits)
    }
}

/// Rounds a decimal scientific string `d.ddd…e±x` to `digits` significant digits.
fn round_sci(s: &str, digits: usize) -> String {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let neg = mant.starts_with('-');
    let ds: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    let mut exp: i64 = exp.parse().unwrap_or(0);
    let mut keep: Vec<u8> = ds.iter().take(digits).cloned().collect();
    if ds.len() > digits && ds[digits] >= 5 {
        let mut i = keep.len();
        loop {
            if i == 0 {
                keep.insert(0, 1);
                keep.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if keep[i] == 9 {
                keep[i] = 0;
            } else {
                keep[i] += 1;
                break;
            }
        }
    }
    let body: String = keep.iter().map(|d| (b'0' + d) as char).collect();
    let (a, b) = body.split_at(1);
    format!(
        "{}{}{}{}e{}",
        if neg { "-" } else { "" },
        a,
        if b.is_empty() { "" } else { "." },
        b,
        exp
    )
}

impl PartialEq for Real {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&o.v)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                let p = self.p.max(o.p);
                Real {
                    v: self.v.$m(&o.v, p, RM),
                    p,
                }
            }
        }
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
    };
}
real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: BigFloat::neg(&self.v),
            p: self.p,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Multiprecision complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.p;
        Complex { re, im: Real::zero(p) }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex::new(Real::from_f64(re, p), Real::from_f64(im, p))
    }

    pub fn from_c64(z: Complex64, p: usize) -> Self {
        Self::from_f64(z.re, z.im, p)
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        Self::from_real(Real::from_rational(r, p))
    }

    pub fn zero(p: usize) -> Self {
        Self::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_f64(1.0, 0.0, p)
    }

    pub fn i(p: usize) -> Self {
        Self::from_f64(0.0, 1.0, p)
    }

    pub fn prec(&self) -> usize {
        self.re.p.max(self.im.p)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Complex::new(&self.re * s, &self.im * s)
    }

    pub fn mul_i(&self) -> Self {
        Complex::new(-&self.im, self.re.clone())
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(&m * &self.im.cos(), &m * &self.im.sin())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        Complex::new(self.norm_sqr().ln().scale_f64(0.5), self.arg())
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Complex::zero(p);
        }
        let r = self.abs();
        let half = Real::from_f64(0.5, p);
        let a = (&(&r + &self.re.abs()) * &half).sqrt();
        if !self.re.is_negative() {
            Complex::new(a.clone(), &self.im / &(&a + &a))
        } else {
            let b = &self.im.abs() / &(&a + &a);
            let a2 = if self.im.is_negative() { -&a } else { a };
            Complex::new(b, a2)
        }
    }

    pub fn sin(&self) -> Self {
        Complex::new(&self.re.sin() * &self.im.cosh(), &self.re.cos() * &self.im.sinh())
    }

    pub fn cos(&self) -> Self {
        Complex::new(&self.re.cos() * &self.im.cosh(), -&(&self.re.sin() * &self.im.sinh()))
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 {
            &Complex::one(self.prec()) / self
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &Complex::one(self.prec()) / self
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        let im = self.im.to_string_digits(digits);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{}{}i", self.re.to_string_digits(digits), sign, im)
    }
}

impl Real {
    pub fn scale_f64(&self, s: f64) -> Real {
        self * &Real::from_f64(s, self.p)
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        // Smith's algorithm
        if o.re.abs() >= o.im.abs() {
            let r = &o.im / &o.re;
            let d = &o.re + &(&r * &o.im);
            Complex::new(&(&self.re + &(&self.im * &r)) / &d, &(&self.im - &(&self.re * &r)) / &d)
        } else {
            let r = &o.re / &o.im;
            let d = &o.im + &(&r * &o.re);
            Complex::new(&(&(&self.re * &r) + &self.im) / &d, &(&(&self.im * &r) - &self.re) / &d)
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

macro_rules! complex_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
    };
}
complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 192;

    #[test]
    fn elementary_functions() {
        let two = Real::from_i64(2, P);
        let r = two.sqrt();
        assert!((&(&r * &r) - &two).abs().to_f64() < 1e-50);
        let pi = Real::pi(P);
        assert_eq!(pi.to_string_digits(10), "3.141592654e0");
        let z = Complex::from_f64(0.3, -1.2, P);
        let w = z.exp().ln();
        assert!((&w - &z).abs().to_f64() < 1e-50);
        let s = z.sqrt();
        assert!((&(&s * &s) - &z).abs().to_f64() < 1e-50);
        let m = Complex::from_f64(-4.0, 0.0, P).sqrt();
        assert!((m.im.to_f64() - 2.0).abs() < 1e-15 && m.re.to_f64().abs() < 1e-15);
        let one = &(&z.sin() * &z.sin()) + &(&z.cos() * &z.cos());
        assert!((&one - &Complex::one(P)).abs().to_f64() < 1e-50);
    }

    #[test]
    fn atan2_quadrants() {
        for (y, x) in [
            (1.0, 1.0),
            (1.0, -1.0),
            (-1.0, -1.0),
            (-1.0, 1.0),
            (2.0, 0.1),
            (-2.0, -0.1),
        ] {
            let a = Real::atan2(&Real::from_f64(y, P), &Real::from_f64(x, P)).to_f64();
            assert!((a - f64::atan2(y, x)).abs() < 1e-15);
        }
    }

    #[test]
    fn rounding_strings() {
        assert_eq!(round_sci("1.9999996e3", 6), "2.00000e3");
        assert_eq!(round_sci("-1.2345e-2", 3), "-1.23e-2");
        assert_eq!(round_sci("9.96e0", 2), "1.0e1");
    }
}
