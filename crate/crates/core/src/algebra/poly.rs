use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, Rational};

/// Dense univariate polynomial, coefficients stored from the constant term up.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector and `degree()` returns `None` for it.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T: Field> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c.clone() / lc.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self), AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if da < db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = r[k + db].clone() / lb.clone();
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * bj.clone();
            }
            r[k + db] = T::zero();
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self, AlgebraError> {
        self.div_rem(b).map(|(_, r)| r)
    }

    /// Exact quotient; fails unless the remainder is identically zero.
    pub fn exact_div(&self, b: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        Self::xgcd(a, b).0
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b` and `g` monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = T::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c == &Rational::from_integer(0.into()) {
                continue;
            }
            let neg = c < &Rational::from_integer(0.into());
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_one = a == Rational::from_integer(1.into());
            match i {
                0 => write!(f, "{}", super::format_rational(&a))?,
                _ if is_one => write!(f, "x^{i}")?,
                _ => write!(f, "{}*x^{i}", super::format_rational(&a))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn division_examples() {
        // x^2 + x by x
        let (q, r) = p(&[0, 1, 1]).div_rem(&p(&[0, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), Poly::zero()));
        // x^3 by x - 1
        let (q, r) = p(&[0, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1, 1]), p(&[1])));
        assert_eq!(p(&[1]).div_rem(&Poly::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn xgcd_identity() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        let (g, s, t) = Poly::xgcd(&a, &b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -4, 0, 0, 0, 4]).to_string(), "4*x^5 - 4*x^1 + 1");
        assert_eq!(p(&[0, -1, 1]).to_string(), "x^2 - x^1");
    }
}
