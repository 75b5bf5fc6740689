use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, MultiPoly, Rational};

/// Quotient of two multivariate polynomials over the same variables.
///
/// Normalisation: if the denominator divides the numerator exactly it is
/// absorbed (in Laurent mode this covers every monomial denominator); otherwise
/// the denominator is made primitive with positive leading
/// coefficient (its content moves to the numerator). No multivariate gcd is
/// taken, so equal functions may still have different representations;
/// compare with [`RationalFunction::is_zero`] on the difference.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(AlgebraError::VariableMismatch {
                left: num.vars().to_vec(),
                right: den.vars().to_vec(),
            });
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = p.constant_like(Rational::one());
        RationalFunction { num: p, den }
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            let den = num.constant_like(Rational::one());
            return RationalFunction { num, den };
        }
        if let Ok(q) = num.exact_div(&den) {
            let den = q.constant_like(Rational::one());
            return RationalFunction { num: q, den };
        }
        let c = den.content();
        let inv = c.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalize(&self.num + &o.num, self.den.clone());
        }
        Self::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalize(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn partial(&self, i: usize) -> Self {
        let n = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        Self::normalize(n, self.den.pow(2))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn arithmetic_cancels() {
        let v = ["x", "y"];
        let x = MultiPoly::var(&v, false, 0);
        let y = MultiPoly::var(&v, false, 1);
        let a = RationalFunction::new(x.clone(), &x + &y).unwrap();
        let b = RationalFunction::new(y.clone(), &x + &y).unwrap();
        let s = a.add(&b);
        assert_eq!(s.to_string(), "1");
        let d = a.sub(&a);
        assert!(d.is_zero());
        let h = RationalFunction::new(x.scale(&rat(2, 1)), (&x + &y).scale(&rat(-4, 1))).unwrap();
        assert_eq!(h.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(-1, 4));
        assert!(RationalFunction::new(x.clone(), MultiPoly::zero(&v, false)).is_err());
    }

    #[test]
    fn quotient_rule() {
        let v = ["x"];
        let x = MultiPoly::var(&v, false, 0);
        // d/dx (1/x) = -1/x^2
        let r = RationalFunction::new(x.constant_like(rat(1, 1)), x.clone()).unwrap();
        let d = r.partial(0);
        assert_eq!(d.eval(&[rat(2, 1)]).unwrap(), rat(-1, 4));
    }
}
