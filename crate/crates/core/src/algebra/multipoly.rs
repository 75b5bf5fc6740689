use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{format_rational, AlgebraError, Rational, UniPoly};

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the first differing exponent decides.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// In Laurent mode negative exponents are allowed and monomials are units.
/// Binary operators require identical variable lists and panic otherwise; the
/// `checked_*` variants report a [`AlgebraError::VariableMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
    laurent: bool,
}

impl MultiPoly {
    pub fn zero(vars: &[&str], laurent: bool) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
            laurent,
        }
    }

    fn empty_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
            laurent: self.laurent,
        }
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        let mut p = self.empty_like();
        p.add_term(Monomial::one(self.vars.len()), c);
        p
    }

    pub fn constant(vars: &[&str], laurent: bool, c: Rational) -> Self {
        Self::zero(vars, laurent).constant_like(c)
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], laurent: bool, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, laurent, e, Rational::one()).expect("nonnegative exponent")
    }

    pub fn monomial(vars: &[&str], laurent: bool, exps: Vec<i32>, c: Rational) -> Result<Self, AlgebraError> {
        Self::from_terms(vars, laurent, vec![(exps, c)])
    }

    pub fn from_terms(vars: &[&str], laurent: bool, terms: Vec<(Vec<i32>, Rational)>) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars, laurent);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgebraError::Arity {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            if !laurent {
                if let Some(i) = e.iter().position(|&x| x < 0) {
                    return Err(AlgebraError::NegativeExponent {
                        var: vars[i].to_string(),
                    });
                }
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn from_univariate(var: &str, p: &UniPoly) -> Self {
        let mut out = Self::zero(&[var], false);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial(vec![i as i32]), c.clone());
        }
        out
    }

    /// Coefficients of a polynomial in (at most) one variable, constant first.
    pub fn to_univariate(&self) -> Result<UniPoly, AlgebraError> {
        let active: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] != 0))
            .collect();
        if active.len() > 1 {
            return Err(AlgebraError::NotUnivariate);
        }
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            let e = active.first().map_or(0, |&i| m.0[i]);
            if e < 0 {
                return Err(AlgebraError::NegativeExponent {
                    var: self.vars[active[0]].clone(),
                });
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    /// Same polynomial viewed in Laurent mode.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.0.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MAX; self.vars.len()];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = (*o).min(e);
            }
        }
        out.iter().map(|&e| if e == i32::MAX { 0 } else { e }).collect()
    }

    pub fn max_exponents(&self) -> Vec<i32> {
        let mut out = vec![i32::MIN; self.vars.len()];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = (*o).max(e);
            }
        }
        out.iter().map(|&e| if e == i32::MIN { 0 } else { e }).collect()
    }

    fn check_vars(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch {
                left: self.vars.clone(),
                right: o.vars.clone(),
            })
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(o)?;
        let mut out = self.clone();
        out.laurent |= o.laurent;
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(o)?;
        let mut out = self.empty_like();
        out.laurent |= o.laurent;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.empty_like();
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        out
    }

    /// Multiplies by the monomial with the given exponents (Laurent shift).
    pub fn shift(&self, exps: &[i32]) -> Self {
        let m = Monomial(exps.to_vec());
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect();
        if out.terms.keys().any(|k| k.0.iter().any(|&e| e < 0)) {
            out.laurent = true;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(Rational::one());
        let mut base = self.clone();
        let mut e = e;
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

    /// Exact value at `point`. In Laurent mode a zero coordinate on a variable
    /// that appears with a negative exponent is a domain error.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.vars.len() {
            return Err(AlgebraError::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mins = self.min_exponents();
        for (i, (v, &e)) in point.iter().zip(&mins).enumerate() {
            if e < 0 && v.is_zero() {
                return Err(AlgebraError::Domain {
                    var: self.vars[i].clone(),
                });
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e != 0 {
                    t *= super::rational::pow(x, e as i64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images share one variable
    /// list, which becomes the variable list of the result. A variable with a
    /// negative exponent may only be replaced by a monomial.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self, AlgebraError> {
        if images.len() != self.vars.len() {
            return Err(AlgebraError::Arity {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for im in images {
            first.check_vars(im)?;
        }
        let laurent = images.iter().any(|p| p.laurent);
        let one = first.constant_like(Rational::one());
        let mut out = first.empty_like();
        out.laurent = laurent;
        let mut cache: Vec<BTreeMap<i32, MultiPoly>> = vec![BTreeMap::new(); images.len()];
        for (m, c) in &self.terms {
            let mut t = one.scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        monomial_inverse(&images[i], &self.vars[i])?.pow((-e) as u32)
                    };
                    cache[i].insert(e, p);
                }
                t = &t * &cache[i][&e];
            }
            out = &out + &t;
        }
        out.laurent = laurent;
        Ok(out)
    }

    /// Exact quotient `self / d`. Fails with `NotDivisible` if `d` does not
    /// divide `self` (in the Laurent ring when either operand is Laurent).
    pub fn exact_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.empty_like());
        }
        let laurent = self.laurent || d.laurent;
        let sn = self.min_exponents();
        let sd = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|e| -e).collect::<Vec<_>>();
        let n0 = self.shift(&neg(&sn));
        let d0 = d.shift(&neg(&sd));
        let (lm, lc) = d0.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = n0;
        let mut q = self.empty_like();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            for (k, v) in &d0.terms {
                r.add_term(k.mul(&qm), -(v * &qc));
            }
            q.add_term(qm, qc);
        }
        let net: Vec<i32> = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        let mut q = q.shift(&net);
        q.laurent = laurent;
        if !laurent && q.min_exponents().iter().any(|&e| e < 0) {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q)
    }

    /// Euclidean division of univariate polynomials in the same variable.
    pub fn div_mod(&self, b: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_vars(b)?;
        if self.laurent || b.laurent {
            return Err(AlgebraError::NegativeExponent {
                var: self.vars.first().cloned().unwrap_or_default(),
            });
        }
        let ua = self.to_univariate()?;
        let ub = b.to_univariate()?;
        let both = self.merge_active(b)?;
        let (q, r) = ua.div_rem(&ub)?;
        Ok((self.lift(&q, both), self.lift(&r, both)))
    }

    fn merge_active(&self, b: &Self) -> Result<Option<usize>, AlgebraError> {
        let act = |p: &Self| (0..p.vars.len()).find(|&i| p.terms.keys().any(|m| m.0[i] != 0));
        match (act(self), act(b)) {
            (Some(i), Some(j)) if i != j => Err(AlgebraError::NotUnivariate),
            (i, j) => Ok(i.or(j)),
        }
    }

    fn lift(&self, p: &UniPoly, var: Option<usize>) -> Self {
        let mut out = self.empty_like();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = Monomial::one(self.vars.len());
            if let Some(i) = var {
                m.0[i] = k as i32;
            }
            out.add_term(m, c.clone());
        }
        out
    }

    /// Product of the gcd of numerators and inverse lcm of denominators of the
    /// coefficients, signed so that `self / content` has a positive leading
    /// coefficient.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::one();
        }
        let r = Rational::new(g, l);
        match self.leading() {
            Some((_, c)) if c.is_negative() => -r,
            _ => r,
        }
    }
}

fn monomial_inverse(p: &MultiPoly, var: &str) -> Result<MultiPoly, AlgebraError> {
    if !p.is_monomial() {
        return Err(AlgebraError::Domain { var: var.to_string() });
    }
    let (m, c) = p.terms.iter().next().unwrap();
    let mut out = p.empty_like();
    out.laurent = true;
    out.terms.insert(Monomial(m.0.iter().map(|e| -e).collect()), c.recip());
    Ok(out)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("variable lists must match")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("variable lists must match")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("variable lists must match")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Terms in descending graded-lex order, every exponent written out:
/// `3*x^2*y^1 - 1/2*y^-1 + 4`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .zip(&self.vars)
                    .filter(|(e, _)| **e != 0)
                    .map(|(e, v)| format!("{v}^{e}"))
                    .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x() -> MultiPoly {
        MultiPoly::var(&["x"], false, 0)
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(&["x"], false, rat(v, 1))
    }

    #[test]
    fn eval_examples() {
        let p = &x().pow(2) - &x();
        assert_eq!(p.eval(&[rat(-1, 1)]).unwrap(), rat(2, 1));

        let vars = ["u1", "u2"];
        let s = &MultiPoly::var(&vars, false, 0) - &MultiPoly::var(&vars, false, 1).pow(3).scale(&rat(1, 3));
        assert_eq!(s.eval(&[rat(1, 3), rat(1, 1)]).unwrap(), rat(0, 1));

        let f = &(&x().pow(5).scale(&rat(4, 1)) - &x().scale(&rat(4, 1))) + &c(1);
        assert_eq!(f.eval(&[rat(1, 1)]).unwrap(), rat(1, 1));
    }

    #[test]
    fn laurent_domain_error() {
        let p = MultiPoly::monomial(&["t"], true, vec![-2], rat(1, 1)).unwrap();
        assert!(matches!(p.eval(&[rat(0, 1)]), Err(AlgebraError::Domain { .. })));
        assert_eq!(p.eval(&[rat(2, 1)]).unwrap(), rat(1, 4));
        assert!(MultiPoly::monomial(&["t"], false, vec![-1], rat(1, 1)).is_err());
    }

    #[test]
    fn div_mod_examples() {
        let (q, r) = (&x().pow(2) + &x()).div_mod(&x()).unwrap();
        assert_eq!(q, &x() + &c(1));
        assert!(r.is_zero());

        let f = &(&x().pow(5).scale(&rat(4, 1)) - &x().scale(&rat(4, 1))) + &c(1);
        let (_, r) = (&c(1) - &f).div_mod(&(&x().pow(2) + &x())).unwrap();
        assert!(r.is_zero());

        let (q, r) = x().pow(3).div_mod(&(&x() - &c(1))).unwrap();
        assert_eq!(q, &(&x().pow(2) + &x()) + &c(1));
        assert_eq!(r, c(1));

        assert_eq!(x().div_mod(&c(0)).unwrap_err(), AlgebraError::DivisionByZero);
    }

    #[test]
    fn exact_division_multivariate() {
        let v = ["a", "b"];
        let a = MultiPoly::var(&v, false, 0);
        let b = MultiPoly::var(&v, false, 1);
        let p = &(&a + &b) * &(&a - &b.scale(&rat(2, 1)));
        assert_eq!(p.exact_div(&(&a + &b)).unwrap(), &a - &b.scale(&rat(2, 1)));
        assert_eq!(
            p.exact_div(&(&a + &b.scale(&rat(3, 1)))).unwrap_err(),
            AlgebraError::NotDivisible
        );
        // Laurent: (a + b) / (a^2 b) = a^-1 b^-1 + a^-2
        let den = MultiPoly::monomial(&v, true, vec![2, 1], rat(1, 1)).unwrap();
        let q = (&a + &b).into_laurent().exact_div(&den).unwrap();
        assert_eq!(q.to_string(), "a^-1*b^-1 + a^-2");
    }

    #[test]
    fn display_and_compose() {
        let v = ["x", "y"];
        let xv = MultiPoly::var(&v, false, 0);
        let yv = MultiPoly::var(&v, false, 1);
        let p = &(&xv.pow(2).scale(&rat(3, 1)) - &yv) + &MultiPoly::constant(&v, false, rat(-1, 2));
        assert_eq!(p.to_string(), "3*x^2 - y^1 - 1/2");
        // x -> x + y, y -> 2
        let two = MultiPoly::constant(&v, false, rat(2, 1));
        let q = p.compose(&[&xv + &yv, two]).unwrap();
        assert_eq!(q.eval(&[rat(1, 1), rat(1, 1)]).unwrap(), rat(12 - 2, 1) - rat(1, 2));
    }

    #[test]
    fn partials() {
        let v = ["x", "y"];
        let p = &MultiPoly::var(&v, false, 0).pow(2) * &MultiPoly::var(&v, false, 1).pow(3);
        assert_eq!(p.partial(1).to_string(), "3*x^2*y^2");
        assert!(p.partial(0).partial(0).partial(0).is_zero());
    }
}
