use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::gcd;
use super::poly::Poly2;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A fraction `num / den` of bivariate polynomials.
///
/// Arithmetic is lazy: results are not reduced unless [`RatFn::reduce`] is
/// called. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFn<C> {
    num: Poly2<C>,
    den: Poly2<C>,
}

impl<C: Scalar> RatFn<C> {
    pub fn new(num: Poly2<C>, den: Poly2<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(num: Poly2<C>) -> Self {
        RatFn { num, den: Poly2::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly2::x())
    }

    pub fn y() -> Self {
        Self::from_poly(Poly2::y())
    }

    pub fn num(&self) -> &Poly2<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly2<C> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly2<C>, Poly2<C>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant value if the fraction is a constant (checked without reducing
    /// when possible).
    pub fn as_constant(&self) -> Option<C> {
        let n = self.num.as_constant();
        let d = self.den.as_constant();
        match (n, d) {
            (Some(n), Some(d)) => Some(n / d),
            _ => {
                let r = self.reduce();
                match (r.num.as_constant(), r.den.as_constant()) {
                    (Some(n), Some(d)) => Some(n / d),
                    _ => None,
                }
            }
        }
    }

    /// Equality in the fraction field, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn { num: self.den.clone(), den: self.num.clone() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &C) -> Self {
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Divides out the gcd of numerator and denominator; the denominator of the
    /// result has leading coefficient one.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        if let Some(d) = self.den.as_constant() {
            return Self::from_poly(self.num.scale(&(C::one() / d)));
        }
        let g = gcd(&self.num, &self.den);
        let (num, den) = if g.as_constant().is_some() {
            (self.num.clone(), self.den.clone())
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides numerator"),
                self.den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RatFn { num, den }.normalize_denominator()
    }

    /// Scales numerator and denominator so the denominator's leading
    /// coefficient is one. The caller guarantees the fraction is reduced.
    pub(crate) fn normalize_denominator(self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = C::one() / lc;
        RatFn { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    /// Reduced sum of two reduced fractions, cancelling through the gcd of
    /// the denominators instead of the gcd of the full result.
    pub fn add_reduced(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.den, &other.den);
        let (da, db) = (self.den.div_exact(&g).expect("gcd divides"), other.den.div_exact(&g).expect("gcd divides"));
        let num = &(&self.num * &db) + &(&other.num * &da);
        if num.is_zero() {
            return Self::zero();
        }
        // a common factor of the sum and the denominator must divide g
        let h = gcd(&num, &g);
        let num = num.div_exact(&h).expect("gcd divides");
        let den = &(&da * &db) * &g.div_exact(&h).expect("gcd divides");
        RatFn { num, den }.normalize_denominator()
    }

    /// Reduced product of two reduced fractions by cross-cancellation.
    pub fn mul_reduced(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let num = &self.num.div_exact(&g1).expect("gcd divides") * &other.num.div_exact(&g2).expect("gcd divides");
        let den = &self.den.div_exact(&g2).expect("gcd divides") * &other.den.div_exact(&g1).expect("gcd divides");
        RatFn { num, den }.normalize_denominator()
    }

    pub fn derivative_x(&self) -> Self {
        if let Some(d) = self.den.as_constant() {
            return RatFn { num: self.num.derivative_x(), den: Poly2::constant(d) };
        }
        let num = &(&self.num.derivative_x() * &self.den) - &(&self.num * &self.den.derivative_x());
        RatFn { num, den: &self.den * &self.den }
    }

    pub fn derivative_y(&self) -> Self {
        if let Some(d) = self.den.as_constant() {
            return RatFn { num: self.num.derivative_y(), den: Poly2::constant(d) };
        }
        let num = &(&self.num.derivative_y() * &self.den) - &(&self.num * &self.den.derivative_y());
        RatFn { num, den: &self.den * &self.den }
    }

    pub fn eval(&self, x: &C, y: &C) -> Result<C> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x, y) / d)
    }

    /// Substitutes rational functions for `x` and `y`.
    pub fn compose(&self, fx: &Self, fy: &Self) -> Result<Self> {
        let n = eval_poly_at(&self.num, fx, fy);
        let d = eval_poly_at(&self.den, fx, fy);
        n.div(&d)
    }

    /// Largest total degree among numerator and denominator.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().unwrap_or(0).max(self.den.total_degree().unwrap_or(0))
    }

    pub fn check_degree(&self, limit: usize) -> Result<()> {
        if self.degree() as usize > limit {
            return Err(Error::BudgetExceeded { what: "rational function degree", limit });
        }
        Ok(())
    }

    /// True when the function does not depend on `y`.
    pub fn is_univariate_x(&self) -> bool {
        self.num.degree_y().unwrap_or(0) == 0 && self.den.degree_y().unwrap_or(0) == 0
    }
}

fn eval_poly_at<C: Scalar>(p: &Poly2<C>, fx: &RatFn<C>, fy: &RatFn<C>) -> RatFn<C> {
    let max_dx = p.degree_x().unwrap_or(0) as usize;
    let max_dy = p.degree_y().unwrap_or(0) as usize;
    let mut xp = vec![RatFn::one()];
    for i in 0..max_dx {
        let next = (&xp[i] * fx).reduce();
        xp.push(next);
    }
    let mut yp = vec![RatFn::one()];
    for i in 0..max_dy {
        let next = (&yp[i] * fy).reduce();
        yp.push(next);
    }
    let mut acc = RatFn::zero();
    for (m, c) in p.terms() {
        let t = (&xp[m.dx as usize] * &yp[m.dy as usize]).scale(c);
        acc = (&acc + &t).reduce();
    }
    acc
}

impl<C: Scalar> PartialEq for RatFn<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

/// `b / a` when `a` divides `b` and the degrees allow it.
fn divides<C: Scalar>(a: &Poly2<C>, b: &Poly2<C>) -> Option<Poly2<C>> {
    if a.degree_x()? > b.degree_x()? || a.degree_y()? > b.degree_y()? {
        return None;
    }
    b.div_exact(a)
}

impl<C: Scalar> Add for &RatFn<C> {
    type Output = RatFn<C>;
    fn add(self, rhs: &RatFn<C>) -> RatFn<C> {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        if let Some(c) = rhs.den.as_constant() {
            let num = &self.num + &(&self.den * &rhs.num).scale(&(C::one() / c));
            return RatFn { num, den: self.den.clone() };
        }
        if let Some(c) = self.den.as_constant() {
            let num = &(&rhs.den * &self.num).scale(&(C::one() / c)) + &rhs.num;
            return RatFn { num, den: rhs.den.clone() };
        }
        // one denominator dividing the other keeps the sum's denominator small
        if let Some(q) = divides(&self.den, &rhs.den) {
            return RatFn { num: &(&self.num * &q) + &rhs.num, den: rhs.den.clone() };
        }
        if let Some(q) = divides(&rhs.den, &self.den) {
            return RatFn { num: &self.num + &(&rhs.num * &q), den: self.den.clone() };
        }
        RatFn {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<C: Scalar> Sub for &RatFn<C> {
    type Output = RatFn<C>;
    fn sub(self, rhs: &RatFn<C>) -> RatFn<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Mul for &RatFn<C> {
    type Output = RatFn<C>;
    fn mul(self, rhs: &RatFn<C>) -> RatFn<C> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFn::zero();
        }
        let den = if self.den.is_one() {
            rhs.den.clone()
        } else if rhs.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        RatFn { num: &self.num * &rhs.num, den }
    }
}

impl<C: Scalar> Neg for &RatFn<C> {
    type Output = RatFn<C>;
    fn neg(self) -> RatFn<C> {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Scalar> Add for RatFn<C> {
    type Output = RatFn<C>;
    fn add(self, rhs: RatFn<C>) -> RatFn<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for RatFn<C> {
    type Output = RatFn<C>;
    fn sub(self, rhs: RatFn<C>) -> RatFn<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for RatFn<C> {
    type Output = RatFn<C>;
    fn mul(self, rhs: RatFn<C>) -> RatFn<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for RatFn<C> {
    type Output = RatFn<C>;
    fn neg(self) -> RatFn<C> {
        -&self
    }
}

/// Canonical text: the reduced numerator alone when the denominator is one,
/// otherwise `(num)/(den)`.
impl<C: Scalar> fmt::Display for RatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce();
        if r.den.is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "({})/({})", r.num, r.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CommRat, Poly};

    fn q(n: i64) -> crate::Rational {
        crate::Rational::from_integer(n.into())
    }

    fn poly(terms: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|&(a, b, c)| (a, b, q(c))))
    }

    #[test]
    fn add_of_variables() {
        let s = &CommRat::x() + &CommRat::y();
        assert_eq!(s.num(), &poly(&[(1, 0, 1), (0, 1, 1)]));
        assert!(s.den().is_one());
    }

    #[test]
    fn inverse_of_x_plus_one() {
        let a = CommRat::from_poly(poly(&[(1, 0, 1), (0, 0, 1)]));
        let i = a.inv().unwrap();
        assert!(i.num().is_one());
        assert_eq!(i.den(), &poly(&[(1, 0, 1), (0, 0, 1)]));
        assert_eq!(CommRat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn cancellation_through_equality() {
        let a = CommRat::x().inv().unwrap();
        let prod = &a * &CommRat::x();
        assert!(!prod.num().is_one());
        assert!(prod.equals(&CommRat::one()));
    }

    #[test]
    fn equality_examples() {
        // (x^2-1)(1) = (x+1)(x-1), expanded by hand
        let lhs = CommRat::new(poly(&[(2, 0, 1), (0, 0, -1)]), poly(&[(1, 0, 1), (0, 0, -1)])).unwrap();
        let rhs = CommRat::from_poly(poly(&[(1, 0, 1), (0, 0, 1)]));
        assert!(lhs.equals(&rhs));
        assert!(!CommRat::x().equals(&CommRat::y()));
        let z = CommRat::new(Poly::zero(), poly(&[(1, 0, 1), (0, 1, 1)])).unwrap();
        assert!(z.equals(&CommRat::zero()));
    }

    #[test]
    fn reduce_examples() {
        let a = CommRat::new(poly(&[(2, 0, 1), (0, 0, -1)]), poly(&[(1, 0, 1), (0, 0, -1)])).unwrap();
        let r = a.reduce();
        assert_eq!(r.num(), &poly(&[(1, 0, 1), (0, 0, 1)]));
        assert!(r.den().is_one());

        let z = CommRat::new(Poly::zero(), poly(&[(1, 1, 1)])).unwrap().reduce();
        assert!(z.num().is_zero() && z.den().is_one());

        let s = CommRat::from_poly(poly(&[(1, 0, 1), (0, 1, 1)]));
        let r = s.reduce();
        assert_eq!(r.num(), s.num());
        assert_eq!(r.den(), s.den());
    }

    #[test]
    fn display_forms() {
        let a = CommRat::new(poly(&[(1, 1, 1), (0, 0, -1)]), poly(&[(1, 0, 1)])).unwrap();
        assert_eq!(a.to_string(), "(x*y-1)/(x)");
        let b = &CommRat::x() - &CommRat::x();
        assert_eq!(b.to_string(), "0");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(CommRat::new(Poly::one(), Poly::zero()).is_err());
    }
}
