use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Exponent pair `x^dx y^dy`, ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub dx: u32,
    pub dy: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { dx: 0, dy: 0 };

    pub fn new(dx: u32, dy: u32) -> Self {
        Mono { dx, dy }
    }

    pub fn degree(self) -> u32 {
        self.dx + self.dy
    }

    pub fn divides(self, other: Mono) -> bool {
        self.dx <= other.dx && self.dy <= other.dy
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.dx.cmp(&other.dx))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, rhs: Mono) -> Mono {
        Mono::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

/// Sparse polynomial in commuting `x, y`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Scalar> Default for Poly2<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Poly2<C> {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Mono::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), Mono::new(1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), Mono::new(0, 1))
    }

    pub fn monomial(c: C, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly2 { terms }
    }

    /// Builds a polynomial from `(dx, dy, coefficient)` triples, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (dx, dy, c) in it {
            p.add_term(Mono::new(dx, dy), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Returns the constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Mono, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Mono) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(Mono, &C)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.dx).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.dy).max()
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_mono(&self, c: &C, mono: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m * mono, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    pub fn derivative_x(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.dx > 0 {
                let k = C::from_u32(m.dx).expect("exponent fits");
                out.add_term(Mono::new(m.dx - 1, m.dy), c.clone() * k);
            }
        }
        out
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.dy > 0 {
                let k = C::from_u32(m.dy).expect("exponent fits");
                out.add_term(Mono::new(m.dx, m.dy - 1), c.clone() * k);
            }
        }
        out
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.dx {
                t = t * x.clone();
            }
            for _ in 0..m.dy {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(C::one() / c)));
        }
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = Mono::new(m.dx - lm.dx, m.dy - lm.dy);
            let qc = c.clone() / lc.clone();
            rem = &rem - &d.mul_mono(&qc, qm);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Substitutes polynomials for `x` and `y`.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let max_dx = self.degree_x().unwrap_or(0);
        let max_dy = self.degree_y().unwrap_or(0);
        let mut xp = vec![Self::one()];
        for i in 0..max_dx as usize {
            let next = &xp[i] * px;
            xp.push(next);
        }
        let mut yp = vec![Self::one()];
        for i in 0..max_dy as usize {
            let next = &yp[i] * py;
            yp.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = (&xp[m.dx as usize] * &yp[m.dy as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }
}

impl<C: Scalar> Add for &Poly2<C> {
    type Output = Poly2<C>;
    fn add(self, rhs: &Poly2<C>) -> Poly2<C> {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Poly2<C> {
    type Output = Poly2<C>;
    fn sub(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul for &Poly2<C> {
    type Output = Poly2<C>;
    fn mul(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = Poly2::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &Poly2<C> {
    type Output = Poly2<C>;
    fn neg(self) -> Poly2<C> {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Add for Poly2<C> {
    type Output = Poly2<C>;
    fn add(self, rhs: Poly2<C>) -> Poly2<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Poly2<C> {
    type Output = Poly2<C>;
    fn sub(self, rhs: Poly2<C>) -> Poly2<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Poly2<C> {
    type Output = Poly2<C>;
    fn mul(self, rhs: Poly2<C>) -> Poly2<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Poly2<C> {
    type Output = Poly2<C>;
    fn neg(self) -> Poly2<C> {
        -&self
    }
}

/// Canonical text form: graded-lex descending, `^` exponents, explicit `*`.
impl<C: Scalar> fmt::Display for Poly2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Mono::ONE {
                factors.push(abs.to_string());
            }
            match m.dx {
                0 => {}
                1 => factors.push("x".into()),
                d => factors.push(format!("x^{d}")),
            }
            match m.dy {
                0 => {}
                1 => factors.push("y".into()),
                d => factors.push(format!("y^{d}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn q(n: i64) -> crate::Rational {
        crate::Rational::from_integer(n.into())
    }

    #[test]
    fn graded_lex_order() {
        assert!(Mono::new(2, 0) > Mono::new(1, 1));
        assert!(Mono::new(1, 1) > Mono::new(0, 2));
        assert!(Mono::new(0, 2) > Mono::new(1, 0));
        assert!(Mono::new(1, 0) > Mono::new(0, 1));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &Poly::x() - &Poly::x();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn display_canonical() {
        let p = Poly::from_terms([(1, 1, q(1)), (0, 0, q(-1))]);
        assert_eq!(p.to_string(), "x*y-1");
        let p = Poly::from_terms([(2, 0, q(3)), (0, 1, q(-2)), (0, 0, q(5))]);
        assert_eq!(p.to_string(), "3*x^2-2*y+5");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let num = Poly::from_terms([(2, 0, q(1)), (0, 0, q(-1))]);
        let den = Poly::from_terms([(1, 0, q(1)), (0, 0, q(-1))]);
        let quot = num.div_exact(&den).unwrap();
        assert_eq!(quot, Poly::from_terms([(1, 0, q(1)), (0, 0, q(1))]));
        assert!(Poly::x().div_exact(&Poly::y()).is_none());
    }

    #[test]
    fn derivatives_commute() {
        let p = Poly::from_terms([(3, 2, q(2)), (1, 1, q(-1)), (0, 4, q(7))]);
        assert_eq!(p.derivative_x().derivative_y(), p.derivative_y().derivative_x());
    }
}
