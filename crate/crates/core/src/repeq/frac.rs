//! Series coefficients with factored denominators.
//!
//! Every denominator that appears while representing an expression is a
//! product of powers of the commutative images of the inverted subterms. Keeping
//! those factors separate makes sums and products gcd-free; a fully reduced
//! rational function is produced only on request.

use crate::commrat::{gcd, Poly2, RatFn};
use crate::error::{Error, Result};
use crate::modp;
use crate::scalar::Scalar;

/// `num / Π fᵢ^{mᵢ}` with each `fᵢ` nonconstant and leading coefficient one.
#[derive(Clone, Debug)]
pub(crate) struct Frac<C> {
    num: Poly2<C>,
    den: Vec<(Poly2<C>, u32)>,
}

fn multiplicity<C: Scalar>(den: &[(Poly2<C>, u32)], f: &Poly2<C>) -> u32 {
    den.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m)
}

fn same_den<C: Scalar>(a: &[(Poly2<C>, u32)], b: &[(Poly2<C>, u32)]) -> bool {
    a.len() == b.len() && a.iter().all(|(f, m)| multiplicity(b, f) == *m)
}

/// Multiplies `p` by `Π f^{target(f) - have(f)}` over the factors of `target`.
fn lift<C: Scalar>(p: &Poly2<C>, have: &[(Poly2<C>, u32)], target: &[(Poly2<C>, u32)]) -> Poly2<C> {
    let mut out = p.clone();
    for (f, m) in target {
        let e = m - multiplicity(have, f);
        if e > 0 {
            out = &out * &f.pow(e);
        }
    }
    out
}

impl<C: Scalar> Frac<C> {
    pub(crate) fn zero() -> Self {
        Frac { num: Poly2::zero(), den: Vec::new() }
    }

    pub(crate) fn from_poly(num: Poly2<C>) -> Self {
        Frac { num, den: Vec::new() }
    }

    pub(crate) fn constant(c: C) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    /// Splits a rational function into numerator and a single denominator
    /// factor.
    #[cfg(test)]
    pub(crate) fn from_ratfn(r: &RatFn<C>) -> Self {
        let r = r.reduce();
        match r.den().as_constant() {
            Some(d) => Self::from_poly(r.num().scale(&(C::one() / d))),
            None => Frac { num: r.num().clone(), den: vec![(r.den().clone(), 1)] },
        }
    }

    /// `1 / r`, with the numerator of `r` (made monic) as the new factor.
    pub(crate) fn inverse_of(r: &RatFn<C>) -> Result<Self> {
        let r = r.reduce();
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = r.num().leading().map(|(m, c)| (m, c.clone())).expect("nonzero");
        let inv = C::one() / lc;
        let num = r.den().scale(&inv);
        if lm.degree() == 0 {
            return Ok(Self::from_poly(num));
        }
        Ok(Frac { num, den: vec![(r.num().scale(&inv), 1)] })
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Total degree of the numerator, a proxy for coefficient growth.
    pub(crate) fn degree(&self) -> u32 {
        self.num.total_degree().unwrap_or(0)
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if same_den(&self.den, &o.den) {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        let mut den = self.den.clone();
        for (f, m) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, n)) => *n = (*n).max(*m),
                None => den.push((f.clone(), *m)),
            }
        }
        let num = &lift(&self.num, &self.den, &den) + &lift(&o.num, &o.den, &den);
        Self::normalized(num, den)
    }

    pub(crate) fn neg(&self) -> Self {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, n)) => *n += m,
                None => den.push((f.clone(), *m)),
            }
        }
        Frac { num: &self.num * &o.num, den }
    }

    fn normalized(num: Poly2<C>, den: Vec<(Poly2<C>, u32)>) -> Self {
        if num.is_zero() {
            Self::zero()
        } else {
            Frac { num, den }
        }
    }

    pub(crate) fn equals(&self, o: &Self) -> bool {
        if same_den(&self.den, &o.den) {
            return self.num == o.num;
        }
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        // a/A = b/B  ⇔  a·(B/g) = b·(A/g) with g the common part of A and B
        let mut common = Vec::new();
        for (f, m) in &self.den {
            let n = multiplicity(&o.den, f).min(*m);
            if n > 0 {
                common.push((f.clone(), n));
            }
        }
        let lhs = lift(&self.num, &common, &o.den);
        let rhs = lift(&o.num, &common, &self.den);
        lhs == rhs
    }

    /// The coefficient as a reduced rational function.
    pub(crate) fn to_ratfn(&self) -> RatFn<C> {
        if self.den.is_empty() {
            return RatFn::from_poly(self.num.clone());
        }
        // Cancel factor by factor: the numerator shares a divisor with the
        // full denominator only if it shares one with some factor, and a gcd
        // against a single small factor is far cheaper than against the product.
        let mut num = self.num.clone();
        let mut pending = self.den.clone();
        let mut kept = Vec::new();
        while let Some((f, m)) = pending.pop() {
            if m == 0 || f.as_constant().is_some() {
                continue;
            }
            let g = gcd(&num, &f);
            if g.as_constant().is_some() {
                kept.push((f, m));
                continue;
            }
            num = num.div_exact(&g).expect("gcd divides numerator");
            pending.push((f.div_exact(&g).expect("gcd divides factor"), 1));
            pending.push((f, m - 1));
        }
        let den = kept.iter().fold(Poly2::one(), |acc, (f, m)| &acc * &f.pow(*m));
        RatFn::new(num, den).expect("nonzero denominator").normalize_denominator()
    }
}

/// Coefficient arithmetic used while representing expressions: either exact
/// rational functions with factored denominators, or values at a point.
pub(crate) trait CoefRing {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn constant(&self, c: &C0) -> Result<Self::E>;
    fn x(&self) -> Self::E;
    fn y(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn equals(&self, a: &Self::E, b: &Self::E) -> bool;
    /// `1/φ` for the commutative image `φ` of an inverted subterm.
    fn inverse_of(&self, phi: &RatFn<C0>) -> Result<Self::E>;
    fn degree(&self, a: &Self::E) -> u32;
}

type C0 = crate::Rational;

/// Exact coefficients in `Q(x, y)`.
pub(crate) struct Symbolic;

impl CoefRing for Symbolic {
    type E = Frac<C0>;
    fn zero(&self) -> Frac<C0> {
        Frac::zero()
    }
    fn constant(&self, c: &C0) -> Result<Frac<C0>> {
        Ok(Frac::constant(c.clone()))
    }
    fn x(&self) -> Frac<C0> {
        Frac::from_poly(Poly2::x())
    }
    fn y(&self) -> Frac<C0> {
        Frac::from_poly(Poly2::y())
    }
    fn add(&self, a: &Frac<C0>, b: &Frac<C0>) -> Frac<C0> {
        a.add(b)
    }
    fn neg(&self, a: &Frac<C0>) -> Frac<C0> {
        a.neg()
    }
    fn mul(&self, a: &Frac<C0>, b: &Frac<C0>) -> Frac<C0> {
        a.mul(b)
    }
    fn is_zero(&self, a: &Frac<C0>) -> bool {
        a.is_zero()
    }
    fn equals(&self, a: &Frac<C0>, b: &Frac<C0>) -> bool {
        a.equals(b)
    }
    fn inverse_of(&self, phi: &RatFn<C0>) -> Result<Frac<C0>> {
        Frac::inverse_of(phi)
    }
    fn degree(&self, a: &Frac<C0>) -> u32 {
        a.degree()
    }
}

/// The Mersenne prime `2^61 - 1`.
/// Coefficients specialised at `(x, y) = (px, py)` in the prime field
/// `F_p`, `p = 2^61 - 1`.
///
/// Every coefficient of a representation lies in the subring of `Q(x, y)`
/// generated by `x`, `y`, the constants of the expression and the inverses of
/// the images of inverted subterms. Specialisation is a ring homomorphism on
/// that subring as long as every inverted image and every constant
/// denominator stays nonzero modulo `p` at the point, so values that differ
/// here differ as rational functions.
pub(crate) struct AtPoint {
    pub(crate) px: u64,
    pub(crate) py: u64,
}

impl AtPoint {
    fn poly(&self, p: &Poly2<C0>) -> Result<u64> {
        let mut acc = 0u64;
        for (m, c) in p.terms() {
            let c = c.to_mod_p().ok_or(Error::DivisionByZero)?;
            let t = modp::mul(c, modp::mul(modp::pow(self.px, m.dx as u64), modp::pow(self.py, m.dy as u64)));
            acc = modp::add(acc, t);
        }
        Ok(acc)
    }
}

impl CoefRing for AtPoint {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn constant(&self, c: &C0) -> Result<u64> {
        c.to_mod_p().ok_or(Error::DivisionByZero)
    }
    fn x(&self) -> u64 {
        self.px
    }
    fn y(&self) -> u64 {
        self.py
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        modp::add(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        modp::neg(*a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        modp::mul(*a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn equals(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn inverse_of(&self, phi: &RatFn<C0>) -> Result<u64> {
        let n = self.poly(phi.num())?;
        let d = self.poly(phi.den())?;
        match (d, modp::inv(n)) {
            (0, _) | (_, None) => Err(Error::DivisionByZero),
            (d, Some(ni)) => Ok(modp::mul(d, ni)),
        }
    }
    fn degree(&self, _: &u64) -> u32 {
        0
    }
}

/// Square truncated series matrix over a [`CoefRing`], coefficient-major and
/// row-major.
#[derive(Clone, Debug)]
pub(crate) struct CoefMat<E> {
    k: usize,
    /// Whether the constant term is known to be a multiple of the identity.
    scalar: bool,
    coeffs: Vec<Vec<E>>,
}

impl<E: Clone> CoefMat<E> {
    pub(crate) fn zero<R: CoefRing<E = E>>(ring: &R, k: usize, order: usize) -> Self {
        CoefMat { k, scalar: true, coeffs: vec![vec![ring.zero(); k * k]; order + 1] }
    }

    /// `c·Id + ε·pert`.
    pub(crate) fn generator<R: CoefRing<E = E>>(ring: &R, c: E, pert: Option<&[Vec<i64>]>, k: usize, order: usize) -> Self {
        let mut m = Self::zero(ring, k, order);
        for i in 0..k {
            m.coeffs[0][i * k + i] = c.clone();
        }
        if let (Some(p), true) = (pert, order >= 1) {
            for (i, row) in p.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v != 0 {
                        m.coeffs[1][i * k + j] = ring.constant(&C0::from_integer(v.into())).expect("integer");
                    }
                }
            }
        }
        m
    }

    pub(crate) fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub(crate) fn max_degree<R: CoefRing<E = E>>(&self, ring: &R) -> u32 {
        self.coeffs.iter().flatten().map(|v| ring.degree(v)).max().unwrap_or(0)
    }

    fn scalar_constant(&self) -> Option<&E> {
        self.scalar.then(|| &self.coeffs[0][0])
    }

    pub(crate) fn add<R: CoefRing<E = E>>(&self, ring: &R, o: &Self) -> Self {
        CoefMat {
            k: self.k,
            scalar: self.scalar && o.scalar,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.iter().zip(b).map(|(u, v)| ring.add(u, v)).collect()).collect(),
        }
    }

    pub(crate) fn neg<R: CoefRing<E = E>>(&self, ring: &R) -> Self {
        CoefMat { k: self.k, scalar: self.scalar, coeffs: self.coeffs.iter().map(|m| m.iter().map(|v| ring.neg(v)).collect()).collect() }
    }

    /// Adds the product of two coefficient matrices into `acc`; a known
    /// scalar factor short-cuts the matrix product.
    fn mul_into<R: CoefRing<E = E>>(ring: &R, k: usize, acc: &mut [E], a: &[E], b: &[E], sa: Option<&E>, sb: Option<&E>) {
        if let Some(s) = sa {
            if !ring.is_zero(s) {
                for idx in 0..k * k {
                    acc[idx] = ring.add(&acc[idx], &ring.mul(s, &b[idx]));
                }
            }
            return;
        }
        if let Some(s) = sb {
            if !ring.is_zero(s) {
                for idx in 0..k * k {
                    acc[idx] = ring.add(&acc[idx], &ring.mul(&a[idx], s));
                }
            }
            return;
        }
        for r in 0..k {
            for c in 0..k {
                let mut v = ring.zero();
                for t in 0..k {
                    let (u, w) = (&a[r * k + t], &b[t * k + c]);
                    if !ring.is_zero(u) && !ring.is_zero(w) {
                        v = ring.add(&v, &ring.mul(u, w));
                    }
                }
                acc[r * k + c] = ring.add(&acc[r * k + c], &v);
            }
        }
    }

    pub(crate) fn mul<R: CoefRing<E = E>>(&self, ring: &R, o: &Self) -> Self {
        let k = self.k;
        let n = self.order();
        let mut out = Self::zero(ring, k, n);
        for d in 0..=n {
            let mut acc = vec![ring.zero(); k * k];
            for j in 0..=d {
                let l = if j == 0 { self.scalar_constant() } else { None };
                let r = if d == j { o.scalar_constant() } else { None };
                Self::mul_into(ring, k, &mut acc, &self.coeffs[j], &o.coeffs[d - j], l, r);
            }
            out.coeffs[d] = acc;
        }
        out.scalar = self.scalar && o.scalar;
        out
    }

    /// Inverse of a matrix whose constant term is `c·Id`, given `c⁻¹`.
    pub(crate) fn inverse_scalar<R: CoefRing<E = E>>(&self, ring: &R, c_inv: &E) -> Self {
        debug_assert!(self.scalar);
        let k = self.k;
        let n = self.order();
        let mut out = Self::zero(ring, k, n);
        for i in 0..k {
            out.coeffs[0][i * k + i] = c_inv.clone();
        }
        for d in 1..=n {
            let mut acc = vec![ring.zero(); k * k];
            for j in 1..=d {
                let r = if d == j { Some(c_inv) } else { None };
                Self::mul_into(ring, k, &mut acc, &self.coeffs[j], &out.coeffs[d - j], None, r);
            }
            out.coeffs[d] = acc.iter().map(|v| ring.neg(&ring.mul(c_inv, v))).collect();
        }
        out
    }

    pub(crate) fn first_difference<R: CoefRing<E = E>>(&self, ring: &R, o: &Self) -> Option<(usize, usize, usize)> {
        for d in 0..=self.order() {
            for idx in 0..self.k * self.k {
                if !ring.equals(&self.coeffs[d][idx], &o.coeffs[d][idx]) {
                    return Some((d, idx / self.k, idx % self.k));
                }
            }
        }
        None
    }

    /// Coefficients as `[degree][row][column]`.
    pub(crate) fn to_nested(&self) -> Vec<Vec<Vec<E>>> {
        self.coeffs.iter().map(|m| m.chunks(self.k).map(|row| row.to_vec()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_comm;
    use crate::{CommRat, Rational};

    fn f(s: &str) -> Frac<Rational> {
        Frac::from_ratfn(&parse_comm(s).unwrap())
    }

    #[test]
    fn arithmetic_matches_reduced_functions() {
        let cases = ["1/(x+y)", "x/(x^2+1)", "(y-1)/(x*y+2)", "3", "x^2 - y"];
        for a in cases {
            for b in cases {
                let (fa, fb) = (parse_comm(a).unwrap(), parse_comm(b).unwrap());
                assert!(f(a).add(&f(b)).to_ratfn().equals(&(&fa + &fb)));
                assert!(f(a).mul(&f(b)).to_ratfn().equals(&(&fa * &fb)));
                assert_eq!(f(a).equals(&f(b)), fa.equals(&fb));
                let s = f(a).add(&f(b).neg());
                assert_eq!(s.is_zero(), fa.equals(&fb));
            }
        }
    }

    #[test]
    fn inverse_factor() {
        let r = parse_comm("(2*x + 4)/(y - 1)").unwrap();
        let i = Frac::inverse_of(&r).unwrap();
        assert!(i.to_ratfn().equals(&r.inv().unwrap()));
        assert!(i.mul(&f("(2*x + 4)/(y - 1)")).equals(&Frac::constant(Rational::from_integer(1.into()))));
        assert!(Frac::inverse_of(&CommRat::zero()).is_err());
    }

    #[test]
    fn unequal_denominators_compare_exactly() {
        // (x+1)/((x+y)(x-y)) versus the same value written over (x+y)²(x-y)
        let a = f("1/(x+y)").mul(&f("(x+1)/(x-y)"));
        let xy = parse_comm("x+y").unwrap().num().clone();
        let b = a.mul(&Frac { num: xy.clone(), den: vec![(xy, 1)] });
        assert_eq!(b.den.iter().map(|(_, m)| m).sum::<u32>(), 3);
        assert!(a.equals(&b));
        assert!(!a.equals(&f("1/(x+y)")));
    }
}
