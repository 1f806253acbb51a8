use std::fmt;

use crate::error::{Error, Result};
use crate::ncexpr::{NcExpr, Normalizer};
use crate::{CommRat, Poly, Rational};

/// Invertible `2 × 2` matrix `[[P, Q], [R, S]]` over `Q(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Rat {
    pub p: CommRat,
    pub q: CommRat,
    pub r: CommRat,
    pub s: CommRat,
}

impl Gl2Rat {
    pub fn new(p: CommRat, q: CommRat, r: CommRat, s: CommRat) -> Result<Self> {
        let entries = [&p, &q, &r, &s];
        if entries.iter().any(|e| !e.is_univariate_x()) {
            return Err(Error::Dimension("GL(2, Q(x)) entries may not depend on y".into()));
        }
        let m = Gl2Rat { p: p.reduce(), q: q.reduce(), r: r.reduce(), s: s.reduce() };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let q = |v: i64| CommRat::constant(Rational::from_integer(v.into()));
        Self::new(q(a), q(b), q(c), q(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("identity is invertible")
    }

    /// `d(x) · Id`.
    pub fn scalar(d: CommRat) -> Result<Self> {
        Self::new(d.clone(), CommRat::zero(), CommRat::zero(), d)
    }

    /// The matrix `[[0, x], [1, 0]]`.
    pub fn e_matrix() -> Self {
        Self::new(CommRat::zero(), CommRat::x(), CommRat::one(), CommRat::zero()).expect("det = -x")
    }

    pub fn det(&self) -> CommRat {
        (&(&self.p * &self.s) - &(&self.q * &self.r)).reduce()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, o: &Gl2Rat) -> Gl2Rat {
        let f = |a: &CommRat, b: &CommRat, c: &CommRat, d: &CommRat| (&(a * b) + &(c * d)).reduce();
        Gl2Rat {
            p: f(&self.p, &o.p, &self.q, &o.r),
            q: f(&self.p, &o.q, &self.q, &o.s),
            r: f(&self.r, &o.p, &self.s, &o.r),
            s: f(&self.r, &o.q, &self.s, &o.s),
        }
    }

    /// Inverse matrix.
    pub fn inverse(&self) -> Gl2Rat {
        let di = self.det().inv().expect("invertible");
        let sc = |v: &CommRat| (v * &di).reduce();
        Gl2Rat { p: sc(&self.s), q: sc(&-&self.q), r: sc(&-&self.r), s: sc(&self.p) }
    }
}

impl fmt::Display for Gl2Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.p, self.q, self.r, self.s)
    }
}

/// Embeds a univariate rational function `n(x)/d(x)` as `inv(d(x)) * n(x)`.
///
/// Expressions in `x` alone commute with each other, so the placement of the
/// inverse is immaterial.
pub fn embed_univariate(norm: &Normalizer<'_>, f: &CommRat) -> Result<NcExpr> {
    let f = f.reduce();
    let num = embed_poly(norm, f.num())?;
    if f.den().is_one() {
        return Ok(num);
    }
    let den = embed_poly(norm, f.den())?;
    let dinv = norm.inv(den)?;
    norm.mul(dinv, num)
}

fn embed_poly(norm: &Normalizer<'_>, p: &Poly) -> Result<NcExpr> {
    let store = norm.store();
    let mut acc = store.zero();
    for (m, c) in p.terms().rev() {
        debug_assert_eq!(m.dy, 0);
        let power = store.pow(store.x(), m.dx)?;
        let c = norm.constant(c.clone())?;
        let term = norm.mul(c, power)?;
        acc = norm.add(acc, term)?;
    }
    Ok(acc)
}
