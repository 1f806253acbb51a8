//! Seeded samplers for expressions, matrices and group elements.
//!
//! Every sampler draws from a [`ChaCha8Rng`], so a fixed seed reproduces the
//! same objects on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commrat::Mono;
use crate::cremona::Gl2Rat;
use crate::error::Result;
use crate::ncexpr::{ExprStore, NcExpr};
use crate::vmatrix::{VEntry, VMatrix};
use crate::{CommRat, Poly, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }

    /// Random expression with roughly `size` internal nodes. Inversions are
    /// attempted only where the gate admits them; otherwise the node becomes
    /// a product. Built without normalization so printing is faithful.
    pub fn expr(&mut self, store: &ExprStore, size: usize) -> Result<NcExpr> {
        if size == 0 {
            return Ok(match self.rng.gen_range(0..5) {
                0 | 1 => store.x(),
                2 | 3 => store.y(),
                _ => {
                    let c = self.int(-3, 3);
                    if self.rng.gen_bool(0.2) {
                        let d = self.int(2, 5);
                        store.constant(Rational::new(c.into(), d.into()))?
                    } else {
                        store.int(c)?
                    }
                }
            });
        }
        let op = self.rng.gen_range(0..9);
        if op < 5 {
            let left = self.rng.gen_range(0..size);
            let a = self.expr(store, left)?;
            let b = self.expr(store, size - 1 - left)?;
            return match op {
                0 | 1 => store.add(a, b),
                2 => store.sub(a, b),
                _ => store.mul(a, b),
            };
        }
        let a = self.expr(store, size - 1)?;
        match op {
            5 => store.neg(a),
            _ => match store.inv(a) {
                Ok(e) => Ok(e),
                Err(_) => store.mul(a, store.x()),
            },
        }
    }

    /// `(xy − yx)·e′` or `e′·(xy − yx)` for a random gated `e′`.
    pub fn commutator_expr(&mut self, store: &ExprStore, size: usize) -> Result<NcExpr> {
        let xy = store.mul(store.x(), store.y())?;
        let yx = store.mul(store.y(), store.x())?;
        let c = store.sub(xy, yx)?;
        let e = self.expr(store, size)?;
        if self.rng.gen_bool(0.5) {
            store.mul(c, e)
        } else {
            store.mul(e, c)
        }
    }

    /// Random linear combination of words in `x`, `y`, together with its
    /// commutative expansion computed by counting letters.
    pub fn monomial_sum(&mut self, store: &ExprStore, terms: usize, max_len: usize) -> Result<(NcExpr, Poly)> {
        let mut shadow = Poly::zero();
        let mut acc = Vec::with_capacity(terms);
        for _ in 0..terms {
            let c = self.nonzero_int(3);
            let len = self.rng.gen_range(0..=max_len);
            let mut word = vec![store.int(c)?];
            let (mut dx, mut dy) = (0, 0);
            for _ in 0..len {
                if self.rng.gen_bool(0.5) {
                    word.push(store.x());
                    dx += 1;
                } else {
                    word.push(store.y());
                    dy += 1;
                }
            }
            shadow.add_term(Mono::new(dx, dy), Rational::from_integer(c.into()));
            acc.push(store.product(word)?);
        }
        Ok((store.sum(acc)?, shadow))
    }

    fn poly_x(&mut self, degree: u32, bound: i64) -> Poly {
        Poly::from_terms((0..=degree).map(|d| (d, 0, Rational::from_integer(self.int(-bound, bound).into()))))
    }

    /// Rational function of `x` with numerator degree at most `degree`; the
    /// denominator is `1` or a monic linear polynomial.
    pub fn ratfn_x(&mut self, degree: u32, bound: i64) -> CommRat {
        let num = self.poly_x(degree, bound);
        if self.rng.gen_bool(0.75) {
            return CommRat::from_poly(num);
        }
        let den = Poly::from_terms([(1, 0, Rational::from_integer(1.into())), (0, 0, Rational::from_integer(self.int(-bound, bound).into()))]);
        CommRat::new(num, den).expect("monic denominator").reduce()
    }

    /// Invertible matrix over `Q(x)` with entries of degree at most `degree`.
    pub fn gl2_x(&mut self, degree: u32, bound: i64) -> Gl2Rat {
        loop {
            let e: Vec<CommRat> = (0..4).map(|_| self.ratfn_x(degree, bound)).collect();
            if let Ok(m) = Gl2Rat::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
                return m;
            }
        }
    }

    /// Invertible matrix with integer entries in `[-bound, bound]`.
    pub fn gl2_const(&mut self, bound: i64) -> Gl2Rat {
        loop {
            let e: Vec<i64> = (0..4).map(|_| self.int(-bound, bound)).collect();
            if let Ok(m) = Gl2Rat::from_ints(e[0], e[1], e[2], e[3]) {
                return m;
            }
        }
    }

    /// Nonconstant polynomial `d(x)` of degree one or two.
    pub fn scalar_x(&mut self, bound: i64) -> CommRat {
        let degree = self.rng.gen_range(1..=2);
        let mut p = self.poly_x(degree - 1, bound);
        p.add_term(Mono::new(degree, 0), Rational::from_integer(self.nonzero_int(bound).into()));
        CommRat::from_poly(p)
    }

    /// `k × k` matrix with entries `c + a·x + b·y`, coefficients in
    /// `[-bound, bound]`.
    pub fn vmatrix(&mut self, k: usize, bound: i64) -> VMatrix {
        let rows = (0..k)
            .map(|_| (0..k).map(|_| VEntry::from_ints(self.int(-bound, bound), self.int(-bound, bound), self.int(-bound, bound))).collect())
            .collect();
        VMatrix::new(rows).expect("square")
    }
}
