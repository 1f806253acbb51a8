use std::collections::HashMap;

use num_traits::{One, Zero};

use super::store::{ExprStore, NcExpr, Node};
use crate::commrat::{commutativize, jacobian_det};
use crate::error::{Error, Result};
use crate::Rational;

/// Builder applying the local rewrite set while constructing nodes.
///
/// Rules: constant folding, neutral `0` and `1`, `e + (-e) -> 0`,
/// `e * inv(e) -> 1`, negation and scalar factors floated to the front of
/// products, `inv(inv(e)) -> e`, `inv(c) -> 1/c`. Products are never reordered
/// except for moving scalars, which are central.
pub struct Normalizer<'s> {
    store: &'s ExprStore,
    memo: HashMap<NcExpr, NcExpr>,
}

impl<'s> Normalizer<'s> {
    pub fn new(store: &'s ExprStore) -> Self {
        Normalizer { store, memo: HashMap::new() }
    }

    pub fn store(&self) -> &'s ExprStore {
        self.store
    }

    fn as_const(&self, e: NcExpr) -> Option<Rational> {
        match self.store.node(e) {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn constant(&self, c: Rational) -> Result<NcExpr> {
        self.store.constant(c)
    }

    pub fn add(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        let s = self.store;
        match (self.as_const(a), self.as_const(b)) {
            (Some(ca), _) if ca.is_zero() => return Ok(b),
            (_, Some(cb)) if cb.is_zero() => return Ok(a),
            (Some(ca), Some(cb)) => return s.constant(ca + cb),
            _ => {}
        }
        if s.node(b) == Node::Neg(a) || s.node(a) == Node::Neg(b) {
            return Ok(s.zero());
        }
        s.add(a, b)
    }

    pub fn neg(&self, a: NcExpr) -> Result<NcExpr> {
        let s = self.store;
        match s.node(a) {
            Node::Const(c) => s.constant(-c),
            Node::Neg(b) => Ok(b),
            Node::Mul(c, b) => match self.as_const(c) {
                Some(c) => {
                    let nc = s.constant(-c)?;
                    self.mul(nc, b)
                }
                None => s.neg(a),
            },
            _ => s.neg(a),
        }
    }

    pub fn sub(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        let s = self.store;
        let ca = self.as_const(a);
        let cb = self.as_const(b);
        match (&ca, &cb) {
            (Some(c), _) if c.is_zero() => return Ok(s.zero()),
            (_, Some(c)) if c.is_zero() => return Ok(s.zero()),
            (Some(c), _) if c.is_one() => return Ok(b),
            (_, Some(c)) if c.is_one() => return Ok(a),
            (Some(x), Some(y)) => return s.constant(x * y),
            (Some(c), _) if *c == -Rational::one() => return self.neg(b),
            (_, Some(c)) if *c == -Rational::one() => return self.neg(a),
            _ => {}
        }
        let na = s.node(a);
        let nb = s.node(b);
        if let Node::Neg(a1) = na {
            let m = self.mul(a1, b)?;
            return self.neg(m);
        }
        if let Node::Neg(b1) = nb {
            let m = self.mul(a, b1)?;
            return self.neg(m);
        }
        if cb.is_some() {
            return self.mul(b, a);
        }
        if let Some(c) = &ca {
            if let Node::Mul(d, b1) = nb {
                if let Some(d) = self.as_const(d) {
                    let cd = s.constant(c * d)?;
                    return self.mul(cd, b1);
                }
            }
        } else {
            if let Node::Mul(c, a1) = na {
                if self.as_const(c).is_some() {
                    let m = self.mul(a1, b)?;
                    return self.mul(c, m);
                }
            }
            if let Node::Mul(c, b1) = nb {
                if self.as_const(c).is_some() {
                    let m = self.mul(a, b1)?;
                    return self.mul(c, m);
                }
            }
        }
        if nb == Node::Inv(a) || na == Node::Inv(b) {
            return Ok(s.one());
        }
        s.mul(a, b)
    }

    pub fn inv(&self, a: NcExpr) -> Result<NcExpr> {
        let s = self.store;
        match s.node(a) {
            Node::Const(c) => {
                if c.is_zero() {
                    return Err(Error::CommutatorInverse { expr: "0".into() });
                }
                s.constant(c.recip())
            }
            Node::Inv(b) => Ok(b),
            Node::Neg(b) => {
                let i = self.inv(b)?;
                self.neg(i)
            }
            Node::Mul(c, b) => match self.as_const(c) {
                Some(c) => {
                    let ic = s.constant(c.recip())?;
                    let ib = self.inv(b)?;
                    self.mul(ic, ib)
                }
                None => s.inv(a),
            },
            _ => s.inv(a),
        }
    }

    /// Normal form of `e` under the rewrite set.
    pub fn normalize(&mut self, e: NcExpr) -> Result<NcExpr> {
        if let Some(&r) = self.memo.get(&e) {
            return Ok(r);
        }
        let r = match self.store.node(e) {
            Node::Const(_) | Node::X | Node::Y => e,
            Node::Add(a, b) => {
                let (a, b) = (self.normalize(a)?, self.normalize(b)?);
                self.add(a, b)?
            }
            Node::Neg(a) => {
                let a = self.normalize(a)?;
                self.neg(a)?
            }
            Node::Mul(a, b) => {
                let (a, b) = (self.normalize(a)?, self.normalize(b)?);
                self.mul(a, b)?
            }
            Node::Inv(a) => {
                let a = self.normalize(a)?;
                self.inv(a)?
            }
        };
        self.memo.insert(e, r);
        Ok(r)
    }
}

/// Applies the local rewrite set bottom-up. The result is equal to `e` in the
/// algebra and has the same commutativization.
pub fn normalize(store: &ExprStore, e: NcExpr) -> Result<NcExpr> {
    Normalizer::new(store).normalize(e)
}

/// The reversal anti-automorphism: fixes `x`, `y` and scalars and reverses
/// every product.
pub fn reverse(store: &ExprStore, e: NcExpr) -> Result<NcExpr> {
    fn go(s: &ExprStore, e: NcExpr, memo: &mut HashMap<NcExpr, NcExpr>) -> Result<NcExpr> {
        if let Some(&r) = memo.get(&e) {
            return Ok(r);
        }
        let r = match s.node(e) {
            Node::Const(_) | Node::X | Node::Y => e,
            Node::Add(a, b) => {
                let (a, b) = (go(s, a, memo)?, go(s, b, memo)?);
                s.add(a, b)?
            }
            Node::Neg(a) => {
                let a = go(s, a, memo)?;
                s.neg(a)?
            }
            Node::Mul(a, b) => {
                let (a, b) = (go(s, a, memo)?, go(s, b, memo)?);
                s.mul(b, a)?
            }
            Node::Inv(a) => {
                let a = go(s, a, memo)?;
                s.inv(a).map_err(|_| Error::InternalGateViolation)?
            }
        };
        memo.insert(e, r);
        Ok(r)
    }
    go(store, e, &mut HashMap::new())
}

/// Replaces `x` and `y` by the given images and normalizes the result.
///
/// The images must be algebraically independent in the commutative shadow,
/// decided by a nonzero Jacobian determinant.
pub fn substitute(store: &ExprStore, e: NcExpr, img_x: NcExpr, img_y: NcExpr) -> Result<NcExpr> {
    let fx = commutativize(store, img_x)?;
    let fy = commutativize(store, img_y)?;
    if jacobian_det(&fx, &fy).is_zero() {
        return Err(Error::DependentImages);
    }
    let mut norm = Normalizer::new(store);
    let img_x = norm.normalize(img_x)?;
    let img_y = norm.normalize(img_y)?;
    let mut memo: HashMap<NcExpr, NcExpr> = HashMap::new();
    subst_rec(&norm, e, img_x, img_y, &mut memo)
}

fn subst_rec(
    norm: &Normalizer<'_>,
    e: NcExpr,
    img_x: NcExpr,
    img_y: NcExpr,
    memo: &mut HashMap<NcExpr, NcExpr>,
) -> Result<NcExpr> {
    if let Some(&r) = memo.get(&e) {
        return Ok(r);
    }
    let r = match norm.store.node(e) {
        Node::Const(_) => e,
        Node::X => img_x,
        Node::Y => img_y,
        Node::Add(a, b) => {
            let a = subst_rec(norm, a, img_x, img_y, memo)?;
            let b = subst_rec(norm, b, img_x, img_y, memo)?;
            norm.add(a, b)?
        }
        Node::Neg(a) => {
            let a = subst_rec(norm, a, img_x, img_y, memo)?;
            norm.neg(a)?
        }
        Node::Mul(a, b) => {
            let a = subst_rec(norm, a, img_x, img_y, memo)?;
            let b = subst_rec(norm, b, img_x, img_y, memo)?;
            norm.mul(a, b)?
        }
        Node::Inv(a) => {
            let a = subst_rec(norm, a, img_x, img_y, memo)?;
            norm.inv(a).map_err(|err| match err {
                Error::CommutatorInverse { .. } => Error::InternalGateViolation,
                other => other,
            })?
        }
    };
    memo.insert(e, r);
    Ok(r)
}
