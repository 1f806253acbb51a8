//! Exact arithmetic in `Q(x, y)` and the commutativization map.

mod gcd;
mod poly;
mod ratfn;

pub use gcd::gcd;
pub use poly::{Mono, Poly2};
pub use ratfn::RatFn;

use crate::error::{Error, Result};
use crate::ncexpr::{ExprStore, NcExpr, Node};
use crate::scalar::Scalar;
use crate::CommRat;

/// Image of `e` under the map sending `x, y` to commuting variables.
///
/// Results are reduced and memoised in the store, so the inversion gate can
/// call this on every `inv` without recomputing shared subterms.
pub fn commutativize(store: &ExprStore, e: NcExpr) -> Result<CommRat> {
    if let Some(v) = store.phi_cached(e) {
        return Ok(v);
    }
    // explicit post-order walk: products of long words nest deeply
    let mut stack = vec![(e, false)];
    while let Some((n, expanded)) = stack.pop() {
        if store.phi_cached(n).is_some() {
            continue;
        }
        let node = store.node(n);
        if !expanded {
            stack.push((n, true));
            for c in node.children() {
                if store.phi_cached(c).is_none() {
                    stack.push((c, false));
                }
            }
            continue;
        }
        let get = |c: NcExpr| store.phi_cached(c).expect("children evaluated first");
        let v = match node {
            Node::Const(c) => CommRat::constant(c),
            Node::X => CommRat::x(),
            Node::Y => CommRat::y(),
            Node::Add(a, b) => get(a).add_reduced(&get(b)),
            Node::Neg(a) => -&get(a),
            Node::Mul(a, b) => get(a).mul_reduced(&get(b)),
            Node::Inv(a) => get(a).inv().map_err(|_| Error::InternalGateViolation)?.normalize_denominator(),
        };
        store.phi_insert(n, v);
    }
    Ok(store.phi_cached(e).expect("root evaluated"))
}

/// `df/dx * dg/dy - df/dy * dg/dx`.
pub fn jacobian_det<C: Scalar>(f: &RatFn<C>, g: &RatFn<C>) -> RatFn<C> {
    let a = &f.derivative_x() * &g.derivative_y();
    let b = &f.derivative_y() * &g.derivative_x();
    (&a - &b).reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn commutator_maps_to_zero() {
        let s = ExprStore::new();
        let xy = s.mul(s.x(), s.y()).unwrap();
        let yx = s.mul(s.y(), s.x()).unwrap();
        let c = s.sub(xy, yx).unwrap();
        assert!(commutativize(&s, c).unwrap().is_zero());
    }

    #[test]
    fn inverse_maps_to_reciprocal() {
        let s = ExprStore::new();
        let x1 = s.add(s.x(), s.one()).unwrap();
        let e = s.mul(s.inv(x1).unwrap(), s.y()).unwrap();
        let expected = CommRat::new(Poly::y(), Poly::from_terms([(1, 0, q(1)), (0, 0, q(1))])).unwrap();
        assert!(commutativize(&s, e).unwrap().equals(&expected));
    }

    #[test]
    fn jacobian_examples() {
        assert!(jacobian_det(&CommRat::x(), &CommRat::y()).equals(&CommRat::one()));
        assert!(jacobian_det(&CommRat::x(), &CommRat::x()).is_zero());
        // (-1/x^2)(-1/y^2) by hand
        let j = jacobian_det(&CommRat::x().inv().unwrap(), &CommRat::y().inv().unwrap());
        let expected = CommRat::new(Poly::one(), Poly::from_terms([(2, 2, q(1))])).unwrap();
        assert!(j.equals(&expected));
    }

    #[test]
    fn jacobian_antisymmetric() {
        let f = CommRat::new(Poly::from_terms([(2, 1, q(1)), (0, 0, q(3))]), Poly::from_terms([(0, 1, q(1)), (0, 0, q(1))])).unwrap();
        let g = CommRat::from_poly(Poly::from_terms([(1, 2, q(-2)), (1, 0, q(1))]));
        assert!(jacobian_det(&f, &g).equals(&-&jacobian_det(&g, &f)));
    }
}
