use serde::Serialize;

use super::gl2::{embed_univariate, Gl2Rat};
use crate::commrat::{commutativize, jacobian_det};
use crate::error::{Error, Result};
use crate::ncexpr::{normalize, substitute, ExprStore, NcExpr, Normalizer};
use crate::repeq::{eq_nc, EqConfig, EqVerdict};
use crate::CommRat;

/// An endomorphism of the algebra, given by the images of `x` and `y`.
///
/// Composition follows juxtaposition: `act(f·g, e) = act(g, act(f, e))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NcAuto {
    pub img_x: NcExpr,
    pub img_y: NcExpr,
}

impl NcAuto {
    /// Builds a map after checking that the commutative shadows of the images
    /// have nonzero Jacobian.
    pub fn new(store: &ExprStore, img_x: NcExpr, img_y: NcExpr) -> Result<Self> {
        let fx = commutativize(store, img_x)?;
        let fy = commutativize(store, img_y)?;
        if jacobian_det(&fx, &fy).is_zero() {
            return Err(Error::DependentImages);
        }
        Ok(NcAuto { img_x: normalize(store, img_x)?, img_y: normalize(store, img_y)? })
    }

    pub fn identity(store: &ExprStore) -> Self {
        NcAuto { img_x: store.x(), img_y: store.y() }
    }

    /// Applies the map to an expression.
    pub fn act(&self, store: &ExprStore, e: NcExpr) -> Result<NcExpr> {
        substitute(store, e, self.img_x, self.img_y)
    }

    /// The product `self · g`: first `self`, then `g`.
    pub fn compose(&self, store: &ExprStore, g: &NcAuto) -> Result<NcAuto> {
        Ok(NcAuto { img_x: g.act(store, self.img_x)?, img_y: g.act(store, self.img_y)? })
    }

    /// The commutative shadow `(φ(img_x), φ(img_y))`.
    pub fn shadow(&self, store: &ExprStore) -> Result<(CommRat, CommRat)> {
        Ok((commutativize(store, self.img_x)?, commutativize(store, self.img_y)?))
    }
}

/// `t_a : (x, y) ↦ (x, (y·R + S)⁻¹ (y·P + Q))`.
pub fn t_auto(store: &ExprStore, a: &Gl2Rat) -> Result<NcAuto> {
    let n = Normalizer::new(store);
    let [p, q, r, s] = embed_entries(&n, a)?;
    let y = store.y();
    let yr = n.mul(y, r)?;
    let den = n.add(yr, s)?;
    let yp = n.mul(y, p)?;
    let num = n.add(yp, q)?;
    let den_inv = n.inv(den)?;
    let img_y = n.mul(den_inv, num)?;
    NcAuto::new(store, store.x(), img_y)
}

/// `p_a : (x, y) ↦ (x, (P·y + Q) (R·y + S)⁻¹)`.
pub fn p_auto(store: &ExprStore, a: &Gl2Rat) -> Result<NcAuto> {
    let n = Normalizer::new(store);
    let [p, q, r, s] = embed_entries(&n, a)?;
    let y = store.y();
    let ry = n.mul(r, y)?;
    let den = n.add(ry, s)?;
    let py = n.mul(p, y)?;
    let num = n.add(py, q)?;
    let den_inv = n.inv(den)?;
    let img_y = n.mul(num, den_inv)?;
    NcAuto::new(store, store.x(), img_y)
}

fn embed_entries(n: &Normalizer<'_>, a: &Gl2Rat) -> Result<[NcExpr; 4]> {
    Ok([
        embed_univariate(n, &a.p)?,
        embed_univariate(n, &a.q)?,
        embed_univariate(n, &a.r)?,
        embed_univariate(n, &a.s)?,
    ])
}

/// `τ : (x, y) ↦ (y, x)`.
pub fn tau_auto(store: &ExprStore) -> NcAuto {
    NcAuto { img_x: store.y(), img_y: store.x() }
}

/// Conjugation `(x, y) ↦ (r x r⁻¹, r y r⁻¹)`.
pub fn inner_auto(store: &ExprStore, r: NcExpr) -> Result<NcAuto> {
    let n = Normalizer::new(store);
    let r_inv = n.inv(r)?;
    let conj = |a: NcExpr| -> Result<NcExpr> {
        let ra = n.mul(r, a)?;
        n.mul(ra, r_inv)
    };
    let img_x = conj(store.x())?;
    let img_y = conj(store.y())?;
    NcAuto::new(store, img_x, img_y)
}

/// A generator of the noncommutative Cremona group.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Tau,
    T(Gl2Rat),
    P(Gl2Rat),
    Inner(NcExpr),
}

impl Generator {
    pub fn to_auto(&self, store: &ExprStore) -> Result<NcAuto> {
        match self {
            Generator::Tau => Ok(tau_auto(store)),
            Generator::T(a) => t_auto(store, a),
            Generator::P(a) => p_auto(store, a),
            Generator::Inner(r) => inner_auto(store, *r),
        }
    }

    /// The image of the generator in the classical Cremona group, as a pair
    /// of rational functions.
    pub fn classical(&self, store: &ExprStore) -> Result<(CommRat, CommRat)> {
        match self {
            Generator::Tau => Ok((CommRat::y(), CommRat::x())),
            Generator::T(a) | Generator::P(a) => {
                let y = CommRat::y();
                let num = &(&y * &a.p) + &a.q;
                let den = &(&y * &a.r) + &a.s;
                Ok((CommRat::x(), num.div(&den)?))
            }
            Generator::Inner(r) => {
                // Gate check only; conjugation is invisible after commutativization.
                if commutativize(store, *r)?.is_zero() {
                    return Err(Error::CommutatorInverse { expr: crate::syntax::print_nc(store, *r) });
                }
                Ok((CommRat::x(), CommRat::y()))
            }
        }
    }
}

/// A word in the generators, read left to right as a product.
pub type CremonaWord = Vec<Generator>;

/// Folds the word into a single map.
pub fn word_to_auto(store: &ExprStore, w: &[Generator]) -> Result<NcAuto> {
    let mut f = NcAuto::identity(store);
    for g in w {
        f = f.compose(store, &g.to_auto(store)?)?;
    }
    Ok(f)
}

/// Applies the generators of `w` to `e` one after another.
pub fn act_stepwise(store: &ExprStore, w: &[Generator], e: NcExpr) -> Result<NcExpr> {
    let mut e = e;
    for g in w {
        e = g.to_auto(store)?.act(store, e)?;
    }
    Ok(e)
}

/// The classical image of a word: the composite of the generators' classical
/// images under the same juxtaposition convention.
pub fn classical_word(store: &ExprStore, w: &[Generator]) -> Result<(CommRat, CommRat)> {
    let mut acc = (CommRat::x(), CommRat::y());
    for g in w {
        let (gx, gy) = g.classical(store)?;
        acc = (acc.0.compose(&gx, &gy)?.reduce(), acc.1.compose(&gx, &gy)?.reduce());
    }
    Ok(acc)
}

/// Verdicts for `f.img_x ≟ r x r⁻¹` and `f.img_y ≟ r y r⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerCheck {
    pub x: EqVerdict,
    pub y: EqVerdict,
}

impl InnerCheck {
    pub fn passed(&self) -> bool {
        !self.x.is_distinct() && !self.y.is_distinct()
    }
}

/// Tests whether `f` is conjugation by `r`.
pub fn is_inner_with(store: &ExprStore, f: &NcAuto, r: NcExpr, cfg: &EqConfig) -> Result<InnerCheck> {
    let c = inner_auto(store, r)?;
    Ok(InnerCheck { x: eq_nc(store, f.img_x, c.img_x, cfg)?, y: eq_nc(store, f.img_y, c.img_y, cfg)? })
}

/// Compares two maps image by image.
pub fn eq_auto(store: &ExprStore, f: &NcAuto, g: &NcAuto, cfg: &EqConfig) -> Result<InnerCheck> {
    Ok(InnerCheck { x: eq_nc(store, f.img_x, g.img_x, cfg)?, y: eq_nc(store, f.img_y, g.img_y, cfg)? })
}
