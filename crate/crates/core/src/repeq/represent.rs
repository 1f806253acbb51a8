use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::frac::{CoefMat, CoefRing, Frac, Symbolic};
use crate::commrat::commutativize;
use crate::error::{Error, Result};
use crate::ncexpr::{ExprStore, NcExpr, Node};
use crate::SeriesMatrix;

/// Parameters of one matrix-series representation:
/// `x ↦ x·Id + ε·S`, `y ↦ y·Id + ε·T`, computed modulo `ε^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEnv {
    pub k: usize,
    #[serde(rename = "N")]
    pub order: usize,
    pub seed: u64,
    #[serde(rename = "S")]
    pub s: Vec<Vec<i64>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<i64>>,
}

impl RepEnv {
    pub fn new(k: usize, order: usize, s: Vec<Vec<i64>>, t: Vec<Vec<i64>>) -> Result<Self> {
        let env = RepEnv { k, order, seed: 0, s, t };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.order < 1 {
            return Err(Error::Dimension("representation needs k >= 1 and N >= 1".into()));
        }
        let square = |m: &Vec<Vec<i64>>| m.len() == self.k && m.iter().all(|r| r.len() == self.k);
        if !square(&self.s) || !square(&self.t) {
            return Err(Error::Dimension(format!("S and T must be {k} x {k}", k = self.k)));
        }
        Ok(())
    }

    /// Environment with `S`, `T` drawn uniformly from `[-bound, bound]`,
    /// deterministically from `seed`.
    pub fn random(k: usize, order: usize, bound: i64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> Vec<Vec<i64>> {
            (0..k).map(|_| (0..k).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
        };
        let s = draw();
        let t = draw();
        RepEnv { k, order, seed, s, t }
    }

    /// Evaluation point number `attempt` for the specialised comparison:
    /// coordinates in `F_p`, `p = 2^61 - 1`, derived from the seed.
    pub fn point(&self, attempt: usize) -> (u64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(super::equality::trial_seed(!self.seed, usize::MAX, attempt));
        let mut draw = || rng.gen_range(0..crate::modp::PRIME);
        (draw(), draw())
    }

    /// Elementary matrix `E_{ij}` (zero-based indices).
    pub fn elementary(k: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; k]; k];
        m[i][j] = 1;
        m
    }
}

/// Evaluates expressions in one representation over a coefficient ring,
/// memoising shared subterms.
pub(crate) struct Evaluator<'s, R: CoefRing> {
    store: &'s ExprStore,
    env: RepEnv,
    ring: R,
    memo: HashMap<NcExpr, CoefMat<R::E>>,
    max_degree: usize,
}

impl<'s, R: CoefRing> Evaluator<'s, R> {
    pub(crate) fn new(store: &'s ExprStore, env: RepEnv, ring: R, max_degree: usize) -> Self {
        Evaluator { store, env, ring, memo: HashMap::new(), max_degree }
    }

    pub(crate) fn ring(&self) -> &R {
        &self.ring
    }

    /// Fails with [`Error::DivisionByZero`] when an inverted subterm vanishes
    /// in the coefficient ring (only possible when specialising at a point).
    pub(crate) fn eval(&mut self, e: NcExpr) -> Result<CoefMat<R::E>> {
        if let Some(m) = self.memo.get(&e) {
            return Ok(m.clone());
        }
        let mut stack = vec![(e, false)];
        while let Some((n, expanded)) = stack.pop() {
            if self.memo.contains_key(&n) {
                continue;
            }
            let node = self.store.node(n);
            if !expanded {
                stack.push((n, true));
                for c in node.children() {
                    if !self.memo.contains_key(&c) {
                        stack.push((c, false));
                    }
                }
                continue;
            }
            let (k, order, ring) = (self.env.k, self.env.order, &self.ring);
            let m = match node {
                Node::Const(c) => CoefMat::generator(ring, ring.constant(&c)?, None, k, order),
                Node::X => CoefMat::generator(ring, ring.x(), Some(&self.env.s), k, order),
                Node::Y => CoefMat::generator(ring, ring.y(), Some(&self.env.t), k, order),
                Node::Add(a, b) => self.memo[&a].add(ring, &self.memo[&b]),
                Node::Neg(a) => self.memo[&a].neg(ring),
                Node::Mul(a, b) => self.memo[&a].mul(ring, &self.memo[&b]),
                Node::Inv(a) => {
                    // the constant term of any representation is φ(a)·Id
                    let phi = commutativize(self.store, a)?;
                    if phi.is_zero() {
                        return Err(Error::InternalGateViolation);
                    }
                    let c_inv = ring.inverse_of(&phi)?;
                    self.memo[&a].inverse_scalar(ring, &c_inv)
                }
            };
            if self.max_degree != usize::MAX && m.max_degree(ring) as usize > self.max_degree {
                return Err(Error::BudgetExceeded { what: "coefficient degree", limit: self.max_degree });
            }
            self.memo.insert(n, m);
        }
        Ok(self.memo[&e].clone())
    }
}

/// Exact evaluation in one representation, with coefficients in `Q(x, y)`.
pub struct Representer<'s> {
    inner: Evaluator<'s, Symbolic>,
}

impl<'s> Representer<'s> {
    pub fn new(store: &'s ExprStore, env: RepEnv) -> Self {
        Self::with_degree_budget(store, env, usize::MAX)
    }

    /// Fails with [`Error::BudgetExceeded`] once any coefficient numerator
    /// exceeds `max_degree` in total degree.
    pub fn with_degree_budget(store: &'s ExprStore, env: RepEnv, max_degree: usize) -> Self {
        Representer { inner: Evaluator::new(store, env, Symbolic, max_degree) }
    }

    pub fn env(&self) -> &RepEnv {
        &self.inner.env
    }

    /// The representation of `e` with every coefficient reduced.
    pub fn represent(&mut self, e: NcExpr) -> Result<SeriesMatrix> {
        let m = self.inner.eval(e)?;
        let coeffs = m.to_nested().into_iter().map(|c| c.into_iter().map(|r| r.iter().map(Frac::to_ratfn).collect()).collect()).collect();
        SeriesMatrix::from_coeffs(coeffs)
    }
}

/// Image of `e` under the representation described by `env`.
pub fn represent(store: &ExprStore, e: NcExpr, env: &RepEnv) -> Result<SeriesMatrix> {
    Representer::new(store, env.clone()).represent(e)
}
