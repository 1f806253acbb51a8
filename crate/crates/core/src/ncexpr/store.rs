use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{CommRat, Rational};

/// Handle to an interned expression node.
///
/// Handles are only meaningful together with the [`ExprStore`] that created
/// them. Structurally identical expressions built in the same store always get
/// the same handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcExpr(u32);

impl NcExpr {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One node of the expression DAG.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Const(Rational),
    X,
    Y,
    /// Operands are stored in ascending handle order.
    Add(NcExpr, NcExpr),
    Neg(NcExpr),
    /// Operands keep their order; multiplication is not commutative.
    Mul(NcExpr, NcExpr),
    Inv(NcExpr),
}

impl Node {
    pub fn children(&self) -> impl Iterator<Item = NcExpr> {
        let (a, b) = match *self {
            Node::Const(_) | Node::X | Node::Y => (None, None),
            Node::Add(a, b) | Node::Mul(a, b) => (Some(a), Some(b)),
            Node::Neg(a) | Node::Inv(a) => (Some(a), None),
        };
        a.into_iter().chain(b)
    }
}

#[derive(Default)]
struct Table {
    nodes: Vec<Node>,
    index: HashMap<Node, NcExpr>,
}

/// Append-only interning store for [`Node`]s.
///
/// Construction takes a write lock; lookups take a read lock, so queries can
/// run concurrently with each other.
pub struct ExprStore {
    table: RwLock<Table>,
    phi: RwLock<HashMap<NcExpr, CommRat>>,
    budget: usize,
}

pub const DEFAULT_NODE_BUDGET: usize = 1 << 24;

impl Default for ExprStore {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for ExprStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExprStore").field("nodes", &self.len()).field("budget", &self.budget).finish()
    }
}

impl ExprStore {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_NODE_BUDGET)
    }

    /// Creates a store that refuses to hold more than `budget` nodes.
    pub fn with_budget(budget: usize) -> Self {
        let store = ExprStore {
            table: RwLock::new(Table::default()),
            phi: RwLock::new(HashMap::new()),
            budget: budget.max(4),
        };
        // fixed handles for the atoms keep printing order stable across runs
        for node in [
            Node::Const(Rational::zero()),
            Node::Const(Rational::one()),
            Node::X,
            Node::Y,
        ] {
            store.intern_raw(node).expect("budget admits the atoms");
        }
        store
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, e: NcExpr) -> Node {
        self.table.read().unwrap().nodes[e.index()].clone()
    }

    pub fn contains(&self, e: NcExpr) -> bool {
        e.index() < self.len()
    }

    /// Interns `node` without the inversion gate. Add operands are sorted.
    pub(crate) fn intern_raw(&self, node: Node) -> Result<NcExpr> {
        let node = match node {
            Node::Add(a, b) if b < a => Node::Add(b, a),
            n => n,
        };
        {
            let table = self.table.read().unwrap();
            if let Some(&id) = table.index.get(&node) {
                return Ok(id);
            }
            for c in node.children() {
                assert!(c.index() < table.nodes.len(), "operand from a different store");
            }
        }
        let mut table = self.table.write().unwrap();
        if let Some(&id) = table.index.get(&node) {
            return Ok(id);
        }
        if table.nodes.len() >= self.budget {
            return Err(Error::BudgetExceeded { what: "expression nodes", limit: self.budget });
        }
        let id = NcExpr(table.nodes.len() as u32);
        table.nodes.push(node.clone());
        table.index.insert(node, id);
        Ok(id)
    }

    /// Interns a node. `Inv` nodes pass through the inversion gate.
    pub fn build(&self, node: Node) -> Result<NcExpr> {
        match node {
            Node::Inv(a) => self.inv(a),
            n => self.intern_raw(n),
        }
    }

    pub fn constant(&self, c: Rational) -> Result<NcExpr> {
        self.intern_raw(Node::Const(c))
    }

    pub fn int(&self, n: i64) -> Result<NcExpr> {
        self.constant(Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> NcExpr {
        NcExpr(0)
    }

    pub fn one(&self) -> NcExpr {
        NcExpr(1)
    }

    pub fn x(&self) -> NcExpr {
        NcExpr(2)
    }

    pub fn y(&self) -> NcExpr {
        NcExpr(3)
    }

    pub fn add(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        self.intern_raw(Node::Add(a, b))
    }

    pub fn neg(&self, a: NcExpr) -> Result<NcExpr> {
        self.intern_raw(Node::Neg(a))
    }

    pub fn sub(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: NcExpr, b: NcExpr) -> Result<NcExpr> {
        self.intern_raw(Node::Mul(a, b))
    }

    /// Left-to-right product; the empty product is one.
    pub fn product<I: IntoIterator<Item = NcExpr>>(&self, factors: I) -> Result<NcExpr> {
        let mut it = factors.into_iter();
        let Some(mut acc) = it.next() else {
            return Ok(self.one());
        };
        for f in it {
            acc = self.mul(acc, f)?;
        }
        Ok(acc)
    }

    /// Left-associated sum; the empty sum is zero.
    pub fn sum<I: IntoIterator<Item = NcExpr>>(&self, terms: I) -> Result<NcExpr> {
        let mut it = terms.into_iter();
        let Some(mut acc) = it.next() else {
            return Ok(self.zero());
        };
        for t in it {
            acc = self.add(acc, t)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: NcExpr, n: u32) -> Result<NcExpr> {
        self.product(std::iter::repeat_n(a, n as usize))
    }

    /// Guarded inversion: fails with [`Error::CommutatorInverse`] when the
    /// commutativization of `a` vanishes.
    pub fn inv(&self, a: NcExpr) -> Result<NcExpr> {
        let phi = crate::commrat::commutativize(self, a)?;
        if phi.is_zero() {
            return Err(Error::CommutatorInverse { expr: crate::syntax::print_nc(self, a) });
        }
        self.intern_raw(Node::Inv(a))
    }

    pub(crate) fn phi_cached(&self, e: NcExpr) -> Option<CommRat> {
        self.phi.read().unwrap().get(&e).cloned()
    }

    pub(crate) fn phi_insert(&self, e: NcExpr, v: CommRat) {
        self.phi.write().unwrap().insert(e, v);
    }

    /// Number of nodes reachable from `e` (DAG size).
    pub fn dag_size(&self, e: NcExpr) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![e];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.node(n).children());
            }
        }
        seen.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_is_not_reordered() {
        let s = ExprStore::new();
        let xy = s.mul(s.x(), s.y()).unwrap();
        let yx = s.mul(s.y(), s.x()).unwrap();
        assert_ne!(xy, yx);
    }

    #[test]
    fn add_operands_are_canonical() {
        let s = ExprStore::new();
        assert_eq!(s.add(s.x(), s.y()).unwrap(), s.add(s.y(), s.x()).unwrap());
    }

    #[test]
    fn interning_shares_nodes() {
        let s = ExprStore::new();
        let a = s.mul(s.x(), s.y()).unwrap();
        let n = s.len();
        let b = s.mul(s.x(), s.y()).unwrap();
        assert_eq!(a, b);
        assert_eq!(s.len(), n);
    }

    #[test]
    fn inverse_gate() {
        let s = ExprStore::new();
        let xy = s.mul(s.x(), s.y()).unwrap();
        let yx = s.mul(s.y(), s.x()).unwrap();
        let c = s.sub(xy, yx).unwrap();
        assert!(matches!(s.inv(c), Err(Error::CommutatorInverse { .. })));
        let sum = s.add(s.x(), s.y()).unwrap();
        let inv = s.inv(sum).unwrap();
        assert_eq!(s.node(inv), Node::Inv(sum));
        assert!(s.inv(s.zero()).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s = ExprStore::with_budget(6);
        let a = s.mul(s.x(), s.y()).unwrap();
        let _b = s.mul(a, s.x()).unwrap();
        assert!(matches!(s.mul(a, a), Err(Error::BudgetExceeded { .. })));
    }
}
