//! Hash-consed noncommutative rational expressions in `x, y` over `Q`.

mod ops;
mod store;

pub use ops::{normalize, reverse, substitute, Normalizer};
pub use store::{ExprStore, NcExpr, Node, DEFAULT_NODE_BUDGET};
