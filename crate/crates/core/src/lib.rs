//! Exact symbolic computation in the noncommutative algebra obtained by
//! localizing the free algebra `Q<x, y>` at every element whose
//! commutativization is nonzero.
//!
//! The crate is organised around a few layers:
//!
//! * [`commrat`]: exact bivariate rational functions (the commutative shadow),
//!   generic over the coefficient field.
//! * [`ncexpr`]: hash-consed noncommutative rational expressions with a gated
//!   inversion constructor.
//! * [`repeq`]: truncated matrix-series representations and the equality
//!   engine built on them.
//! * [`cremona`]: the noncommutative Cremona generators, their composition and
//!   the relation suite.
//! * [`vmatrix`]: matrices over `span{1, x, y}`, pivoted noncommutative
//!   elimination and the closure constructions for designated elements.
//! * [`syntax`]: grammars and printers used by the command-line front end.

// index loops mirror the textbook matrix algorithms
#![allow(clippy::needless_range_loop)]

pub mod commrat;
pub mod cremona;
pub mod error;
pub mod linalg;
mod modp;
pub mod ncexpr;
pub mod random;
pub mod repeq;
pub mod scalar;
pub mod syntax;
pub mod vmatrix;

pub use error::{Error, Result};
pub use ncexpr::{ExprStore, NcExpr, Node};
pub use scalar::Scalar;

/// Exact rational scalars used throughout the concrete API.
pub type Rational = num_rational::BigRational;

/// Sparse bivariate polynomial over `Q`.
pub type Poly = commrat::Poly2<Rational>;

/// Element of the commutative field `Q(x, y)`.
pub type CommRat = commrat::RatFn<Rational>;

/// Truncated power series in `ε` with coefficients in `Q(x, y)`.
pub type TruncSeries = repeq::Series<Rational>;

/// Square matrix over `Q(x, y)[[ε]] / (ε^{N+1})`.
pub type SeriesMatrix = repeq::SeriesMat<Rational>;
