//! Matrices over `V = span{1, x, y}` and the designated-element calculus.
//!
//! A decomposition of a V-matrix `M` (after row and column permutation) is a
//! factorization `U·M = T` with `U` lower triangular and `T` upper triangular
//! with diagonal `(1, …, 1, Δ)`. The commutativization of `Δ` is the ratio of
//! `det M` to the determinant of the leading `(k-1) × (k-1)` pivot block,
//! signed by the parity of the pivot permutations.

mod closure;
mod decompose;
mod ventry;

pub use closure::{closure_inverse, closure_product, closure_sum};
pub use decompose::{decompose, nc_inverse, Decomposition};
pub use ventry::{bareiss_det, comm_det, VEntry, VMatrix};
