//! Closure of designated elements under inverse, product and sum.
//!
//! Each construction borders or glues the permuted matrices of the given
//! decompositions into a larger V-matrix whose natural pivot order (the
//! identity) yields the requested designated element.

use super::decompose::{decompose, Decomposition};
use super::ventry::{VEntry, VMatrix};
use crate::commrat::commutativize;
use crate::error::{Error, Result};
use crate::ncexpr::ExprStore;

fn identity_pivots(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, i)).collect()
}

fn check(m: &VMatrix, d: &Decomposition) -> Result<()> {
    if m.size() != d.size() || m.select(&d.rows, &d.cols) != d.permuted {
        return Err(Error::Dimension("decomposition does not belong to the matrix".into()));
    }
    Ok(())
}

/// Bordered matrix `P = [[M_p, -e_k], [e_k^T, 0]]`, whose designated element
/// is `Δ^{-1}`.
pub fn closure_inverse(store: &ExprStore, m: &VMatrix, d: &Decomposition) -> Result<(VMatrix, Decomposition)> {
    check(m, d)?;
    let k = m.size();
    let mp = d.permuted.rows();
    let mut rows: Vec<Vec<VEntry>> = Vec::with_capacity(k + 1);
    for (i, r) in mp.into_iter().enumerate() {
        let mut r = r;
        r.push(if i == k - 1 { VEntry::one().neg() } else { VEntry::zero() });
        rows.push(r);
    }
    let mut last = vec![VEntry::zero(); k + 1];
    last[k - 1] = VEntry::one();
    rows.push(last);
    let p = VMatrix::new(rows)?;
    let dp = decompose(store, &p, Some(&identity_pivots(k + 1)))?;
    Ok((p, dp))
}

/// Glued matrix
/// `P = [[M_0, e_k, 0, M_1], [0, N_1, N_0, 0]]` whose designated element is
/// `-Δ_n · Δ_m`; `M_0` is all but the last column of `M_p`, `M_1` the last.
pub fn closure_product(
    store: &ExprStore,
    m: &VMatrix,
    n: &VMatrix,
    dm: &Decomposition,
    dn: &Decomposition,
) -> Result<(VMatrix, Decomposition)> {
    check(m, dm)?;
    check(n, dn)?;
    let p = glue(&dm.permuted, &dn.permuted, false)?;
    let size = p.size();
    let dp = decompose(store, &p, Some(&identity_pivots(size)))?;
    Ok((p, dp))
}

/// Glued matrix `P = [[M_0, e_k, 0, -M_1], [0, e_l, N_0, N_1]]` whose
/// designated element is `Δ_m + Δ_n`. Negating the last column of `M_p`
/// turns its designated element into `-Δ_m`.
pub fn closure_sum(
    store: &ExprStore,
    m: &VMatrix,
    n: &VMatrix,
    dm: &Decomposition,
    dn: &Decomposition,
) -> Result<(VMatrix, Decomposition)> {
    check(m, dm)?;
    check(n, dn)?;
    let sum = &commutativize(store, dm.delta)? + &commutativize(store, dn.delta)?;
    if sum.is_zero() {
        return Err(Error::DegenerateSum);
    }
    let p = glue(&dm.permuted, &dn.permuted, true)?;
    let size = p.size();
    let dp = decompose(store, &p, Some(&identity_pivots(size)))?;
    Ok((p, dp))
}

fn glue(mp: &VMatrix, np: &VMatrix, sum: bool) -> Result<VMatrix> {
    let (k, l) = (mp.size(), np.size());
    let size = k + l;
    let mut rows = vec![vec![VEntry::zero(); size]; size];
    for i in 0..k {
        for j in 0..k - 1 {
            rows[i][j] = mp.get(i, j).clone();
        }
        let last = mp.get(i, k - 1);
        rows[i][size - 1] = if sum { last.neg() } else { last.clone() };
    }
    rows[k - 1][k - 1] = VEntry::one();
    for i in 0..l {
        for j in 0..l - 1 {
            rows[k + i][k + j] = np.get(i, j).clone();
        }
        if sum {
            rows[k + i][size - 1] = np.get(i, l - 1).clone();
        } else {
            rows[k + i][k - 1] = np.get(i, l - 1).clone();
        }
    }
    if sum {
        rows[size - 1][k - 1] = VEntry::one();
    }
    VMatrix::new(rows)
}
