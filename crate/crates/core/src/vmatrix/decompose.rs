use std::collections::BTreeSet;

use num_traits::Zero;

use super::ventry::{comm_det, VMatrix};
use crate::commrat::commutativize;
use crate::error::{Error, Result};
use crate::linalg;
use crate::ncexpr::{ExprStore, NcExpr, Normalizer};
use crate::{Poly, Rational};

/// Pivoted factorization `U · M_p = T` of a V-matrix, where
/// `M_p[i][j] = M[rows[i]][cols[j]]`, `U` is lower triangular and `T` is upper
/// triangular with diagonal `(1, …, 1, Δ)`. The last diagonal entry of `U` is 1.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Pivot sequence: step `i` pivots on `(rows[i], cols[i])`.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// The permuted matrix `M_p`.
    pub permuted: VMatrix,
    pub u: Vec<Vec<NcExpr>>,
    pub t: Vec<Vec<NcExpr>>,
    pub delta: NcExpr,
    /// Commutative determinant of `M`.
    pub det: Poly,
    /// Signed pivot minor: the commutative determinant of the leading
    /// `(k-1) × (k-1)` block `M′` of `M_p`, times the signs of the row and
    /// column permutations. With this sign `φ(Δ) · minor_det = det` holds
    /// for every pivot sequence, since `det(M_p) = ±det(M)`.
    pub minor_det: Poly,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<(usize, usize)> {
        self.rows.iter().copied().zip(self.cols.iter().copied()).collect()
    }
}

// Fixed probe points for the cheap nonvanishing test.
const PROBES: [(i64, i64); 3] = [(3, 7), (-5, 11), (13, -2)];

fn minor_nonzero(m: &VMatrix, rows: &[usize], cols: &[usize]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let sub = m.select(rows, cols);
    for (px, py) in PROBES {
        let (px, py) = (Rational::from_integer(px.into()), Rational::from_integer(py.into()));
        if !linalg::det(&sub.eval(&px, &py)).is_zero() {
            return true;
        }
    }
    !comm_det(&sub).is_zero()
}

/// Sign of the permutation `i ↦ perm[i]`.
fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn greedy_pivots(m: &VMatrix) -> Result<(Vec<usize>, Vec<usize>)> {
    let k = m.size();
    let mut rows = Vec::with_capacity(k);
    let mut cols = Vec::with_capacity(k);
    for _ in 0..k {
        let mut found = None;
        'search: for r in 0..k {
            if rows.contains(&r) {
                continue;
            }
            for c in 0..k {
                if cols.contains(&c) {
                    continue;
                }
                rows.push(r);
                cols.push(c);
                let ok = minor_nonzero(m, &rows, &cols);
                rows.pop();
                cols.pop();
                if ok {
                    found = Some((r, c));
                    break 'search;
                }
            }
        }
        let (r, c) = found.ok_or(Error::SingularCommDet)?;
        rows.push(r);
        cols.push(c);
    }
    Ok((rows, cols))
}

fn explicit_pivots(m: &VMatrix, pivots: &[(usize, usize)]) -> Result<(Vec<usize>, Vec<usize>)> {
    let k = m.size();
    if pivots.len() != k && pivots.len() + 1 != k {
        return Err(Error::InvalidPivots(format!("expected {} or {k} pivots, got {}", k - 1, pivots.len())));
    }
    let mut rows: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    let mut cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    if rows.iter().chain(&cols).any(|&i| i >= k) || !distinct(&rows) || !distinct(&cols) {
        return Err(Error::InvalidPivots("pivot indices must be distinct and in range".into()));
    }
    if rows.len() + 1 == k {
        rows.push((0..k).find(|r| !rows.contains(r)).unwrap());
        cols.push((0..k).find(|c| !cols.contains(c)).unwrap());
    }
    for i in 1..k {
        if comm_det(&m.select(&rows[..i], &cols[..i])).is_zero() {
            return Err(Error::InvalidPivots(format!("leading pivot minor of size {i} vanishes")));
        }
    }
    Ok((rows, cols))
}

/// Pivoted noncommutative elimination extracting the designated element `Δ`.
///
/// Without explicit pivots the first passing `(row, column)` candidate in
/// lexicographic order is taken at every step.
pub fn decompose(store: &ExprStore, m: &VMatrix, pivots: Option<&[(usize, usize)]>) -> Result<Decomposition> {
    let det = comm_det(m);
    if det.is_zero() {
        return Err(Error::SingularCommDet);
    }
    let (rows, cols) = match pivots {
        Some(p) => explicit_pivots(m, p)?,
        None => greedy_pivots(m)?,
    };
    let k = m.size();
    let permuted = m.select(&rows, &cols);
    let lead: Vec<usize> = (0..k - 1).collect();
    let sign = Rational::from_integer((permutation_sign(&rows) * permutation_sign(&cols)).into());
    let minor_det = comm_det(&permuted.select(&lead, &lead)).scale(&sign);
    let norm = Normalizer::new(store);
    let mut a: Vec<Vec<NcExpr>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            row.push(permuted.get(i, j).to_nc(&norm)?);
        }
        a.push(row);
    }
    let mut u: Vec<Vec<NcExpr>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { store.one() } else { store.zero() }).collect()).collect();
    for i in 0..k - 1 {
        let pinv = norm.inv(a[i][i]).map_err(|_| Error::InternalGateViolation)?;
        for j in i + 1..k {
            a[i][j] = norm.mul(pinv, a[i][j])?;
        }
        a[i][i] = store.one();
        for j in 0..=i {
            u[i][j] = norm.mul(pinv, u[i][j])?;
        }
        for r in i + 1..k {
            let f = a[r][i];
            if f == store.zero() {
                continue;
            }
            for j in i + 1..k {
                let t = norm.mul(f, a[i][j])?;
                a[r][j] = norm.sub(a[r][j], t)?;
            }
            a[r][i] = store.zero();
            for j in 0..=i {
                let t = norm.mul(f, u[i][j])?;
                u[r][j] = norm.sub(u[r][j], t)?;
            }
        }
    }
    let delta = a[k - 1][k - 1];
    // the ratio law guarantees this; a failure means the elimination is wrong
    debug_assert!(!commutativize(store, delta)?.is_zero());
    Ok(Decomposition { rows, cols, permuted, u, t: a, delta, det, minor_det })
}

/// Two-sided inverse of a V-matrix with nonzero commutative determinant,
/// obtained by back-substitution through its decomposition.
pub fn nc_inverse(store: &ExprStore, m: &VMatrix) -> Result<Vec<Vec<NcExpr>>> {
    let d = decompose(store, m, None)?;
    let k = m.size();
    let norm = Normalizer::new(store);
    // X = T^{-1} U, solved bottom-up
    let mut x: Vec<Vec<NcExpr>> = vec![vec![store.zero(); k]; k];
    for i in (0..k).rev() {
        for col in 0..k {
            let mut acc = d.u[i][col];
            for j in i + 1..k {
                let t = norm.mul(d.t[i][j], x[j][col])?;
                acc = norm.sub(acc, t)?;
            }
            if i == k - 1 {
                let dinv = norm.inv(d.delta).map_err(|_| Error::InternalGateViolation)?;
                acc = norm.mul(dinv, acc)?;
            }
            x[i][col] = acc;
        }
    }
    let mut out = vec![vec![store.zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            out[d.cols[i]][d.rows[j]] = x[i][j];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_nc;
    use crate::vmatrix::VEntry;
    use crate::CommRat;

    fn vm(rows: &[&[(i64, i64, i64)]]) -> VMatrix {
        VMatrix::new(rows.iter().map(|r| r.iter().map(|&(c, x, y)| VEntry::from_ints(c, x, y)).collect()).collect()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let s = ExprStore::new();
        let d = decompose(&s, &vm(&[&[(0, 1, 0)]]), None).unwrap();
        assert_eq!(d.delta, s.x());
        let inv = nc_inverse(&s, &vm(&[&[(0, 1, 0)]])).unwrap();
        assert_eq!(inv, vec![vec![s.inv(s.x()).unwrap()]]);
    }

    #[test]
    fn two_by_two_delta() {
        let s = ExprStore::new();
        let m = vm(&[&[(0, 1, 0), (1, 0, 0)], &[(1, 0, 0), (0, 0, 1)]]);
        let d = decompose(&s, &m, None).unwrap();
        assert_eq!(d.pivots(), vec![(0, 0), (1, 1)]);
        assert_eq!(print_nc(&s, d.delta), "y - inv(x)");
        let phi = commutativize(&s, d.delta).unwrap();
        let ratio = CommRat::new(d.det.clone(), d.minor_det.clone()).unwrap();
        assert!(phi.equals(&ratio));
        assert_eq!(phi.to_string(), "(x*y-1)/(x)");
    }

    #[test]
    fn singular_rejected() {
        let s = ExprStore::new();
        let m = vm(&[&[(0, 1, 0), (0, 1, 0)], &[(0, 1, 0), (0, 1, 0)]]);
        assert_eq!(decompose(&s, &m, None).unwrap_err(), Error::SingularCommDet);
        assert_eq!(nc_inverse(&s, &m).unwrap_err(), Error::SingularCommDet);
    }

    #[test]
    fn greedy_skips_zero_pivot() {
        let s = ExprStore::new();
        // [[0, x], [y, 1]]: the (0,0) entry vanishes, so (0,1) is the first pivot
        let m = vm(&[&[(0, 0, 0), (0, 1, 0)], &[(0, 0, 1), (1, 0, 0)]]);
        let d = decompose(&s, &m, None).unwrap();
        assert_eq!(d.pivots(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn explicit_pivots_checked() {
        let s = ExprStore::new();
        let m = vm(&[&[(0, 0, 0), (0, 1, 0)], &[(0, 0, 1), (1, 0, 0)]]);
        assert!(matches!(decompose(&s, &m, Some(&[(0, 0)])), Err(Error::InvalidPivots(_))));
        assert!(matches!(decompose(&s, &m, Some(&[(0, 1), (0, 0)])), Err(Error::InvalidPivots(_))));
        let d = decompose(&s, &m, Some(&[(1, 1)])).unwrap();
        assert_eq!(d.pivots(), vec![(1, 1), (0, 0)]);
    }

    #[test]
    fn ratio_law_with_swapped_pivots() {
        let s = ExprStore::new();
        // every pivot sequence of [[0, x], [y, 1]] permutes rows or columns
        let m = vm(&[&[(0, 0, 0), (0, 1, 0)], &[(0, 0, 1), (1, 0, 0)]]);
        for pivots in [None, Some(&[(1, 1)][..]), Some(&[(1, 0)][..])] {
            let d = decompose(&s, &m, pivots).unwrap();
            let phi = commutativize(&s, d.delta).unwrap();
            let lhs = &phi * &CommRat::from_poly(d.minor_det.clone());
            assert!(lhs.equals(&CommRat::from_poly(d.det.clone())), "pivots {:?}", d.pivots());
        }
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
    }
}
