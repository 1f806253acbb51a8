//! Dense Gaussian elimination over an exact field.

use crate::commrat::RatFn;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimal field interface used by the elimination routines.
pub trait FieldElem: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Caller guarantees `o` is nonzero.
    fn div(&self, o: &Self) -> Self;
    /// Hook for coefficient growth control; identity by default.
    fn tidy(self) -> Self {
        self
    }
}

impl<C: Scalar> FieldElem for C {
    fn zero() -> Self {
        C::zero()
    }
    fn one() -> Self {
        C::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn div(&self, o: &Self) -> Self {
        self.clone() / o.clone()
    }
}

impl<C: Scalar> FieldElem for RatFn<C> {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        RatFn::div(self, o).expect("nonzero divisor")
    }
    fn tidy(self) -> Self {
        self.reduce()
    }
}

/// Determinant of a square matrix given row-major.
pub fn det<F: FieldElem>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut d = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            d = F::zero().sub(&d);
        }
        let pivot = a[col][col].clone();
        d = d.mul(&pivot).tidy();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].div(&pivot).tidy();
            for c in col..n {
                let v = a[r][c].sub(&f.mul(&a[col][c])).tidy();
                a[r][c] = v;
            }
        }
    }
    d
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse<F: FieldElem>(m: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].div(&pivot).tidy();
            inv[col][c] = inv[col][c].div(&pivot).tidy();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                a[r][c] = a[r][c].sub(&f.mul(&a[col][c])).tidy();
                inv[r][c] = inv[r][c].sub(&f.mul(&inv[col][c])).tidy();
            }
        }
    }
    Ok(inv)
}

pub fn matmul<F: FieldElem>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = F::zero();
                    for k in 0..inner {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc.tidy()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn det_matches_leibniz_3x3() {
        let m = vec![
            vec![q(2), q(-1), q(0)],
            vec![q(1), q(3), q(4)],
            vec![q(0), q(5), q(-2)],
        ];
        // Leibniz expansion along the first row
        let expected = q(2) * (q(3) * q(-2) - q(4) * q(5)) - q(-1) * (q(1) * q(-2) - q(4) * q(0));
        assert_eq!(det(&m), expected);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(0), q(1)], vec![q(2), q(3)]];
        let inv = inverse(&m).unwrap();
        let id = matmul(&m, &inv);
        assert_eq!(id, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_err());
    }
}
