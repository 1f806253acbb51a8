use crate::commrat::RatFn;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

use super::series::Series;

/// Square matrix over truncated series, stored coefficient-major: one `k × k`
/// row-major matrix per power of `ε`.
///
/// Like [`RatFn`], arithmetic is lazy: coefficients of sums and products are
/// left unreduced, and comparisons go through [`SeriesMat::equals`].
#[derive(Clone, Debug)]
pub struct SeriesMat<C> {
    k: usize,
    coeffs: Vec<Vec<RatFn<C>>>,
}

impl<C: Scalar> SeriesMat<C> {
    pub fn zero(k: usize, order: usize) -> Self {
        assert!(k >= 1);
        SeriesMat { k, coeffs: vec![vec![RatFn::zero(); k * k]; order + 1] }
    }

    /// `c · Id` with no higher-order terms.
    pub fn scalar(c: RatFn<C>, k: usize, order: usize) -> Self {
        let mut m = Self::zero(k, order);
        for i in 0..k {
            m.coeffs[0][i * k + i] = c.clone();
        }
        m
    }

    pub fn identity(k: usize, order: usize) -> Self {
        Self::scalar(RatFn::one(), k, order)
    }

    /// Builds from coefficient matrices; `coeffs[d][i][j]` multiplies `ε^d`.
    pub fn from_coeffs(coeffs: Vec<Vec<Vec<RatFn<C>>>>) -> Result<Self> {
        let k = coeffs.first().map_or(0, |m| m.len());
        if k == 0 {
            return Err(Error::Dimension("empty series matrix".into()));
        }
        let mut flat = Vec::with_capacity(coeffs.len());
        for m in coeffs {
            if m.len() != k || m.iter().any(|r| r.len() != k) {
                return Err(Error::Dimension("coefficient matrices must be k × k".into()));
            }
            flat.push(m.into_iter().flatten().collect());
        }
        Ok(SeriesMat { k, coeffs: flat })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, degree: usize, i: usize, j: usize) -> &RatFn<C> {
        &self.coeffs[degree][i * self.k + j]
    }

    pub fn set(&mut self, degree: usize, i: usize, j: usize, v: RatFn<C>) {
        self.coeffs[degree][i * self.k + j] = v;
    }

    /// Coefficient of `ε^degree` as a row-major nested matrix.
    pub fn coeff_matrix(&self, degree: usize) -> Vec<Vec<RatFn<C>>> {
        self.coeffs[degree].chunks(self.k).map(|r| r.to_vec()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Series<C> {
        Series::new(self.coeffs.iter().map(|m| m[i * self.k + j].clone()).collect())
    }

    /// The scalar `c` when the constant term is `c · Id`.
    pub fn scalar_constant(&self) -> Option<&RatFn<C>> {
        let k = self.k;
        let c0 = &self.coeffs[0];
        let d = &c0[0];
        for i in 0..k {
            for j in 0..k {
                let v = &c0[i * k + j];
                if i == j {
                    if v.num() != d.num() || v.den() != d.den() {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// First entry where the two matrices differ, scanning `ε`-degree, then row, then column.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, usize)> {
        assert_eq!(self.k, other.k);
        assert_eq!(self.order(), other.order());
        for d in 0..=self.order() {
            for idx in 0..self.k * self.k {
                if !self.coeffs[d][idx].equals(&other.coeffs[d][idx]) {
                    return Some((d, idx / self.k, idx % self.k));
                }
            }
        }
        None
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        SeriesMat { k: self.k, coeffs: self.coeffs.iter().map(|m| m.iter().map(|v| -v).collect()).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&RatFn<C>, &RatFn<C>) -> RatFn<C>) -> Self {
        assert_eq!(self.k, other.k);
        assert_eq!(self.order(), other.order());
        SeriesMat {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| f(u, v)).collect())
                .collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        assert_eq!(self.order(), other.order());
        let k = self.k;
        let n = self.order();
        let sa = self.scalar_constant().cloned();
        let sb = other.scalar_constant().cloned();
        let mut out = Self::zero(k, n);
        for d in 0..=n {
            let mut acc: Vec<RatFn<C>> = vec![RatFn::zero(); k * k];
            for j in 0..=d {
                let (a, b) = (&self.coeffs[j], &other.coeffs[d - j]);
                let left_scalar = if j == 0 { sa.as_ref() } else { None };
                let right_scalar = if d == j { sb.as_ref() } else { None };
                if let Some(s) = left_scalar {
                    if !s.is_zero() {
                        for (v, w) in acc.iter_mut().zip(b) {
                            *v = &*v + &(s * w);
                        }
                    }
                } else if let Some(s) = right_scalar {
                    if !s.is_zero() {
                        for (v, u) in acc.iter_mut().zip(a) {
                            *v = &*v + &(u * s);
                        }
                    }
                } else {
                    for r in 0..k {
                        for c in 0..k {
                            let mut v = RatFn::zero();
                            for t in 0..k {
                                let (u, w) = (&a[r * k + t], &b[t * k + c]);
                                if !u.is_zero() && !w.is_zero() {
                                    v = &v + &(u * w);
                                }
                            }
                            acc[r * k + c] = &acc[r * k + c] + &v;
                        }
                    }
                }
            }
            out.coeffs[d] = acc;
        }
        out
    }

    /// Scales every coefficient by the rational function `s`.
    pub fn scale(&self, s: &RatFn<C>) -> Self {
        SeriesMat {
            k: self.k,
            coeffs: self.coeffs.iter().map(|m| m.iter().map(|v| s * v).collect()).collect(),
        }
    }

    /// Inverse modulo `ε^{N+1}`: the constant term is inverted over `Q(x, y)`,
    /// higher orders are corrected one degree at a time.
    pub fn inverse(&self) -> Result<Self> {
        let k = self.k;
        let n = self.order();
        let b0: Vec<RatFn<C>> = match self.scalar_constant() {
            Some(s) => {
                let si = s.inv().map_err(|_| Error::SingularConstantTerm)?.reduce();
                let mut m = vec![RatFn::zero(); k * k];
                for i in 0..k {
                    m[i * k + i] = si.clone();
                }
                m
            }
            None => {
                let a0 = self.coeff_matrix(0);
                let inv = linalg::inverse(&a0).map_err(|_| Error::SingularConstantTerm)?;
                inv.into_iter().flatten().collect()
            }
        };
        let b0m = SeriesMat { k, coeffs: vec![b0.clone()] };
        let mut out = Self::zero(k, n);
        out.coeffs[0] = b0;
        for d in 1..=n {
            // acc = sum_{j=1..d} A_j B_{d-j}
            let mut acc = SeriesMat { k, coeffs: vec![vec![RatFn::zero(); k * k]] };
            for j in 1..=d {
                let a = SeriesMat { k, coeffs: vec![self.coeffs[j].clone()] };
                let b = SeriesMat { k, coeffs: vec![out.coeffs[d - j].clone()] };
                acc = acc.add(&a.mul(&b));
            }
            let term = b0m.mul(&acc);
            out.coeffs[d] = term.coeffs[0].iter().map(|v| -v).collect();
        }
        Ok(out)
    }
}
