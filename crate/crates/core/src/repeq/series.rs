use std::ops::{Add, Mul, Neg, Sub};

use crate::commrat::RatFn;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Power series in `ε` truncated after `ε^N`, with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct Series<C> {
    coeffs: Vec<RatFn<C>>,
}

impl<C: Scalar> Series<C> {
    /// `coeffs[k]` is the coefficient of `ε^k`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<RatFn<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![RatFn::zero(); order + 1] }
    }

    pub fn constant(c: RatFn<C>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RatFn<C> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatFn<C>] {
        &self.coeffs
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.equals(b))
    }

    /// Multiplicative inverse via `c0 d_k = -sum_{j=1..k} c_j d_{k-j}`, `d_0 = 1/c0`.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inv().map_err(|_| Error::NonUnitConstantTerm)?.reduce();
        let n = self.order();
        let mut d: Vec<RatFn<C>> = Vec::with_capacity(n + 1);
        d.push(c0_inv.clone());
        for k in 1..=n {
            let mut acc = RatFn::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &d[k - j]);
            }
            d.push((-&(&acc * &c0_inv)).reduce());
        }
        Ok(Series { coeffs: d })
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series orders differ");
    }
}

impl<C: Scalar> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.check_order(rhs);
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.check_order(rhs);
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = RatFn::zero();
                for j in 0..=k {
                    acc = &acc + &(&self.coeffs[j] * &rhs.coeffs[k - j]);
                }
                acc
            })
            .collect();
        Series { coeffs }
    }
}
