//! Coefficient fields for the commutative layer.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::modp;

/// A coefficient field.
///
/// Every routine in [`crate::commrat`] and [`crate::repeq`] is written against
/// this trait. Exactness (zero tests, gcd, exact division) is only meaningful
/// for exact fields such as [`crate::Rational`]; the floating-point impls are
/// useful for quick numeric probing.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Whether zero tests on this type are exact.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits") / Self::from_i64(den).expect("integer fits")
    }

    /// Image in `F_p`, `p = 2^61 - 1`, for exact rational types; `None` for
    /// inexact types or when the denominator is divisible by `p`.
    fn to_mod_p(&self) -> Option<u64> {
        None
    }
}

fn ratio_mod_p<T: Clone + Into<BigInt>>(numer: &T, denom: &T) -> Option<u64> {
    let p = BigInt::from(modp::PRIME);
    let reduce = |v: BigInt| -> u64 { (((v % &p) + &p) % &p).to_u64().expect("reduced") };
    Some(modp::mul(reduce(numer.clone().into()), modp::inv(reduce(denom.clone().into()))?))
}

impl Scalar for num_rational::BigRational {
    const EXACT: bool = true;

    fn to_mod_p(&self) -> Option<u64> {
        ratio_mod_p(self.numer(), self.denom())
    }
}

impl Scalar for num_rational::Rational64 {
    const EXACT: bool = true;

    fn to_mod_p(&self) -> Option<u64> {
        ratio_mod_p(self.numer(), self.denom())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}
