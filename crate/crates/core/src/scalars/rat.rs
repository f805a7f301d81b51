use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::traits::{Differential, FracField, Field, Ring};

/// Exact rational number (canonical: reduced, positive denominator).
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(v: &BigInt) -> Self {
        Rat::from_integer(v.clone())
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rat(v: &Rat) -> Self {
        v.clone()
    }
}

impl FracField for Rat {
    type Ring = BigInt;

    fn numer(&self) -> BigInt {
        BigRational::numer(self).clone()
    }
    fn denom(&self) -> BigInt {
        BigRational::denom(self).clone()
    }
    fn from_parts(n: BigInt, d: BigInt) -> Self {
        Rat::new(n, d)
    }
    fn derivative(&self) -> Self {
        Zero::zero()
    }
    fn eval_param(&self, _at: &Rat) -> Option<Rat> {
        Some(self.clone())
    }
}

impl Differential for Rat {
    fn d_t(&self) -> Self {
        Zero::zero()
    }
}
