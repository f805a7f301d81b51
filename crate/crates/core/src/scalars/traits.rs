//! Algebraic structure traits shared by every coefficient type in the crate.
//!
//! The reduction machinery is written once over an abstract coefficient
//! field `F` together with its ring of "numerators" `F::Ring`:
//!
//! | field  | ring      | use                                  |
//! |--------|-----------|--------------------------------------|
//! | ℚ      | ℤ         | parameter-free denominators, tests   |
//! | ℚ(t)   | ℤ\[t\]    | the main telescoping path            |
//!
//! Method names deliberately avoid the `std::ops` names so that generic code
//! never resolves to an operator impl by accident.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;

use super::Rat;

/// Commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v))
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Integral domain with gcds, exact division and an integer content.
///
/// Instances: `BigInt` and `ZPoly` (ℤ\[t\]).
pub trait GcdDomain: Ring {
    /// Exact quotient, `None` when `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    /// Quotient when `rhs` is known to divide `self`; panics otherwise.
    fn div_known(&self, rhs: &Self) -> Self {
        self.div_exact(rhs).expect("inexact division")
    }
    /// Normalized gcd (positive leading coefficient).
    fn gcd(&self, rhs: &Self) -> Self;
    /// `self` times a unit such that the result is normalized; returns the
    /// normalized value and whether the unit was −1.
    fn normalize_unit(&self) -> (Self, bool);
    /// gcd of all integer coefficients (non-negative).
    fn int_content(&self) -> BigInt;
    fn div_int(&self, c: &BigInt) -> Self;
    fn mul_int(&self, c: &BigInt) -> Self;
    /// Ordering key used when choosing pivots: smaller is preferred.
    fn size_key(&self) -> (usize, u64);
    /// Degree in the parameter (0 for integers).
    fn param_degree(&self) -> usize;
    /// Value at a rational parameter value.
    fn eval_param(&self, at: &Rat) -> Rat;
    /// Derivative with respect to the parameter.
    fn param_derivative(&self) -> Self;

    fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(rhs);
        let q = self.div_exact(&g).expect("gcd divides");
        q.mul(rhs).normalize_unit().0
    }
}

/// Commutative field.
pub trait Field: Ring {
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(v: &Rat) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

/// Fraction field of a [`GcdDomain`], carrying a derivation `∂_t` (zero on ℚ).
pub trait FracField: Field {
    type Ring: GcdDomain;

    fn numer(&self) -> Self::Ring;
    fn denom(&self) -> Self::Ring;
    /// Builds and normalizes `n / d`; panics when `d` is zero.
    fn from_parts(n: Self::Ring, d: Self::Ring) -> Self;
    fn from_ring(n: Self::Ring) -> Self {
        Self::from_parts(n, Self::Ring::one())
    }
    /// `∂_t` of the element.
    fn derivative(&self) -> Self;
    /// Specialization of the parameter, `None` at a pole.
    fn eval_param(&self, at: &Rat) -> Option<Rat>;
}

/// Ring with the derivation `∂_t` (zero on constants).
pub trait Differential: Ring {
    fn d_t(&self) -> Self;
}
