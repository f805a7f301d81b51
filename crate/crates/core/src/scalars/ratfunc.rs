//! Rational functions in ℚ(t).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::traits::{Differential, FracField, Field, Ring};
use super::upoly::UPoly;
use super::zpoly::ZPoly;
use super::Rat;

/// Element of ℚ(t) stored as `num / den` with `num, den ∈ ℤ[t]`.
///
/// Canonical form: `gcd(num, den) = 1` in ℤ\[t\] (integer content included),
/// `lc(den) > 0`, and zero is `0/1`. Two equal fractions therefore have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero_value();
        }
        if den.is_constant() {
            let d = den.coeffs()[0].clone();
            let g = num_integer::Integer::gcd(&num.content(), &d);
            let mut g = g;
            if d.is_negative() {
                g = -g;
            }
            return RatFunc {
                num: num.div_int(&g),
                den: ZPoly::constant(d / g),
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one_poly() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if d.lc().unwrap().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        RatFunc { num: n, den: d }
    }

    fn zero_value() -> Self {
        RatFunc {
            num: ZPoly::default(),
            den: ZPoly::constant(BigInt::one()),
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatFunc {
            num: p,
            den: ZPoly::constant(BigInt::one()),
        }
    }

    pub fn from_rat(v: &Rat) -> Self {
        Self::new(ZPoly::constant(v.numer().clone()), ZPoly::constant(v.denom().clone()))
    }

    /// `p/q` for polynomials over ℚ.
    pub fn from_upolys(p: &UPoly<Rat>, q: &UPoly<Rat>) -> Self {
        let mut l = BigInt::one();
        for c in p.coeffs().iter().chain(q.coeffs()) {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let clear = |u: &UPoly<Rat>| {
            ZPoly::new(u.coeffs().iter().map(|c| (c * &l).to_integer()).collect())
        };
        Self::new(clear(p), clear(q))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Self::from_poly(ZPoly::t())
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Numerator over ℚ and primitive denominator with positive leading
    /// coefficient.
    pub fn numerator(&self) -> UPoly<Rat> {
        let c = self.den.content();
        UPoly::new(
            self.num
                .coeffs()
                .iter()
                .map(|x| Rat::new(x.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn denominator(&self) -> UPoly<Rat> {
        let p = self.den.primitive_part();
        UPoly::new(p.coeffs().iter().map(|x| Rat::from_integer(x.clone())).collect())
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn eval(&self, at: &Rat) -> Option<Rat> {
        let d = self.den.eval_rat(at);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(at) / d)
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::new(self.num.derivative(), self.den.clone());
        }
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.square())
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Self::zero_value();
        }
        let den = b1.mul(&o.den);
        if g.is_one_poly() {
            return Self::canonical_sign(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one_poly() {
            Self::canonical_sign(num, den)
        } else {
            Self::canonical_sign(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    fn canonical_sign(num: ZPoly, den: ZPoly) -> Self {
        if den.lc().unwrap().is_negative() {
            RatFunc {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RatFunc { num, den }
        }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero_value();
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&o.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&o.den.div_exact(&g1).unwrap());
        Self::canonical_sign(n, d)
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.den.is_one_poly() {
            self.num.display_var(var)
        } else {
            format!("({})/({})", self.num.display_var(var), self.den.display_var(var))
        }
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for ZPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::from_poly(ZPoly::constant(BigInt::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_int(v: &BigInt) -> Self {
        Self::from_poly(ZPoly::constant(v.clone()))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        Self::canonical_sign(self.den.clone(), self.num.clone())
    }
    fn from_rat(v: &Rat) -> Self {
        RatFunc::from_rat(v)
    }
}

impl FracField for RatFunc {
    type Ring = ZPoly;

    fn numer(&self) -> ZPoly {
        self.num.clone()
    }
    fn denom(&self) -> ZPoly {
        self.den.clone()
    }
    fn from_parts(n: ZPoly, d: ZPoly) -> Self {
        RatFunc::new(n, d)
    }
    fn from_ring(n: ZPoly) -> Self {
        Self::from_poly(n)
    }
    fn derivative(&self) -> Self {
        RatFunc::derivative(self)
    }
    fn eval_param(&self, at: &Rat) -> Option<Rat> {
        self.eval(at)
    }
}

impl Differential for RatFunc {
    fn d_t(&self) -> Self {
        self.derivative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{rat, rat_int};

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    #[test]
    fn canonical_representation() {
        // (2t+2)/(-4t^2-4t) = -1/(2t)
        let a = RatFunc::new(zp(&[2, 2]), zp(&[0, -4, -4]));
        assert_eq!(a.num(), &zp(&[-1]));
        assert_eq!(a.den(), &zp(&[0, 2]));
        let b = RatFunc::new(zp(&[-3]), zp(&[0, 6]));
        assert_eq!(a, b);
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = RatFunc::new(zp(&[1, 1]), zp(&[-1, 0, 1]));
        let b = RatFunc::new(zp(&[3]), zp(&[0, 1]));
        let s = Ring::add(&a, &b);
        let back = Ring::sub(&s, &b);
        assert_eq!(back, RatFunc::new(zp(&[1]), zp(&[-1, 1])));
        let p = Ring::mul(&a, &a.inv());
        assert!(p.is_one());
    }

    #[test]
    fn derivative_of_inverse() {
        // d/dt 1/t = -1/t^2
        let a = RatFunc::new(zp(&[1]), zp(&[0, 1]));
        assert_eq!(a.derivative(), RatFunc::new(zp(&[-1]), zp(&[0, 0, 1])));
    }

    #[test]
    fn spec_form_accessors() {
        let a = RatFunc::new(zp(&[1]), zp(&[0, 2]));
        assert_eq!(a.denominator(), UPoly::new(vec![rat_int(0), rat_int(1)]));
        assert_eq!(a.numerator(), UPoly::constant(rat(1, 2)));
        assert_eq!(a.eval(&rat_int(0)), None);
        assert_eq!(a.eval(&rat_int(2)), Some(rat(1, 4)));
    }
}
