use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Differential, Field, RatFunc};

use super::hpoly::HPoly;
use super::poly::MPoly;

/// `a / f^ℓ` with `deg a = ℓ·deg f − (n+1)`, an element of the degree
/// `−n−1` part of `L[x, 1/f]`. No common factors are removed.
#[derive(Clone, PartialEq)]
pub struct PoleFraction<C = RatFunc> {
    num: HPoly<C>,
    base: HPoly<C>,
    pole: u32,
}

impl<C: Field> PoleFraction<C> {
    pub fn new(num: HPoly<C>, base: HPoly<C>, pole: u32) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if pole == 0 {
            return Err(Error::DegreeError("pole order must be at least 1".into()));
        }
        if num.nvars() != base.nvars() {
            return Err(Error::DegreeError("variable count mismatch".into()));
        }
        let want = (pole * base.degree()) as i64 - num.nvars() as i64;
        if num.degree() as i64 != want {
            return Err(Error::DegreeError(format!(
                "numerator degree {} but pole order {} and denominator degree {} require {}",
                num.degree(),
                pole,
                base.degree(),
                want
            )));
        }
        Ok(PoleFraction { num, base, pole })
    }

    pub fn num(&self) -> &HPoly<C> {
        &self.num
    }

    pub fn base(&self) -> &HPoly<C> {
        &self.base
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    /// Number of projective variables minus one.
    pub fn n(&self) -> usize {
        self.num.nvars() - 1
    }

    pub fn d(&self) -> u32 {
        self.base.degree()
    }

    /// The same fraction written with pole order `pole + k`.
    pub fn raise_pole(&self, k: u32) -> Self {
        PoleFraction {
            num: self.num.mul(&self.base.pow(k)),
            base: self.base.clone(),
            pole: self.pole + k,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        PoleFraction {
            num: self.num.scale(c),
            base: self.base.clone(),
            pole: self.pole,
        }
    }

    /// Sum of two fractions over the same `f`.
    pub fn add(&self, o: &Self) -> Self {
        assert!(self.base == o.base, "different denominators");
        let p = self.pole.max(o.pole);
        let a = self.raise_pole(p - self.pole);
        let b = o.raise_pole(p - o.pole);
        PoleFraction {
            num: a.num.add(&b.num),
            base: self.base.clone(),
            pole: p,
        }
    }

    /// Restriction to the affine chart `x₀ = 1`.
    pub fn evaluate_x0(&self) -> Frac<C> {
        Frac::new(self.num.evaluate_x0(), self.base.evaluate_x0().pow(self.pole))
    }

    /// As a plain fraction in all projective variables.
    pub fn to_frac(&self) -> Frac<C> {
        Frac::new(self.num.poly().clone(), self.base.poly().pow(self.pole))
    }
}

impl<C: Field + Differential> PoleFraction<C> {
    /// `∂_t(a/f^ℓ) = (∂_t a · f − ℓ · a · ∂_t f) / f^{ℓ+1}`.
    pub fn t_derivative(&self) -> Self {
        let l = C::from_i64(self.pole as i64);
        let num = self
            .num
            .d_t()
            .mul(&self.base)
            .sub(&self.num.mul(&self.base.d_t()).scale(&l));
        PoleFraction {
            num,
            base: self.base.clone(),
            pole: self.pole + 1,
        }
    }
}

impl<C: Field> fmt::Display for PoleFraction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})^{}", self.num, self.base, self.pole)
    }
}

impl<C: Field> fmt::Debug for PoleFraction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoleFraction({})", self)
    }
}

/// Homogenization of `a / f_aff` in degree `−n−1`, with
/// `d_pr = max(deg f_aff, deg a + n + 1)`.
pub fn homogenize<C: Field>(a_aff: &MPoly<C>, f_aff: &MPoly<C>, n: usize) -> Result<PoleFraction<C>> {
    homogenize_pole(a_aff, f_aff, 1, n)
}

/// Homogenization of `a / f_aff^ℓ`: the smallest `d_pr ≥ deg f_aff` with
/// `ℓ·d_pr ≥ deg a + n + 1` is used, so that `f_aff` itself stays the base.
pub fn homogenize_pole<C: Field>(a_aff: &MPoly<C>, f_aff: &MPoly<C>, pole: u32, n: usize) -> Result<PoleFraction<C>> {
    if f_aff.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if pole == 0 {
        return Err(Error::DegreeError("pole order must be at least 1".into()));
    }
    if a_aff.nvars() != n || f_aff.nvars() != n {
        return Err(Error::DegreeError("variable count mismatch".into()));
    }
    let d_aff = f_aff.total_degree().unwrap();
    let need = a_aff.total_degree().unwrap_or(0) + n as u32 + 1;
    let d_pr = d_aff.max(need.div_ceil(pole));
    let f_pr = HPoly::new(f_aff.homogenize(d_pr), d_pr)?;
    let deg_b = pole * d_pr - n as u32 - 1;
    let b = HPoly::new(a_aff.homogenize(deg_b), deg_b)?;
    PoleFraction::new(b, f_pr, pole)
}

/// Quotient of two multivariate polynomials, kept without gcd
/// simplification. Used for exact identity checks.
#[derive(Clone)]
pub struct Frac<C> {
    pub num: MPoly<C>,
    pub den: MPoly<C>,
}

impl<C: Field> Frac<C> {
    pub fn new(num: MPoly<C>, den: MPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }
    }

    pub fn from_poly(p: MPoly<C>) -> Self {
        let n = p.nvars();
        Frac::new(p, MPoly::one(n))
    }

    pub fn zero(nvars: usize) -> Self {
        Frac::new(MPoly::zero(nvars), MPoly::one(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Frac::new(self.num.add(&o.num), self.den.clone());
        }
        Frac::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Frac::new(self.num.neg(), self.den.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Frac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &C) -> Self {
        Frac::new(self.num.scale(c), self.den.clone())
    }

    /// `∂/∂x_i` by the quotient rule.
    pub fn partial(&self, i: usize) -> Self {
        Frac::new(
            self.num.partial(i).mul(&self.den).sub(&self.num.mul(&self.den.partial(i))),
            self.den.mul(&self.den),
        )
    }

    /// Equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl<C: Field + Differential> Frac<C> {
    pub fn d_t(&self) -> Self {
        Frac::new(
            self.num.d_t().mul(&self.den).sub(&self.num.mul(&self.den.d_t())),
            self.den.mul(&self.den),
        )
    }
}

impl<C: Field> fmt::Debug for Frac<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::Monomial;
    use crate::scalars::{rat_int, Rat, RatFunc, ZPoly};

    fn t() -> RatFunc {
        RatFunc::t()
    }

    fn c(v: i64) -> RatFunc {
        RatFunc::from_rat(&rat_int(v))
    }

    fn var(nv: usize, i: usize) -> MPoly<RatFunc> {
        MPoly::var(nv, i)
    }

    #[test]
    fn homogenize_examples() {
        // 1/(x^2 - t), n = 1
        let f = var(1, 0).pow(2).sub(&MPoly::constant(1, t()));
        let h = homogenize(&MPoly::one(1), &f, 1).unwrap();
        assert_eq!(h.d(), 2);
        assert_eq!(h.num().degree(), 0);
        let want = var(2, 1).pow(2).sub(&var(2, 0).pow(2).scale(&t()));
        assert_eq!(h.base().poly(), &want);
        // x/(x^3 + t)
        let f = var(1, 0).pow(3).add(&MPoly::constant(1, t()));
        let h = homogenize(&var(1, 0), &f, 1).unwrap();
        assert_eq!(h.d(), 3);
        assert_eq!(h.num().poly(), &var(2, 1));
        let back = h.evaluate_x0();
        assert!(back.equals(&Frac::new(var(1, 0), f)));
    }

    #[test]
    fn homogenize_worked_example_degree() {
        // (x - y)/(z^2 - (x^3+t)(y^3+t)) in three affine variables
        let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
        let tt = MPoly::constant(3, t());
        let f = z.pow(2).sub(&x.pow(3).add(&tt).mul(&y.pow(3).add(&tt)));
        let h = homogenize(&x.sub(&y), &f, 3).unwrap();
        assert_eq!(h.d(), 6);
        assert_eq!(h.num().degree(), 2);
        assert!(h.evaluate_x0().equals(&Frac::new(x.sub(&y), f)));
    }

    #[test]
    fn degree_invariant_is_enforced() {
        let f = HPoly::from_poly(var(2, 0).pow(2).add(&var(2, 1).pow(2))).unwrap();
        assert!(PoleFraction::new(HPoly::zero(2, 1), f.clone(), 1).is_err());
        assert!(PoleFraction::new(HPoly::zero(2, 0), f.clone(), 1).is_ok());
        assert!(PoleFraction::new(HPoly::zero(2, 2), f, 2).is_ok());
    }

    #[test]
    fn t_derivative_quotient_rule() {
        // ∂_t 1/(x0^2 - t x1^2) = x1^2/(x0^2 - t x1^2)^2
        let f = HPoly::from_poly(var(2, 0).pow(2).sub(&var(2, 1).pow(2).scale(&t()))).unwrap();
        let one = HPoly::monomial(Monomial::one(2), c(1));
        let g = PoleFraction::new(one, f.clone(), 1).unwrap().t_derivative();
        assert_eq!(g.pole(), 2);
        assert_eq!(g.num().poly(), &var(2, 1).pow(2));
        // constant in t
        let f0 = HPoly::from_poly(var(2, 0).pow(2).add(&var(2, 1).pow(2))).unwrap();
        let g0 = PoleFraction::new(HPoly::monomial(Monomial::one(2), c(1)), f0, 1).unwrap();
        assert!(g0.t_derivative().num().is_zero());
        // t/f with f free of t gives 1/f written over f^2
        let g1 = PoleFraction::new(HPoly::monomial(Monomial::one(2), t()), g0.base().clone(), 1).unwrap();
        let d = g1.t_derivative();
        assert!(d.to_frac().equals(&PoleFraction::new(HPoly::monomial(Monomial::one(2), c(1)), g0.base().clone(), 1).unwrap().to_frac()));
        let _ = ZPoly::t();
        let _: Rat = rat_int(0);
    }
}
