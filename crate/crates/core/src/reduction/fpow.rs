use crate::multipoly::MPoly;
use crate::scalars::{Differential, GcdDomain};

/// `num / (den · f^pole)` for a fixed `f`, without any homogeneity
/// constraint. Used to check identities between fractions whose
/// denominators are powers of `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct FPow<R: GcdDomain> {
    pub num: MPoly<R>,
    pub den: R,
    pub pole: u32,
}

impl<R: GcdDomain> FPow<R> {
    pub fn new(num: MPoly<R>, den: R, pole: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        FPow { num, den, pole }
    }

    pub fn zero(nvars: usize) -> Self {
        FPow::new(MPoly::zero(nvars), R::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self, f: &MPoly<R>) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let p = self.pole.max(o.pole);
        let l = if self.den == o.den { self.den.clone() } else { self.den.lcm(&o.den) };
        let lift = |x: &Self| {
            let mut n = x.num.scale(&l.div_known(&x.den));
            if x.pole < p {
                n = n.mul(&f.pow(p - x.pole));
            }
            n
        };
        FPow::new(lift(self).add(&lift(o)), l, p)
    }

    /// Removes the common factor of `den` and all coefficients of `num`.
    pub fn simplified(&self) -> Self {
        let (den, flip) = self.den.normalize_unit();
        let num = if flip { self.num.neg() } else { self.num.clone() };
        if num.is_zero() {
            return FPow::new(num, R::one(), self.pole);
        }
        let mut g = den.clone();
        for (_, c) in num.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if g.is_one() {
            return FPow::new(num, den, self.pole);
        }
        let (g, _) = g.normalize_unit();
        FPow::new(num.map_coeffs(|c| c.div_known(&g)), den.div_known(&g), self.pole)
    }

    pub fn neg(&self) -> Self {
        FPow::new(self.num.neg(), self.den.clone(), self.pole)
    }

    pub fn sub(&self, o: &Self, f: &MPoly<R>) -> Self {
        self.add(&o.neg(), f)
    }

    /// `(cn/cd)·self`.
    pub fn scale(&self, cn: &R, cd: &R) -> Self {
        FPow::new(self.num.scale(cn), self.den.mul(cd), self.pole)
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize, f: &MPoly<R>) -> Self {
        if self.pole == 0 {
            return FPow::new(self.num.partial(i), self.den.clone(), 0);
        }
        let p = R::from_i64(self.pole as i64);
        let num = self.num.partial(i).mul(f).sub(&self.num.mul(&f.partial(i)).scale(&p));
        FPow::new(num, self.den.clone(), self.pole + 1)
    }
}

impl<R: GcdDomain + Differential> FPow<R> {
    /// `∂_t`, with `f` depending on `t`.
    pub fn d_t(&self, f: &MPoly<R>) -> Self {
        let dd = self.den.d_t();
        let p = R::from_i64(self.pole as i64);
        let num = self
            .num
            .d_t()
            .scale(&self.den)
            .sub(&self.num.scale(&dd))
            .mul(f)
            .sub(&self.num.mul(&f.d_t()).scale(&self.den.mul(&p)));
        FPow::new(num, self.den.mul(&self.den), self.pole + 1)
    }
}
