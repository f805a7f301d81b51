//! Dense univariate polynomials over a field (ℚ by default).

use std::fmt;

use super::traits::Field;
use super::Rat;

/// Polynomial in one variable over a field, coefficients low to high with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<C = Rat> {
    c: Vec<C>,
}

impl<C: Field> Default for UPoly<C> {
    fn default() -> Self {
        UPoly { c: Vec::new() }
    }
}

impl<C: Field> UPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: C) -> Self {
        Self::new(vec![v])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// `coef · x^k`.
    pub fn monomial(coef: C, k: usize) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); k];
        c.push(coef);
        UPoly { c }
    }

    /// `x − a`.
    pub fn linear_root(a: &C) -> Self {
        Self::new(vec![a.neg(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&C> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UPoly {
            c: self.c.iter().map(|x| x.mul(k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x.mul(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let qq = top.mul(&inv);
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].sub(&qq.mul(dc));
            }
            q[k] = qq;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s·self + u·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let u2 = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.lc().cloned() {
            None => (r0, s0, u0),
            Some(l) => {
                let inv = l.inv();
                (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
            }
        }
    }

    /// Monic polynomial vanishing exactly at the given points.
    pub fn from_roots(points: &[C]) -> Self {
        points
            .iter()
            .fold(Self::one(), |acc, p| acc.mul(&Self::linear_root(p)))
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(C, C)]) -> Self {
        let n = points.len();
        let xs: Vec<C> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<C> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = dd[i].sub(&dd[i - 1]);
                let den = xs[i].sub(&xs[i - j]);
                dd[i] = num.div(&den);
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = acc
                .mul(&Self::linear_root(&xs[i]))
                .add(&Self::constant(dd[i].clone()));
        }
        acc
    }
}

impl<C: Field + fmt::Display> UPoly<C> {
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c),
                1 => format!("({})*{}", c, var),
                _ => format!("({})*{}^{}", c, var, i),
            })
            .collect();
        terms.join(" + ")
    }
}

impl<C: Field + fmt::Display> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl<C: Field + fmt::Debug> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::{rat, rat_int};

    fn qp(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = qp(&[1, 0, 3, 2]);
        let d = qp(&[1, 2]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().is_none_or(|k| k < 1));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1, 0, 1]);
        let (g, s, u) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&u.mul(&b)), g);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::new(vec![rat(1, 2), rat_int(-3), rat(2, 3)]);
        let pts: Vec<_> = (1..=3).map(|i| (rat_int(i), p.eval(&rat_int(i)))).collect();
        assert_eq!(UPoly::interpolate(&pts), p);
    }
}
