use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{Differential, Ring};

use super::monomial::Monomial;

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(e) => {
                e.add_assign(c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Common degree of all terms, if the polynomial is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m = a.mul(b);
                let v = x.mul(y);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign(&v),
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), &c.mul(&C::from_i64(e as i64)));
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, mut f: impl FnMut(&C) -> D) -> MPoly<D> {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Substitutes `x_i = v`, keeping the variable count.
    pub fn substitute(&self, i: usize, v: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut ex = m.exps().to_vec();
            let e = ex[i];
            ex[i] = 0;
            out.add_term(Monomial::new(ex), &c.mul(&v.pow(e)));
        }
        out
    }

    /// Evaluates `x₀ = 1` and drops the variable.
    pub fn dehomogenize(&self) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            out.add_term(m.drop_first(), c);
        }
        out
    }

    /// Homogenization in degree `deg ≥ total_degree` with a new variable
    /// `x₀` in front.
    pub fn homogenize(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            out.add_term(m.prepend(deg - m.degree()), c);
        }
        out
    }

    /// Value at a point.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    v = v.mul(&x.pow(e));
                }
            }
            acc.add_assign(&v);
        }
        acc
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    format!("({})", c)
                } else if c.is_one() {
                    m.display_with(names)
                } else {
                    format!("({})*{}", c, m.display_with(names))
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("x{}", i)).collect()
    }
}

impl<C: Differential> MPoly<C> {
    /// Coefficientwise `∂_t`.
    pub fn d_t(&self) -> Self {
        self.map_coeffs(|c| c.d_t())
    }
}

impl<C: Ring> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.default_names()))
    }
}

impl<C: Ring> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat_int, Rat};

    fn x(i: usize) -> MPoly<Rat> {
        MPoly::var(3, i)
    }

    #[test]
    fn product_and_partials() {
        // ∂₀(x₀²x₁) = 2x₀x₁ ; ∂₁(x₀³) = 0
        let p = x(0).mul(&x(0)).mul(&x(1));
        assert_eq!(p.partial(0), x(0).mul(&x(1)).scale(&rat_int(2)));
        assert!(x(0).pow(3).partial(1).is_zero());
    }

    #[test]
    fn homogenize_round_trip() {
        let p = MPoly::<Rat>::var(2, 0).pow(2).add(&MPoly::constant(2, rat_int(-3)));
        let h = p.homogenize(3);
        assert_eq!(h.homogeneous_degree(), Some(3));
        assert_eq!(h.dehomogenize(), p);
    }
}
