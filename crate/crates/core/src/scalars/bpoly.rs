//! Sparse bivariate polynomials in (t, ε) and fractions of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::traits::{Field, Ring};
use super::upoly::UPoly;
use super::zpoly::ZPoly;
use super::Rat;

/// Polynomial in ℚ\[t, ε\]; keys are `(deg_t, deg_ε)`, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, v) in it {
            p.add_term(k, &v);
        }
        p
    }

    /// Embeds a polynomial in `t`.
    pub fn from_t_poly(p: &ZPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), Rat::from_integer(c.clone()))),
        )
    }

    /// `ε`.
    pub fn epsilon() -> Self {
        Self::from_terms([((0, 1), Rat::from_integer(1.into()))])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, k: (u32, u32), v: &Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Componentwise maximum of exponents, `(deg_t, deg_ε)`.
    pub fn bidegree(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }

    /// Leading term in lexicographic order with `t > ε`.
    pub fn lex_leading(&self) -> Option<((u32, u32), &Rat)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Substitutes `ε = u`, giving a polynomial in `t`.
    pub fn eval_epsilon(&self, u: &Rat) -> UPoly<Rat> {
        let mut by_t: BTreeMap<u32, Rat> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let v = c * num_traits::pow::pow(u.clone(), j as usize);
            *by_t.entry(i).or_insert_with(Rat::zero) += v;
        }
        let n = by_t.keys().next_back().map(|&k| k as usize + 1).unwrap_or(0);
        let mut c = vec![Rat::zero(); n];
        for (i, v) in by_t {
            c[i as usize] = v;
        }
        UPoly::new(c)
    }

    /// Substitutes `t = x`, giving a polynomial in `ε`.
    pub fn eval_t(&self, x: &Rat) -> UPoly<Rat> {
        self.swap().eval_epsilon(x)
    }

    pub fn eval(&self, t: &Rat, eps: &Rat) -> Rat {
        self.eval_epsilon(eps).eval(t)
    }

    fn swap(&self) -> Self {
        BPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }
}

impl Ring for BPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_terms([((0, 0), Rat::from_integer(1.into()))])
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.add_term(k, v);
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), &(x * y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        BPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
    fn from_int(v: &BigInt) -> Self {
        Self::from_terms([((0, 0), Rat::from_integer(v.clone()))])
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = format!("({})", c);
                if i > 0 {
                    s.push_str(&format!("*t^{}", i));
                }
                if j > 0 {
                    s.push_str(&format!("*eps^{}", j));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({})", self)
    }
}

/// Fraction of bivariate polynomials, normalized so that the lexicographic
/// leading coefficient of the denominator is 1.
///
/// Common factors between numerator and denominator are not removed; the
/// type only serves as an exact source of specializations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiRatFunc {
    num: BPoly,
    den: BPoly,
}

impl BiRatFunc {
    pub fn new(num: BPoly, den: BPoly) -> Self {
        let (_, lc) = den.lex_leading().expect("zero denominator");
        let inv = lc.inv();
        let s = BPoly::from_terms([((0, 0), inv)]);
        BiRatFunc {
            num: num.mul(&s),
            den: den.mul(&s),
        }
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &BPoly {
        &self.den
    }

    /// `R(t, ε=u)` as a univariate fraction in `t`, `None` if the
    /// denominator vanishes identically.
    pub fn eval_epsilon(&self, u: &Rat) -> Option<(UPoly<Rat>, UPoly<Rat>)> {
        let d = self.den.eval_epsilon(u);
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval_epsilon(u), d))
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, t: &Rat, eps: &Rat) -> Option<Rat> {
        let d = self.den.eval(t, eps);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t, eps) / d)
    }
}
