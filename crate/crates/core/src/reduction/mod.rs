//! Griffiths–Dwork reduction of `a/f^ℓ` to a reduced form, by linear
//! algebra on Macaulay matrices, with optional certificate tracking.
//!
//! All numerators are kept over the coefficient ring `R` (ℤ\[t\] in
//! practice) with one scalar denominator, so no field arithmetic happens in
//! the inner loop.

mod fpow;

use crate::error::{Error, Result};
use crate::macaulay::SplitFamily;
use crate::multipoly::{HPoly, PoleFraction};
use crate::scalars::{Differential, FracField, GcdDomain, Ring};

pub use fpow::FPow;

/// `num / (den · f^pole)` with `num` over the coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralFraction<R: GcdDomain> {
    pub num: HPoly<R>,
    pub den: R,
    pub pole: u32,
}

impl<R: GcdDomain> IntegralFraction<R> {
    pub fn new(num: HPoly<R>, den: R, pole: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(pole >= 1, "pole order must be at least 1");
        let (num, den) = simplify(num, den);
        IntegralFraction { num, den, pole }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_fpow(&self) -> FPow<R> {
        FPow::new(self.num.poly().clone(), self.den.clone(), self.pole)
    }
}

/// Divides `num` and `den` by their common content and makes `den`
/// normalized.
pub fn simplify<R: GcdDomain>(num: HPoly<R>, den: R) -> (HPoly<R>, R) {
    let (den, flip) = den.normalize_unit();
    let num = if flip { num.neg() } else { num };
    if num.is_zero() {
        return (num, R::one());
    }
    let mut g = den.clone();
    for (_, c) in num.terms() {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if g.is_one() {
        return (num, den);
    }
    let (g, _) = g.normalize_unit();
    (num.map_coeffs(|c| c.div_known(&g)), den.div_known(&g))
}

/// Writes `p ∈ F[x]` as `q / c` with `q` over the ring of `F` and `c`
/// normalized.
pub fn clear_denominators<F: FracField>(p: &HPoly<F>) -> (HPoly<F::Ring>, F::Ring) {
    let mut l = F::Ring::one();
    for (_, c) in p.terms() {
        l = l.lcm(&c.denom());
    }
    let q = p.map_coeffs(|c| c.numer().mul(&l.div_known(&c.denom())));
    (q, l)
}

/// Integral form of `f`: `f = c·f_int` with `f_int` over the ring, its
/// coefficients sharing no common factor, and its leading term normalized.
pub fn integral_base<F: FracField>(f: &HPoly<F>) -> (HPoly<F::Ring>, F) {
    let (q, l) = clear_denominators(f);
    let mut g = F::Ring::zero();
    for (_, c) in q.terms() {
        g = if g.is_zero() { c.normalize_unit().0 } else { g.gcd(c) };
    }
    let flip = q.poly().leading().map(|(_, c)| c.normalize_unit().1).unwrap_or(false);
    let g = if flip { g.neg() } else { g };
    let fi = q.map_coeffs(|c| c.div_known(&g));
    (fi, F::from_parts(g, l))
}

/// `F = a/f^ℓ` over the fraction field, rewritten over the integral base
/// `f_int` of `f` (as returned by [`integral_base`]).
pub fn to_integral<F: FracField>(p: &PoleFraction<F>) -> (IntegralFraction<F::Ring>, HPoly<F::Ring>) {
    let (fi, c) = integral_base(p.base());
    let cl = c.pow(p.pole()).inv();
    let (num, den) = clear_denominators(&p.num().scale(&cl));
    (IntegralFraction::new(num, den, p.pole()), fi)
}

/// `Σ_k b_k / (den · f^k)`, `k = 1…n`. Slot `k−1` holds `b_k`, homogeneous
/// of degree `k·d − n − 1` (slots whose degree would be negative are zero
/// and carry degree 0). The representation is canonical for a fixed split
/// family: `den` is normalized and shares no factor with all numerators.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedForm<R: GcdDomain> {
    pub den: R,
    pub slots: Vec<HPoly<R>>,
}

pub(crate) fn slot_degree(k: usize, d: u32, n: usize) -> i64 {
    k as i64 * d as i64 - n as i64 - 1
}

impl<R: GcdDomain> ReducedForm<R> {
    pub fn zero(nvars: usize, d: u32) -> Self {
        let n = nvars - 1;
        ReducedForm {
            den: R::one(),
            slots: (1..=n).map(|k| HPoly::zero(nvars, slot_degree(k, d, n).max(0) as u32)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.is_zero())
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// Largest `t`-degree among slot numerators.
    pub fn max_param_degree(&self) -> usize {
        self.slots
            .iter()
            .flat_map(|s| s.terms().map(|(_, c)| c.param_degree()))
            .max()
            .unwrap_or(0)
    }

    /// Highest nonzero slot index `k` (1-based), 0 when zero.
    pub fn top_slot(&self) -> usize {
        self.slots.iter().rposition(|s| !s.is_zero()).map_or(0, |i| i + 1)
    }

    pub fn to_fpow(&self, f: &HPoly<R>) -> FPow<R> {
        let mut acc = FPow::zero(f.nvars());
        for (k, s) in self.slots.iter().enumerate() {
            if !s.is_zero() {
                acc = acc.add(&FPow::new(s.poly().clone(), self.den.clone(), k as u32 + 1), f.poly());
            }
        }
        acc
    }
}

/// One summand `num / (den · f^pole)` of the certificate component `A_var`.
#[derive(Clone, Debug)]
pub struct CertTerm<R: GcdDomain> {
    pub var: usize,
    pub num: HPoly<R>,
    pub den: R,
    pub pole: u32,
}

/// Unsummed certificate terms; `F = [F] + Σᵢ ∂ᵢAᵢ`.
#[derive(Clone, Debug, Default)]
pub struct Certificate<R: GcdDomain> {
    pub terms: Vec<CertTerm<R>>,
}

impl<R: GcdDomain> Certificate<R> {
    pub fn new() -> Self {
        Certificate { terms: vec![] }
    }

    pub fn extend(&mut self, o: Certificate<R>) {
        self.terms.extend(o.terms);
    }

    /// `c·A` for a scalar `c = cn/cd`.
    pub fn scale(&self, cn: &R, cd: &R) -> Self {
        Certificate {
            terms: self
                .terms
                .iter()
                .map(|t| CertTerm {
                    var: t.var,
                    num: t.num.scale(cn),
                    den: t.den.mul(cd),
                    pole: t.pole,
                })
                .collect(),
        }
    }

    /// `Aᵢ` summed over a common denominator.
    pub fn component(&self, i: usize, nvars: usize, f: &HPoly<R>) -> FPow<R> {
        let mut acc = FPow::zero(nvars);
        for t in self.terms.iter().filter(|t| t.var == i) {
            acc = acc.add(&FPow::new(t.num.poly().clone(), t.den.clone(), t.pole), f.poly());
        }
        acc
    }

    /// `Σᵢ ∂ᵢAᵢ` as one fraction.
    pub fn divergence(&self, nvars: usize, f: &HPoly<R>) -> FPow<R> {
        let mut acc = FPow::zero(nvars);
        for i in 0..nvars {
            let a = self.component(i, nvars, f);
            acc = acc.add(&a.partial(i, f.poly()), f.poly());
        }
        acc
    }
}

/// Algorithm 3: reduces `F = num/(den·f^ℓ)` modulo derivatives.
///
/// Returns the reduced form and, when `track` is set, the certificate.
pub fn reduce<R: GcdDomain>(
    input: &IntegralFraction<R>,
    family: &SplitFamily<R>,
    track: bool,
) -> Result<(ReducedForm<R>, Option<Certificate<R>>)> {
    let f = family.f();
    let nv = f.nvars();
    let n = nv - 1;
    let d = f.degree();
    if input.num.nvars() != nv {
        return Err(Error::DegreeError("variable count mismatch".into()));
    }
    if input.num.degree() as i64 != input.pole as i64 * d as i64 - nv as i64 {
        return Err(Error::DegreeError(format!(
            "numerator degree {} does not match pole order {} and degree {}",
            input.num.degree(),
            input.pole,
            d
        )));
    }
    let mut parts: Vec<Option<(HPoly<R>, R)>> = vec![None; n];
    let mut cert = track.then(Certificate::new);
    let mut cur = input.num.clone();
    let mut den = input.den.clone();
    let mut l = input.pole;
    while !cur.is_zero() {
        if l == 1 {
            parts[0] = Some((cur, den));
            break;
        }
        let dec = family.decompose(&cur)?;
        let den_e = den.mul(&dec.den);
        if !dec.r.is_zero() {
            if l as usize > n {
                return Err(Error::NotReducible(l));
            }
            parts[l as usize - 1] = Some(simplify(dec.r, den_e.clone()));
        }
        let lm1 = R::from_i64(l as i64 - 1);
        let next_den = den_e.mul(&lm1);
        if let Some(c) = cert.as_mut() {
            for (i, v) in dec.v.iter().enumerate() {
                if !v.is_zero() {
                    c.terms.push(CertTerm {
                        var: i,
                        num: v.neg(),
                        den: next_den.clone(),
                        pole: l - 1,
                    });
                }
            }
        }
        let mut next = dec.v[0].partial(0);
        for (i, v) in dec.v.iter().enumerate().skip(1) {
            next = next.add(&v.partial(i));
        }
        let (c2, d2) = simplify(next, next_den);
        cur = c2;
        den = d2;
        l -= 1;
    }
    Ok((assemble(parts, nv, d), cert))
}

fn assemble<R: GcdDomain>(parts: Vec<Option<(HPoly<R>, R)>>, nv: usize, d: u32) -> ReducedForm<R> {
    let mut out = ReducedForm::zero(nv, d);
    let mut l = R::one();
    for (_, pd) in parts.iter().flatten() {
        l = l.lcm(pd);
    }
    let (l, _) = l.normalize_unit();
    for (k, p) in parts.into_iter().enumerate() {
        if let Some((num, pd)) = p {
            out.slots[k] = num.scale(&l.div_known(&pd));
        }
    }
    out.den = l;
    // common content of all slots with the denominator
    let mut g = out.den.clone();
    for s in &out.slots {
        for (_, c) in s.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
    }
    if !g.is_one() {
        let (g, _) = g.normalize_unit();
        out.den = out.den.div_known(&g);
        for s in out.slots.iter_mut() {
            *s = s.map_coeffs(|c| c.div_known(&g));
        }
    }
    if out.is_zero() {
        out.den = R::one();
    }
    out
}

/// `∂_t` of a reduced form with top slot `m`, written over `f^{m+1}`
/// (over `f^{n+1}` when zero):
/// `B = Σ_k ((∂_t b_k·P − b_k·P′)·f − k·b_k·P·∂_t f)·f^{m−k}` over `P²`.
pub fn t_derivative_reduced<R: GcdDomain + Differential>(g: &ReducedForm<R>, f: &HPoly<R>) -> IntegralFraction<R> {
    let nv = f.nvars();
    let n = nv - 1;
    let d = f.degree();
    let p = &g.den;
    let dp = p.d_t();
    let df = f.d_t();
    let m = match g.top_slot() {
        0 => n,
        m => m,
    };
    let mut b = HPoly::zero(nv, ((m as u32 + 1) * d) - nv as u32);
    for (idx, bk) in g.slots.iter().enumerate() {
        if bk.is_zero() {
            continue;
        }
        let k = idx + 1;
        let inner = bk.d_t().scale(p).sub(&bk.scale(&dp));
        let term = inner
            .mul(f)
            .sub(&bk.mul(&df).scale(&p.mul(&R::from_i64(k as i64))))
            .mul(&f.pow((m - k) as u32));
        b = b.add(&term);
    }
    IntegralFraction::new(b, p.mul(p), m as u32 + 1)
}

/// Rewrites a reduced form as a single `IntegralFraction` over `f^{top}`.
pub fn reduced_to_fraction<R: GcdDomain>(g: &ReducedForm<R>, f: &HPoly<R>) -> Option<IntegralFraction<R>> {
    let top = g.top_slot();
    if top == 0 {
        return None;
    }
    let nv = f.nvars();
    let mut acc = HPoly::zero(nv, top as u32 * f.degree() - nv as u32);
    for (idx, bk) in g.slots.iter().enumerate().take(top) {
        if !bk.is_zero() {
            acc = acc.add(&bk.mul(&f.pow((top - idx - 1) as u32)));
        }
    }
    Some(IntegralFraction::new(acc, g.den.clone(), top as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macaulay::PivotPolicy;
    use crate::multipoly::Monomial;
    use crate::multipoly::MPoly;
    use crate::scalars::{RatFunc, ZPoly};

    fn x(nv: usize, i: usize) -> MPoly<ZPoly> {
        MPoly::var(nv, i)
    }

    fn h(p: MPoly<ZPoly>) -> HPoly<ZPoly> {
        HPoly::from_poly(p).unwrap()
    }

    fn conic() -> HPoly<ZPoly> {
        h(x(2, 0).pow(2).add(&x(2, 1).pow(2)))
    }

    fn sound(input: &IntegralFraction<ZPoly>, fam: &SplitFamily<ZPoly>) -> ReducedForm<ZPoly> {
        let (g, cert) = reduce(input, fam, true).unwrap();
        let cert = cert.unwrap();
        let f = fam.f();
        let lhs = input.to_fpow();
        let rhs = g.to_fpow(f).add(&cert.divergence(f.nvars(), f), f.poly());
        assert!(lhs.sub(&rhs, f.poly()).is_zero(), "certificate identity fails");
        g
    }

    #[test]
    fn pole_one_is_unchanged() {
        let fam = SplitFamily::new(conic(), PivotPolicy::default());
        let a = IntegralFraction::new(HPoly::monomial(Monomial::one(2), ZPoly::from_i64s(&[1])), ZPoly::from_i64s(&[1]), 1);
        let g = sound(&a, &fam);
        assert_eq!(g.slots[0], a.num);
    }

    #[test]
    fn conic_examples() {
        let fam = SplitFamily::new(conic(), PivotPolicy::default());
        let one = ZPoly::from_i64s(&[1]);
        // x0 x1 / f^2 is exact
        let a = IntegralFraction::new(h(x(2, 0).mul(&x(2, 1))), one.clone(), 2);
        assert!(sound(&a, &fam).is_zero());
        // x0^2 / f^2 reduces to 1/(2f)
        let a = IntegralFraction::new(h(x(2, 0).pow(2)), one.clone(), 2);
        let g = sound(&a, &fam);
        assert_eq!(g.den, ZPoly::from_i64s(&[2]));
        assert_eq!(g.slots[0], HPoly::monomial(Monomial::one(2), one));
    }

    #[test]
    fn t_derivative_of_slots() {
        // n = 1, G = 1/f with f = x0^2 - t x1^2 gives x1^2/f^2
        let t = MPoly::constant(2, ZPoly::t());
        let f = h(x(2, 0).pow(2).sub(&t.mul(&x(2, 1).pow(2))));
        let mut g = ReducedForm::zero(2, 2);
        g.slots[0] = HPoly::monomial(Monomial::one(2), ZPoly::from_i64s(&[1]));
        let b = t_derivative_reduced(&g, &f);
        assert_eq!(b.pole, 2);
        assert_eq!(b.num, h(x(2, 1).pow(2)));
        assert!(t_derivative_reduced(&ReducedForm::zero(2, 2), &f).is_zero());
    }

    #[test]
    fn integral_conversion() {
        // (x1/2) / ((t/3) x0^2 + x1^2)
        let tt = RatFunc::t();
        let third = RatFunc::from_parts(ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[3]));
        let half = RatFunc::from_parts(ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[2]));
        let f = HPoly::from_poly(
            MPoly::var(2, 0).pow(2).scale(&tt.mul(&third)).add(&MPoly::var(2, 1).pow(2)),
        )
        .unwrap();
        let num = HPoly::monomial(Monomial::one(2), half.clone());
        let pf = PoleFraction::new(num, f, 1).unwrap();
        let (ifr, fi) = to_integral(&pf);
        // f = (1/3)(t x0^2 + 3 x1^2): 1/2 / f = (3/2) / fi
        assert_eq!(fi, h(x(2, 0).pow(2).scale(&ZPoly::t()).add(&x(2, 1).pow(2).scale(&ZPoly::from_i64s(&[3])))));
        assert_eq!(ifr.den, ZPoly::from_i64s(&[2]));
        assert_eq!(ifr.num, HPoly::monomial(Monomial::one(2), ZPoly::from_i64s(&[3])));
    }
}
