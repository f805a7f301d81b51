//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! This is the numerator/denominator ring of ℚ(t). Products switch to
//! Kronecker substitution once the operands are large enough for the big
//! integer multiplier to beat the schoolbook loop; gcds are computed by the
//! classical modular (Brown/Collins) algorithm with exact trial-division
//! verification, so every result is an exact ℤ\[t\] gcd.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::traits;
use super::Rat;

/// Polynomial in ℤ\[t\], coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

const KRONECKER_MIN_LEN: usize = 12;

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(v: BigInt) -> Self {
        Self::new(vec![v])
    }

    /// `coef · t^k`.
    pub fn monomial(coef: BigInt, k: usize) -> Self {
        if coef.is_zero() {
            return Self::default();
        }
        let mut c = vec![BigInt::zero(); k];
        c.push(coef);
        ZPoly { c }
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.c.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn max_bits(&self) -> u64 {
        self.c.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.c.clone();
        for (a, b) in c.iter_mut().zip(&short.c) {
            *a += b;
        }
        Self::new(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = self.c.clone();
        c.resize(n, BigInt::zero());
        for (a, b) in c.iter_mut().zip(&o.c) {
            *a -= b;
        }
        Self::new(c)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        ZPoly {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    /// Exact division of every coefficient; panics if inexact in debug builds.
    pub fn div_int(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        ZPoly {
            c: self
                .c
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(k);
                    debug_assert!(r.is_zero(), "inexact integer division");
                    q
                })
                .collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        if self.c.len() == 1 {
            return o.mul_int(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.mul_int(&o.c[0]);
        }
        if self.c.len().min(o.c.len()) >= KRONECKER_MIN_LEN {
            return kronecker_mul(self, o);
        }
        self.mul_schoolbook(o)
    }

    pub(crate) fn mul_schoolbook(&self, o: &Self) -> Self {
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigInt::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().unwrap().is_negative() {
            g = -g;
        }
        self.div_int(&g)
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::default();
        }
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let (p, q) = (x.numer(), x.denom());
        // Σ c_i p^i q^(n-i) / q^n
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.c.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // qpow = q^(n+1); one factor too many
        Rat::new(acc * q, qpow)
    }

    /// Residues modulo a word prime.
    pub(crate) fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.c.iter().map(|x| modp::reduce(x, p)).collect();
        modp::trim(&mut v);
        v
    }

    /// Exact quotient `self / d` in ℤ\[t\], or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::default());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        if d.c.len() == 1 {
            let k = &d.c[0];
            let mut q = Vec::with_capacity(self.c.len());
            for x in &self.c {
                let (qq, r) = x.div_rem(k);
                if !r.is_zero() {
                    return None;
                }
                q.push(qq);
            }
            return Some(ZPoly { c: q });
        }
        // cheap necessary conditions before the full division
        let (q0, r0) = self.lc().unwrap().div_rem(d.lc().unwrap());
        if !r0.is_zero() {
            return None;
        }
        let _ = q0;
        if !d.c[0].is_zero() && !self.c[0].is_zero() && !(&self.c[0] % &d.c[0]).is_zero() {
            return None;
        }
        if !self.divisible_mod_prime(d) {
            return None;
        }
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let lc = d.lc().unwrap();
        let mut q = vec![BigInt::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] -= &qq * dc;
            }
            q[k] = qq;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Long division when the quotient is known to be exact; skips the
    /// modular precheck of [`ZPoly::div_exact`].
    fn div_known_impl(&self, d: &Self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        if d.c.len() == 1 {
            return self.div_int(&d.c[0]);
        }
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let lc = d.lc().unwrap();
        assert!(self.c.len() > dd, "inexact division");
        let mut q = vec![BigInt::zero(); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let (qq, rem) = r[k + dd].div_rem(lc);
            assert!(rem.is_zero(), "inexact division");
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] -= &qq * dc;
            }
            q[k] = qq;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact division");
        Self::new(q)
    }

    /// Necessary condition for divisibility: the remainder vanishes modulo
    /// one word prime that does not divide the leading coefficient of `d`.
    fn divisible_mod_prime(&self, d: &Self) -> bool {
        for &p in modp::primes().iter().take(8) {
            if modp::reduce(d.lc().unwrap(), p) == 0 {
                continue;
            }
            let mut a = self.reduce_mod(p);
            let b = d.reduce_mod(p);
            modp::rem_in_place(&mut a, &b, p);
            return a.is_empty();
        }
        true
    }

    /// Exact gcd in ℤ\[t\], normalized to a positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part().mul_int(&o.content());
        }
        if o.is_zero() {
            return self.primitive_part().mul_int(&self.content());
        }
        let cg = self.content().gcd(&o.content());
        if self.c.len() == 1 || o.c.len() == 1 {
            return Self::constant(cg);
        }
        let a = self.primitive_part();
        let b = o.primitive_part();
        if a == b {
            return a.mul_int(&cg);
        }
        let g = modular_gcd_primitive(&a, &b);
        g.mul_int(&cg)
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match i {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push('^');
                        out.push_str(&i.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({})", self)
    }
}

// ---- Kronecker substitution ----

fn or_bits(dst: &mut [u32], src: &[u32], bit_off: usize) {
    let w = bit_off / 32;
    let s = bit_off % 32;
    for (i, &x) in src.iter().enumerate() {
        if s == 0 {
            dst[w + i] |= x;
        } else {
            dst[w + i] |= x << s;
            let hi = x >> (32 - s);
            if hi != 0 {
                dst[w + i + 1] |= hi;
            }
        }
    }
}

fn pack(p: &ZPoly, k: usize) -> BigInt {
    let words = (k * p.c.len()).div_ceil(32) + 2;
    let mut pos = vec![0u32; words];
    let mut neg = vec![0u32; words];
    let mut any_neg = false;
    for (i, c) in p.c.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let digits = c.magnitude().to_u32_digits();
        if c.is_negative() {
            any_neg = true;
            or_bits(&mut neg, &digits, i * k);
        } else {
            or_bits(&mut pos, &digits, i * k);
        }
    }
    let pv = BigInt::from_biguint(Sign::Plus, BigUint::new(pos));
    if any_neg {
        pv - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    } else {
        pv
    }
}

fn extract_bits(digits: &[u32], bit_off: usize, k: usize) -> BigUint {
    let w = bit_off / 32;
    let s = bit_off % 32;
    let nw = k.div_ceil(32);
    let mut out = Vec::with_capacity(nw);
    for j in 0..nw {
        let lo = digits.get(w + j).copied().unwrap_or(0);
        let hi = digits.get(w + j + 1).copied().unwrap_or(0);
        let v = if s == 0 {
            lo
        } else {
            (lo >> s) | (hi << (32 - s))
        };
        out.push(v);
    }
    let rem = k % 32;
    if rem != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u32 << rem) - 1;
        }
    }
    BigUint::new(out)
}

fn unpack(v: &BigInt, k: usize, len: usize) -> ZPoly {
    let negate = v.is_negative();
    let digits = v.magnitude().to_u32_digits();
    let half = BigUint::one() << (k - 1);
    let full = BigInt::one() << k;
    let mut carry = false;
    let mut c = Vec::with_capacity(len);
    for i in 0..len {
        let mut chunk = extract_bits(&digits, i * k, k);
        if carry {
            chunk += 1u32;
        }
        let val = if chunk >= half {
            carry = true;
            BigInt::from_biguint(Sign::Plus, chunk) - &full
        } else {
            carry = false;
            BigInt::from_biguint(Sign::Plus, chunk)
        };
        c.push(if negate { -val } else { val });
    }
    debug_assert!(!carry);
    ZPoly::new(c)
}

fn kronecker_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.c.len().min(b.c.len()) as u64;
    let bound = a.max_bits() + b.max_bits() + (64 - n.leading_zeros() as u64) + 2;
    let k = bound as usize;
    let pa = pack(a, k);
    let pb = pack(b, k);
    unpack(&(pa * pb), k, a.c.len() + b.c.len() - 1)
}

// ---- modular gcd ----

/// gcd of two primitive polynomials of positive degree with positive leading
/// coefficients.
fn modular_gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let gamma = a.lc().unwrap().gcd(b.lc().unwrap());
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut acc_deg = usize::MAX;
    let mut last_candidate: Option<ZPoly> = None;
    for &p in modp::primes() {
        if modp::reduce(a.lc().unwrap(), p) == 0 || modp::reduce(b.lc().unwrap(), p) == 0 {
            continue;
        }
        let gp = modp::gcd_poly(a.reduce_mod(p), b.reduce_mod(p), p);
        let dg = gp.len() - 1;
        if dg == 0 {
            return ZPoly::constant(BigInt::one());
        }
        let gm = modp::reduce(&gamma, p);
        let gp: Vec<u64> = gp.iter().map(|&x| modp::mul_mod(x, gm, p)).collect();
        if dg > acc_deg {
            continue;
        }
        if dg < acc_deg {
            acc_deg = dg;
            acc = gp.iter().map(|&x| BigInt::from(x)).collect();
            modulus = BigInt::from(p);
            last_candidate = None;
            continue;
        }
        // CRT update
        let pb = BigInt::from(p);
        let minv = modp::inv_mod(modp::reduce(&modulus, p), p);
        let mut changed = false;
        for (h, &r) in acc.iter_mut().zip(&gp) {
            let hm = modp::reduce(h, p);
            let t = modp::mul_mod(modp::sub_mod(r, hm, p), minv, p);
            if t != 0 {
                changed = true;
                *h += &modulus * BigInt::from(t);
            }
        }
        modulus *= &pb;
        // keep symmetric representatives so that stabilization is detected
        // for negative coefficients as well
        let half = &modulus >> 1;
        for h in acc.iter_mut() {
            if *h > half {
                *h -= &modulus;
            }
        }
        if changed {
            last_candidate = None;
            continue;
        }
        // image stabilized: verify by trial division
        let cand = ZPoly::new(acc.clone()).primitive_part();
        if last_candidate.as_ref() == Some(&cand) {
            continue;
        }
        if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
        last_candidate = Some(cand);
    }
    unreachable!("prime supply exhausted in modular gcd")
}

// ---- trait impls ----

impl traits::Ring for ZPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(<BigInt as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn is_one(&self) -> bool {
        self.c.len() == 1 && One::is_one(&self.c[0])
    }
    fn add(&self, rhs: &Self) -> Self {
        ZPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ZPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ZPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn from_int(v: &BigInt) -> Self {
        Self::constant(v.clone())
    }
}

impl traits::GcdDomain for ZPoly {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        ZPoly::div_exact(self, rhs)
    }
    fn div_known(&self, rhs: &Self) -> Self {
        self.div_known_impl(rhs)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        ZPoly::gcd(self, rhs)
    }
    fn normalize_unit(&self) -> (Self, bool) {
        match self.lc() {
            Some(l) if l.is_negative() => (self.neg(), true),
            _ => (self.clone(), false),
        }
    }
    fn int_content(&self) -> BigInt {
        self.content()
    }
    fn div_int(&self, c: &BigInt) -> Self {
        ZPoly::div_int(self, c)
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        ZPoly::mul_int(self, c)
    }
    fn size_key(&self) -> (usize, u64) {
        (self.degree(), self.max_bits())
    }
    fn param_degree(&self) -> usize {
        self.degree()
    }
    fn eval_param(&self, at: &Rat) -> Rat {
        self.eval_rat(at)
    }
    fn param_derivative(&self) -> Self {
        self.derivative()
    }
}

impl traits::Differential for ZPoly {
    fn d_t(&self) -> Self {
        self.derivative()
    }
}

impl traits::Differential for BigInt {
    fn d_t(&self) -> Self {
        BigInt::zero()
    }
}

impl traits::Ring for BigInt {
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
        v.clone()
    }
}

impl traits::GcdDomain for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn normalize_unit(&self) -> (Self, bool) {
        if self.is_negative() {
            (-self, true)
        } else {
            (self.clone(), false)
        }
    }
    fn int_content(&self) -> BigInt {
        self.abs()
    }
    fn div_int(&self, c: &BigInt) -> Self {
        self / c
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self * c
    }
    fn size_key(&self) -> (usize, u64) {
        (0, self.bits())
    }
    fn param_degree(&self) -> usize {
        0
    }
    fn eval_param(&self, _at: &Rat) -> Rat {
        Rat::from_integer(self.clone())
    }
    fn param_derivative(&self) -> Self {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    #[test]
    fn gcd_of_common_factor() {
        // (t^2+1)(t-3) and (t^2+1)(2t+5)
        let f = zp(&[1, 0, 1]);
        let a = f.mul(&zp(&[-3, 1]));
        let b = f.mul(&zp(&[5, 2]));
        assert_eq!(a.gcd(&b), f);
        assert_eq!(a.mul_int(&BigInt::from(6)).gcd(&b.mul_int(&BigInt::from(4))), f.mul_int(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(zp(&[1, 1]).gcd(&zp(&[2, 1])), zp(&[1]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = zp(&[1, 2, 1]);
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[1, 1])));
        assert_eq!(a.div_exact(&zp(&[2, 1])), None);
        assert_eq!(zp(&[2, 4]).div_exact(&zp(&[2])), Some(zp(&[1, 2])));
        assert_eq!(zp(&[1, 2]).div_exact(&zp(&[2, 2])), None);
    }

    #[test]
    fn eval_rational_point() {
        // 3t^2 - t + 2 at t = 1/2 -> 3/4 - 1/2 + 2 = 9/4
        let p = zp(&[2, -1, 3]);
        assert_eq!(p.eval_rat(&Rat::new(1.into(), 2.into())), Rat::new(9.into(), 4.into()));
    }

    fn arb_poly(max_len: usize, bits: u32) -> impl Strategy<Value = ZPoly> {
        let m = 1i64 << bits.min(40);
        prop::collection::vec(-m..m, 0..max_len).prop_map(|v| zp(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn kronecker_matches_schoolbook(a in arb_poly(40, 40), b in arb_poly(40, 30)) {
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(kronecker_mul(&a, &b), a.mul_schoolbook(&b));
            }
        }

        #[test]
        fn gcd_divides_and_recovers_factor(a in arb_poly(8, 8), b in arb_poly(8, 8), g in arb_poly(6, 6)) {
            prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
            let x = a.mul(&g);
            let y = b.mul(&g);
            let h = x.gcd(&y);
            prop_assert!(x.div_exact(&h).is_some());
            prop_assert!(y.div_exact(&h).is_some());
            // g divides the gcd
            prop_assert!(h.div_exact(&g.primitive_part()).is_some());
        }
    }
}
