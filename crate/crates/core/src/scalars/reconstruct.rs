//! Univariate rational function reconstruction and the two-stage limit
//! `R(x, 0)` of a bivariate fraction known only through its specializations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::modp;
use super::ratfunc::RatFunc;
use super::upoly::UPoly;
use super::Rat;
use crate::error::{Error, Result};

/// Finds `P/Q` with `deg P ≤ num_bound`, `deg Q ≤ den_bound` matching the
/// samples. A value of `None` marks a pole; the denominator is required to
/// vanish there.
///
/// Points where the reconstructed denominator vanishes are not checked
/// against their sample value.
pub fn rational_reconstruct(
    samples: &[(Rat, Option<Rat>)],
    num_bound: usize,
    den_bound: usize,
) -> Result<RatFunc> {
    if samples.len() < num_bound + den_bound + 1 {
        return Err(Error::InsufficientPoints(format!(
            "{} samples for bounds ({}, {})",
            samples.len(),
            num_bound,
            den_bound
        )));
    }
    let poles: Vec<Rat> = samples
        .iter()
        .filter(|s| s.1.is_none())
        .map(|s| s.0.clone())
        .collect();
    if poles.len() > den_bound {
        return Err(Error::NoSolution(format!(
            "{} poles exceed denominator bound {}",
            poles.len(),
            den_bound
        )));
    }
    let w = UPoly::from_roots(&poles);
    let reduced_den = den_bound - poles.len();
    let pts: Vec<(Rat, Rat)> = samples
        .iter()
        .filter_map(|(x, y)| y.as_ref().map(|y| (x.clone(), y * w.eval(x))))
        .collect();

    let (p, q) = cauchy(&pts, num_bound, reduced_den)?;
    if q.degree().is_none_or(|k| k > reduced_den) {
        return Err(Error::NoSolution("denominator bound exceeded".into()));
    }
    let den = q.mul(&w);
    let r = RatFunc::from_upolys(&p, &den);
    let rd = r.denominator();
    for (x, y) in samples {
        match y {
            None => {
                if !rd.eval(x).is_zero() {
                    return Err(Error::NoSolution(format!("expected a pole at {}", x)));
                }
            }
            Some(y) => {
                if let Some(v) = r.eval(x) {
                    if &v != y {
                        return Err(Error::NoSolution(format!("mismatch at {}", x)));
                    }
                }
            }
        }
    }
    if r.numerator().degree().unwrap_or(0) > num_bound || rd.degree().unwrap_or(0) > den_bound {
        return Err(Error::NoSolution("degree bounds exceeded".into()));
    }
    Ok(r)
}

/// Extended Euclid on `(M, V)` stopped at the first remainder of degree at
/// most `num_bound`, where `M = ∏(x − xᵢ)` and `V` interpolates the points.
///
/// Runs modulo word primes; coefficients are recombined by CRT and rational
/// number reconstruction, and a candidate is returned only once it
/// interpolates every point exactly. By uniqueness of the interpolant within
/// the bounds this is the same fraction as over ℚ.
fn cauchy(pts: &[(Rat, Rat)], num_bound: usize, den_bound: usize) -> Result<(UPoly, UPoly)> {
    if pts.is_empty() {
        return Ok((UPoly::zero(), UPoly::one()));
    }
    let mut acc: Option<(Vec<BigInt>, BigInt, (usize, usize))> = None;
    let mut bad = 0usize;
    let mut refuted = 0usize;
    let mut images = 0usize;
    let mut next_try = 1usize;
    for &p in modp::primes() {
        let img = match cauchy_mod(pts, num_bound, den_bound, p) {
            Image::Bad => {
                bad += 1;
                if bad > 64 {
                    return Err(Error::NoSolution("no usable modular image".into()));
                }
                continue;
            }
            Image::NoSolution => {
                // a solution over ℚ would survive at all but finitely many primes
                refuted += 1;
                if refuted >= 2 {
                    return Err(Error::NoSolution("degree bounds too small".into()));
                }
                continue;
            }
            Image::Found(n, d) => (n, d),
        };
        let shape = (img.0.len(), img.1.len());
        let flat: Vec<u64> = img.0.iter().chain(&img.1).copied().collect();
        match &mut acc {
            Some((_, _, s)) if shape < *s => continue,
            Some((vals, m, s)) if shape == *s => {
                for (v, &r) in vals.iter_mut().zip(&flat) {
                    *v = crt(v, m, r, p);
                }
                *m *= BigInt::from(p);
                images += 1;
            }
            _ => {
                acc = Some((flat.iter().map(|&r| BigInt::from(r)).collect(), BigInt::from(p), shape));
                images = 1;
                next_try = 1;
            }
        }
        if images < next_try {
            continue;
        }
        next_try = (images * 3).div_ceil(2).max(images + 1);
        let (vals, m, (ln, _)) = acc.as_ref().unwrap();
        let Some(q) = vals.iter().map(|v| rat_reconstruct(v, m)).collect::<Option<Vec<Rat>>>() else {
            continue;
        };
        let cand = (UPoly::new(q[..*ln].to_vec()), UPoly::new(q[*ln..].to_vec()));
        if interpolates(&cand, pts) {
            return Ok(cand);
        }
    }
    Err(Error::NoSolution("reconstruction did not stabilize".into()))
}

/// Exact check in integer arithmetic: with `x = a/b`, compares the
/// homogenized values `b^D·P(a/b)` and `b^D·Q(a/b)`.
fn interpolates((num, den): &(UPoly, UPoly), pts: &[(Rat, Rat)]) -> bool {
    if den.is_zero() {
        return false;
    }
    let mut l = BigInt::from(1);
    for c in num.coeffs().iter().chain(den.coeffs()) {
        l = l.lcm(c.denom());
    }
    let int = |u: &UPoly| -> Vec<BigInt> { u.coeffs().iter().map(|c| (c * &l).to_integer()).collect() };
    let (pn, qn) = (int(num), int(den));
    let deg = pn.len().max(qn.len());
    let hom = |c: &[BigInt], a: &BigInt, b: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        let mut bp = BigInt::from(1);
        for i in (0..deg).rev() {
            let ci = c.get(i).cloned().unwrap_or_default();
            acc = acc * a + ci * &bp;
            bp *= b;
        }
        // acc = Σ c_i a^i b^{deg-1-i}
        acc
    };
    pts.iter().all(|(x, y)| {
        let (a, b) = (x.numer(), x.denom());
        hom(&pn, a, b) * y.denom() == y.numer() * hom(&qn, a, b)
    })
}

/// `x ≡ a (mod m)`, `x ≡ r (mod p)`, in `[0, m·p)`.
pub(crate) fn crt(a: &BigInt, m: &BigInt, r: u64, p: u64) -> BigInt {
    let am = modp::reduce(a, p);
    let mm = modp::reduce(m, p);
    let k = modp::mul_mod(modp::sub_mod(r, am, p), modp::inv_mod(mm, p), p);
    a + m * BigInt::from(k)
}

/// `n/d ≡ v (mod m)` with `|n|, |d| ≤ √(m/2)`.
pub(crate) fn rat_reconstruct(v: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), v.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Smallest `e` such that a fraction of bidegree `(e, e)` through the
/// first `2e + 1` samples over 𝔽_p also fits the remaining ones; `None`
/// when there are too few samples to tell.
pub(crate) fn fitting_degree_mod_p(xs: &[u64], ys: &[u64], p: u64) -> Option<usize> {
    let n = xs.len();
    let mut e = 0;
    while 2 * e + 3 <= n {
        let m = 2 * e + 1;
        let pts: Vec<(Rat, Rat)> = xs[..m]
            .iter()
            .zip(&ys[..m])
            .map(|(&x, &y)| (Rat::from_integer(x.into()), Rat::from_integer(y.into())))
            .collect();
        if let Image::Found(r, u) = cauchy_mod(&pts, e, e, p) {
            if xs[m..].iter().zip(&ys[m..]).all(|(&x, &y)| horner(&r, x, p) == modp::mul_mod(y, horner(&u, x, p), p)) {
                return Some(e);
            }
        }
        e += 1;
    }
    None
}

enum Image {
    /// The prime divides a denominator or merges two abscissas.
    Bad,
    NoSolution,
    Found(Vec<u64>, Vec<u64>),
}

/// Monic-denominator Cauchy interpolation over 𝔽_p.
fn cauchy_mod(pts: &[(Rat, Rat)], num_bound: usize, den_bound: usize, p: u64) -> Image {
    let red = |q: &Rat| -> Option<u64> {
        let d = modp::reduce(q.denom(), p);
        (d != 0).then(|| modp::mul_mod(modp::reduce(q.numer(), p), modp::inv_mod(d, p), p))
    };
    let (Some(xs), Some(ys)) = (
        pts.iter().map(|(x, _)| red(x)).collect::<Option<Vec<u64>>>(),
        pts.iter().map(|(_, y)| red(y)).collect::<Option<Vec<u64>>>(),
    ) else {
        return Image::Bad;
    };
    let Some(v) = interpolate_mod(&xs, &ys, p) else {
        return Image::Bad;
    };
    let mut m = vec![1u64];
    for &x in &xs {
        m = mul_poly(&m, &[(p - x % p) % p, 1], p);
    }
    let (mut r0, mut r1) = (m, v);
    let (mut u0, mut u1) = (vec![], vec![1u64]);
    while r1.len() > num_bound + 1 {
        let (q, r) = div_rem_mod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let u2 = sub_poly(&u0, &mul_poly(&q, &u1, p), p);
        u0 = std::mem::replace(&mut u1, u2);
    }
    modp::trim(&mut u1);
    let Some(&lc) = u1.last() else {
        return Image::NoSolution;
    };
    // the interpolant must have the right shape and not vanish at a sample
    if u1.len() > den_bound + 1 || xs.iter().any(|&x| horner(&u1, x, p) == 0) {
        return Image::NoSolution;
    }
    let inv = modp::inv_mod(lc, p);
    let scale = |v: &mut Vec<u64>| v.iter_mut().for_each(|c| *c = modp::mul_mod(*c, inv, p));
    scale(&mut r1);
    scale(&mut u1);
    Image::Found(r1, u1)
}

pub(crate) fn horner(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| modp::add_mod(modp::mul_mod(acc, x, p), c, p))
}

pub(crate) fn mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modp::add_mod(out[i + j], modp::mul_mod(x, y, p), p);
        }
    }
    modp::trim(&mut out);
    out
}

pub(crate) fn sub_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = modp::sub_mod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p);
    }
    modp::trim(&mut out);
    out
}

pub(crate) fn div_rem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    modp::trim(&mut r);
    let db = b.len() - 1;
    let inv = modp::inv_mod(b[db], p);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            let c = modp::mul_mod(lead, inv, p);
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = modp::sub_mod(r[shift + i], modp::mul_mod(c, bc, p), p);
            }
        }
        r.pop();
    }
    modp::trim(&mut r);
    modp::trim(&mut q);
    (q, r)
}

/// Newton interpolation over 𝔽_p.
pub(crate) fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = modp::sub_mod(xs[i], xs[i - j], p);
            if dx == 0 {
                return None;
            }
            c[i] = modp::mul_mod(modp::sub_mod(c[i], c[i - 1], p), modp::inv_mod(dx, p), p);
        }
    }
    let mut out = vec![c[n - 1]];
    for i in (0..n - 1).rev() {
        out = mul_poly(&out, &[(p - xs[i] % p) % p, 1], p);
        if out.is_empty() {
            out = vec![0];
        }
        out[0] = modp::add_mod(out[0], c[i], p);
    }
    modp::trim(&mut out);
    Some(out)
}

/// `R(x, 0)` from specializations `v ↦ R(x, v)` for `v = 1, 2, 3, …`, where
/// `R` has degree at most `deg_x_bound` in `x` and `deg_y_bound` in `y` (in
/// both numerator and denominator). The evaluator may decline a point by
/// returning `None`. Returns `Ok(None)` when the denominator vanishes at
/// `y = 0`.
pub fn limit_at_zero<E>(mut evaluator: E, deg_x_bound: usize, deg_y_bound: usize) -> Result<Option<RatFunc>>
where
    E: FnMut(&Rat) -> Result<Option<RatFunc>>,
{
    let need_v = 2 * deg_y_bound + 1;
    let mut spec: Vec<(Rat, RatFunc)> = Vec::with_capacity(need_v);
    let mut v = 0i64;
    let mut declined = 0usize;
    while spec.len() < need_v {
        v += 1;
        let vv = Rat::from_integer(v.into());
        match evaluator(&vv)? {
            Some(r) => spec.push((vv, r)),
            None => {
                declined += 1;
                if declined > 64 + 4 * need_v {
                    return Err(Error::InsufficientPoints("evaluator declined too many points".into()));
                }
            }
        }
    }
    let need_u = 2 * deg_x_bound + 1;
    let mut at_zero: Vec<(Rat, Option<Rat>)> = Vec::with_capacity(need_u);
    for u in 0..need_u as i64 {
        let uu = Rat::from_integer(u.into());
        let ys: Vec<(Rat, Option<Rat>)> = spec.iter().map(|(v, r)| (v.clone(), r.eval(&uu))).collect();
        if ys.iter().all(|y| y.1.is_none()) {
            // x − u divides the denominator
            at_zero.push((uu, None));
            continue;
        }
        let in_y = rational_reconstruct(&ys, deg_y_bound, deg_y_bound)?;
        at_zero.push((uu, in_y.eval(&Rat::zero())));
    }
    let poles = at_zero.iter().filter(|s| s.1.is_none()).count();
    if poles > deg_x_bound {
        return Ok(None);
    }
    rational_reconstruct(&at_zero, deg_x_bound, deg_x_bound).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat_int;
    use crate::scalars::traits::{Field, Ring};
    use crate::scalars::zpoly::ZPoly;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    #[test]
    fn round_trip_simple() {
        let r = RatFunc::new(zp(&[0, 0, 1]), zp(&[1, 1]));
        let s: Vec<_> = (1..=4).map(|i| (rat_int(i), r.eval(&rat_int(i)))).collect();
        assert_eq!(rational_reconstruct(&s, 2, 1).unwrap(), r);
    }

    #[test]
    fn constant_and_violation() {
        let s: Vec<_> = (1..=3).map(|i| (rat_int(i), Some(rat_int(5)))).collect();
        assert_eq!(rational_reconstruct(&s[..1], 0, 0).unwrap(), RatFunc::from_rat(&rat_int(5)));
        let s: Vec<_> = (1..=2).map(|i| (rat_int(i), Some(rat_int(i)))).collect();
        assert!(matches!(rational_reconstruct(&s, 0, 0), Err(Error::NoSolution(_))));
    }

    #[test]
    fn pole_samples() {
        // 1/(x - 2) sampled through its pole
        let r = RatFunc::new(zp(&[1]), zp(&[-2, 1]));
        let s: Vec<_> = (0..4).map(|i| (rat_int(i), r.eval(&rat_int(i)))).collect();
        assert!(s[2].1.is_none());
        assert_eq!(rational_reconstruct(&s, 1, 1).unwrap(), r);
    }

    #[test]
    fn limit_examples() {
        // (x + y)/(1 + x y) at y = 0 is x
        let got = limit_at_zero(
            |v: &Rat| {
                let x = RatFunc::t();
                let v = RatFunc::from_rat(v);
                let one = RatFunc::from_rat(&rat_int(1));
                Ok(Some(x.add(&v).div(&one.add(&x.mul(&v)))))
            },
            1,
            1,
        )
        .unwrap();
        assert_eq!(got, Some(RatFunc::t()));
        // x / y has no finite limit
        let got = limit_at_zero(|v: &Rat| Ok(Some(RatFunc::t().mul(&RatFunc::from_rat(&(rat_int(1) / v))))), 1, 1)
            .unwrap();
        assert_eq!(got, None);
        let got = limit_at_zero(|_: &Rat| Ok(Some(RatFunc::t())), 1, 0).unwrap();
        assert_eq!(got, Some(RatFunc::t()));
        // pole at x = 0, a sample abscissa
        let inv = RatFunc::new(zp(&[1]), zp(&[0, 2]));
        let got = limit_at_zero(|_: &Rat| Ok(Some(inv.clone())), 1, 1).unwrap();
        assert_eq!(got, Some(inv));
    }
}
