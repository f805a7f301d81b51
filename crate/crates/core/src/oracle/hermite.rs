//! Classical Hermite reduction of `a/f^ℓ` in one variable over ℚ(t), and
//! the creative telescoping it induces.

use crate::error::{Error, Result};
use crate::scalars::{Differential, Field, RatFunc, Ring, UPoly};
use crate::telescoper::DiffOp;

type P = UPoly<RatFunc>;

/// `a/f^ℓ = r/f + s + ∂_x(v/f^{ℓ−1})` with `deg r < deg f` and `s` a
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteReduction {
    pub r: P,
    pub s: P,
    pub v: P,
    pub v_pole: u32,
}

fn check_square_free(f: &P) -> Result<()> {
    match f.degree() {
        None => Err(Error::ZeroDenominator),
        Some(0) => Ok(()),
        Some(_) => {
            if f.gcd(&f.derivative()).degree() == Some(0) {
                Ok(())
            } else {
                Err(Error::NotSquareFree)
            }
        }
    }
}

pub fn hermite_reduce(a: &P, f: &P, ell: u32) -> Result<HermiteReduction> {
    check_square_free(f)?;
    if ell == 0 {
        // a polynomial is a derivative
        return Ok(HermiteReduction { r: P::zero(), s: a.clone(), v: P::zero(), v_pole: 0 });
    }
    let df = f.derivative();
    let (_, _, s2) = f.ext_gcd(&df);
    let mut cur = a.clone();
    let mut v_acc = P::zero();
    for l in (2..=ell).rev() {
        // cur = u·f + v·f'
        let v = cur.mul(&s2).rem(f);
        let (u, rem) = cur.sub(&v.mul(&df)).div_rem(f);
        if !rem.is_zero() {
            return Err(Error::Internal("Bezout step left a remainder".into()));
        }
        let k = RatFunc::from_i64(l as i64 - 1);
        cur = u.add(&v.derivative().scale(&k.inv()));
        v_acc = v_acc.sub(&v.mul(&f.pow(ell - l)).scale(&k.inv()));
    }
    let (s, r) = cur.div_rem(f);
    Ok(HermiteReduction { r, s, v: v_acc, v_pole: ell - 1 })
}

fn d_t(p: &P) -> P {
    P::new(p.coeffs().iter().map(|c| c.d_t()).collect())
}

/// `∂_t(N/f^m) = (∂_t N·f − m·N·∂_t f) / f^{m+1}`.
fn t_derivative(num: &P, f: &P, m: u32) -> P {
    d_t(num).mul(f).sub(&num.mul(&d_t(f)).scale(&RatFunc::from_i64(m as i64)))
}

/// Minimal telescoper of `a/f^ℓ` from the reduced forms of its
/// `t`-derivatives: the first linear relation among `r_0, r_1, …`.
pub fn hermite_telescoper(a: &P, f: &P, ell: u32) -> Result<DiffOp> {
    check_square_free(f)?;
    let df = f.degree().unwrap_or(0);
    let coords = |r: &P| (0..df).map(|i| r.coeff(i)).collect::<Vec<_>>();
    // echelon rows: (pivot, vector, combination of the r_j)
    let mut basis: Vec<(usize, Vec<RatFunc>, Vec<RatFunc>)> = vec![];
    let (mut num, mut pole) = (a.clone(), ell);
    for i in 0..=df {
        let mut v = coords(&hermite_reduce(&num, f, pole)?.r);
        let mut comb = vec![RatFunc::zero(); i + 1];
        comb[i] = RatFunc::one();
        for (piv, bv, bc) in &basis {
            let x = v[*piv].clone();
            if x.is_zero() {
                continue;
            }
            for (vi, b) in v.iter_mut().zip(bv) {
                *vi = vi.sub(&x.mul(b));
            }
            for (ci, b) in comb.iter_mut().zip(bc) {
                *ci = ci.sub(&x.mul(b));
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(DiffOp::from_ratfuncs(&comb)),
            Some(piv) => {
                let inv = v[piv].inv();
                let v = v.iter().map(|x| x.mul(&inv)).collect();
                let comb = comb.iter().map(|x| x.mul(&inv)).collect();
                basis.push((piv, v, comb));
            }
        }
        num = t_derivative(&num, f, pole);
        pole += 1;
    }
    Err(Error::Internal("more independent reduced forms than deg f".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ZPoly;

    fn c(v: &[i64]) -> RatFunc {
        RatFunc::from_poly(ZPoly::from_i64s(v))
    }

    fn p(cs: &[RatFunc]) -> P {
        P::new(cs.to_vec())
    }

    fn x2_minus_t() -> P {
        p(&[c(&[0, -1]), c(&[0]), c(&[1])])
    }

    /// `r/f + s + ∂_x(v/f^k)` over the common denominator `f^max(1,ℓ)`.
    fn recombine(h: &HermiteReduction, f: &P, ell: u32) -> P {
        let top = ell.max(1);
        let k = h.v_pole;
        let mut out = h.r.mul(&f.pow(top - 1)).add(&h.s.mul(&f.pow(top)));
        if k > 0 {
            let dv = h.v.derivative().mul(f).sub(&h.v.mul(&f.derivative()).scale(&RatFunc::from_i64(k as i64)));
            out = out.add(&dv.mul(&f.pow(top - k - 1)));
        }
        out
    }

    #[test]
    fn simple_pole_is_reduced() {
        let f = x2_minus_t();
        let h = hermite_reduce(&P::one(), &f, 1).unwrap();
        assert_eq!(h.r, P::one());
        assert!(h.v.is_zero() && h.s.is_zero());
    }

    #[test]
    fn derivative_reduces_to_zero() {
        let f = x2_minus_t();
        // x/(x²−t)² = ∂_x(−1/(2(x²−t)))
        let a = p(&[c(&[0]), c(&[1])]);
        let h = hermite_reduce(&a, &f, 2).unwrap();
        assert!(h.r.is_zero());
        assert_eq!(h.v, P::constant(RatFunc::from_rat(&crate::scalars::rat(-1, 2))));
        assert_eq!(recombine(&h, &f, 2), a);
        // ∂_x(1/f) = −f'/f²
        let h = hermite_reduce(&f.derivative().neg(), &f, 2).unwrap();
        assert!(h.r.is_zero());
    }

    #[test]
    fn reconstructs_input() {
        let f = p(&[c(&[1, 1]), c(&[0, 0, 1]), c(&[2]), c(&[1])]);
        let a = p(&[c(&[3]), c(&[0, 1]), c(&[1, 0, 5]), c(&[7]), c(&[1, 1]), c(&[0]), c(&[0]), c(&[0, 2])]);
        for ell in 1..4 {
            let h = hermite_reduce(&a, &f, ell).unwrap();
            assert!(h.r.degree().map_or(true, |d| d < 3));
            assert_eq!(recombine(&h, &f, ell), a);
        }
    }

    #[test]
    fn rejects_square() {
        let g = x2_minus_t();
        assert_eq!(hermite_reduce(&P::one(), &g.mul(&g), 1), Err(Error::NotSquareFree));
    }

    #[test]
    fn telescoper_of_conic() {
        let op = hermite_telescoper(&P::one(), &x2_minus_t(), 1).unwrap();
        assert_eq!(op, DiffOp::new(vec![ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[0, 2])]));
        // exact input
        let f = x2_minus_t();
        let op = hermite_telescoper(&f.derivative().neg(), &f, 2).unwrap();
        assert_eq!(op, DiffOp::one());
    }
}
