use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::multipoly::{basis_signed, HPoly};
use crate::scalars::{modp, GcdDomain, Rat};

use super::matrix::rank;
use super::split::{build_matrix, macaulay_bound, DEFAULT_MAX_ROWS};

/// Parameter values tried by the specialization witness.
const WITNESS_POINTS: [i64; 3] = [7, -13, 29];

/// `true` if `φ_D` has full row rank after specializing the parameter at
/// one of `points` and reducing modulo a word prime. Full rank of an image
/// implies full rank over the fraction field; `false` is inconclusive.
pub fn regularity_witness<R: GcdDomain>(f: &HPoly<R>, points: &[Rat]) -> bool {
    let n = f.nvars() - 1;
    let dbound = macaulay_bound(n, f.degree());
    let mac = build_matrix(f, dbound);
    let (nr, nc) = (mac.matrix.nrows(), mac.matrix.ncols());
    if nc < nr {
        return false;
    }
    let p = modp::primes()[0];
    'point: for t0 in points {
        let mut rows = vec![vec![0u64; nc]; nr];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let e = mac.matrix.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let v = e.eval_param(t0);
                let den = modp::reduce(v.denom(), p);
                if den == 0 {
                    continue 'point;
                }
                *x = modp::mul_mod(modp::reduce(v.numer(), p), modp::inv_mod(den, p), p);
            }
        }
        if modp::rank_mod_p(rows, p) == nr {
            return true;
        }
    }
    false
}

/// Hypothesis (H): `φ_D` is onto, i.e. `L[x]/Jac f` is finite dimensional.
///
/// A specialization witness is tried first; otherwise the rank is computed
/// exactly over the coefficient ring.
pub fn is_regular<R: GcdDomain>(f: &HPoly<R>) -> Result<bool> {
    is_regular_with_limit(f, DEFAULT_MAX_ROWS)
}

pub fn is_regular_with_limit<R: GcdDomain>(f: &HPoly<R>, max_rows: usize) -> Result<bool> {
    if f.is_zero() || f.degree() == 0 {
        return Ok(false);
    }
    let n = f.nvars() - 1;
    let dbound = macaulay_bound(n, f.degree());
    let nr = basis_signed(n + 1, dbound as i64 - n as i64 - 1).len();
    let nc = (n + 1) * basis_signed(n + 1, dbound as i64 - f.degree() as i64 - n as i64).len();
    if nc < nr {
        return Ok(false);
    }
    let pts: Vec<Rat> = WITNESS_POINTS.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect();
    if regularity_witness(f, &pts) {
        return Ok(true);
    }
    if nr > max_rows {
        return Err(Error::ResourceLimit(format!(
            "exact regularity test needs a {}x{} matrix (row limit {})",
            nr, nc, max_rows
        )));
    }
    Ok(rank(&build_matrix(f, dbound).matrix) == nr)
}

/// Dimensions `n_ℓ` of the graded pieces of `L[x]/Jac f` that carry the
/// reduced forms, `ℓ = 1…n`.
pub fn quotient_dims<R: GcdDomain>(f: &HPoly<R>) -> Result<Vec<usize>> {
    if !is_regular(f)? {
        return Err(Error::NotRegular);
    }
    let n = f.nvars() - 1;
    let dbound = macaulay_bound(n, f.degree());
    // ranks only; the splits themselves are not needed
    Ok((1..=n as u32)
        .map(|l| {
            let q = l * f.degree();
            if q > dbound {
                return 0;
            }
            let mac = build_matrix(f, q);
            mac.matrix.nrows() - rank(&mac.matrix)
        })
        .collect())
}

/// `((d−1)^{n+1} + (−1)^{n+1}(d−1)) / d`, the dimension of the primitive
/// cohomology of a smooth degree-`d` hypersurface in `ℙⁿ`.
pub fn primitive_cohomology_dim(n: usize, d: u32) -> BigInt {
    let dm = BigInt::from(d) - BigInt::from(1);
    let sign = if (n + 1) % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    let num = num_traits::pow::<BigInt>(dm.clone(), n + 1) + sign * &dm;
    let (q, r) = num.div_rem(&BigInt::from(d));
    debug_assert!(r == BigInt::from(0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MPoly;
    use crate::scalars::ZPoly;

    fn hz(p: MPoly<ZPoly>) -> HPoly<ZPoly> {
        HPoly::from_poly(p).unwrap()
    }

    fn x(nv: usize, i: usize) -> MPoly<ZPoly> {
        MPoly::var(nv, i)
    }

    #[test]
    fn formula_values() {
        assert_eq!(primitive_cohomology_dim(2, 3), BigInt::from(2));
        assert_eq!(primitive_cohomology_dim(2, 4), BigInt::from(6));
        assert_eq!(primitive_cohomology_dim(2, 5), BigInt::from(12));
        assert_eq!(primitive_cohomology_dim(2, 6), BigInt::from(20));
        assert_eq!(primitive_cohomology_dim(1, 2), BigInt::from(1));
        assert_eq!(primitive_cohomology_dim(3, 6), BigInt::from(105));
    }

    #[test]
    fn regularity_examples() {
        let fermat = hz((0..3).fold(MPoly::zero(3), |a, i| a.add(&x(3, i).pow(3))));
        assert!(is_regular(&fermat).unwrap());
        assert_eq!(quotient_dims(&fermat).unwrap(), vec![1, 1]);
        let prod = hz(x(3, 0).mul(&x(3, 1)).mul(&x(3, 2)));
        assert!(!is_regular(&prod).unwrap());
        assert_eq!(quotient_dims(&prod), Err(Error::NotRegular));
        let sq = hz(x(2, 0).pow(2).mul(&x(2, 1)));
        assert!(!is_regular(&sq).unwrap());
    }

    #[test]
    fn parametric_regularity() {
        // x1^2 - t x0^2 is regular over Q(t) although singular at t = 0
        let t = MPoly::constant(2, ZPoly::t());
        let f = hz(x(2, 1).pow(2).sub(&t.mul(&x(2, 0).pow(2))));
        assert!(is_regular(&f).unwrap());
        // exact path: the witness point is a bad specialization
        assert!(!regularity_witness(&f, &[Rat::from_integer(0.into())]));
    }
}
