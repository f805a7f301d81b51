//! Word-size prime field arithmetic. Modular images only ever serve as
//! witnesses or get recombined and verified exactly.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic witness set for 64-bit integers
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_COUNT: usize = 4096;

/// Descending list of primes just below 2^62.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut c = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

/// Residue of a big integer in `[0, p)`.
pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().expect("residue fits");
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Trims trailing zeros of a dense residue polynomial.
pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd of two dense polynomials over 𝔽_p.
pub(crate) fn gcd_poly(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// `a ← a mod b` over 𝔽_p; `b` nonzero and trimmed.
pub(crate) fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let q = mul_mod(lead, inv, p);
            let shift = a.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                a[shift + i] = sub_mod(a[shift + i], t, p);
            }
        }
        a.pop();
    }
    trim(a);
}

/// Rank of a dense matrix over 𝔽_p (consumes the rows).
pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let x = row[c];
            if x == 0 {
                continue;
            }
            let k = mul_mod(x, inv, p);
            for j in c..ncols {
                if prow[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(k, prow[j], p), p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_large() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert!(ps.iter().all(|&p| p > (1u64 << 61)));
        assert!(is_prime_u64(ps[0]));
        assert!(!is_prime_u64(ps[0] - 2) || ps[1] == ps[0] - 2);
    }

    #[test]
    fn modular_gcd_of_products() {
        let p = primes()[0];
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd_poly(a, b, p), vec![1, 1]);
    }

    #[test]
    fn negative_residue() {
        assert_eq!(reduce(&BigInt::from(-1), 7), 6);
        assert_eq!(reduce(&BigInt::from(-14), 7), 0);
    }
}
