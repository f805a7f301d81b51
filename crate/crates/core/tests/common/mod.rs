#![allow(dead_code)]

use gdtel_core::multipoly::{monomials_of_degree, HPoly, MPoly};
use gdtel_core::scalars::ZPoly;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn z(v: &[i64]) -> ZPoly {
    ZPoly::from_i64s(v)
}

/// Random polynomial in `t` of degree ≤ `delta`, coefficients in `[-b, b]`.
pub fn rand_zpoly(r: &mut impl Rng, delta: usize, b: i64) -> ZPoly {
    ZPoly::new((0..=delta).map(|_| BigInt::from(r.gen_range(-b..=b))).collect())
}

/// Dense random homogeneous form over ℤ\[t\].
pub fn rand_form(r: &mut impl Rng, nvars: usize, deg: u32, delta: usize, b: i64) -> HPoly<ZPoly> {
    let mut p = MPoly::zero(nvars);
    for m in monomials_of_degree(nvars, deg) {
        p.add_term(m, &rand_zpoly(r, delta, b));
    }
    HPoly::new(p, deg).unwrap()
}
