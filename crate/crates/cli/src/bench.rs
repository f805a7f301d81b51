//! Random dense instances `a/f^ℓ` with timings.

use std::time::Instant;

use gdtel_core::multipoly::{monomials_of_degree, HPoly, MPoly, PoleFraction};
use gdtel_core::scalars::{RatFunc, ZPoly};
use gdtel_core::telescoper::{telesc, verify_telescoper};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::problem::{projective_is_regular, CliError};
use crate::run::Options;

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub n: usize,
    pub d: u32,
    pub ell: u32,
    pub delta: usize,
    pub seed: u64,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub seed: u64,
    pub order: usize,
    pub degree: usize,
    pub dims: Vec<usize>,
    pub seconds: f64,
    pub verified: Option<bool>,
}

fn rand_coeff(r: &mut impl Rng, delta: usize) -> RatFunc {
    RatFunc::from_poly(ZPoly::new((0..=delta).map(|_| BigInt::from(r.gen_range(-99..=99))).collect()))
}

fn rand_form(r: &mut impl Rng, nvars: usize, deg: u32, delta: usize) -> HPoly<RatFunc> {
    let mut p = MPoly::zero(nvars);
    for m in monomials_of_degree(nvars, deg) {
        p.add_term(m, &rand_coeff(r, delta));
    }
    HPoly::new(p, deg).expect("homogeneous by construction")
}

/// Dense `a/f^ℓ` in `n+1` variables with `deg f = d` and coefficients of
/// `t`-degree `δ`, integers uniform in `[−99, 99]`. Draws are repeated until
/// `f` is smooth.
pub fn random_instance(spec: &BenchSpec, seed: u64, max_rows: usize) -> Result<PoleFraction<RatFunc>, CliError> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let nv = spec.n + 1;
    let deg_a = (spec.ell * spec.d) as i64 - nv as i64;
    if deg_a < 0 {
        return Err(CliError::Usage(format!("ℓ·d must be at least n + 1 = {nv}")));
    }
    for _ in 0..16 {
        let f = rand_form(&mut r, nv, spec.d, spec.delta);
        let a = rand_form(&mut r, nv, deg_a as u32, spec.delta);
        let pf = PoleFraction::new(a, f, spec.ell)?;
        if projective_is_regular(&pf, max_rows)? {
            return Ok(pf);
        }
    }
    Err(CliError::Core(gdtel_core::Error::NotRegular))
}

pub fn bench(spec: &BenchSpec, opts: &Options) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = vec![];
    for i in 0..spec.count {
        let seed = spec.seed + i as u64;
        let pf = random_instance(spec, seed, opts.max_rows)?;
        let start = Instant::now();
        let cfg = gdtel_core::telescoper::TelescConfig {
            max_rows: opts.max_rows,
            max_order: opts.max_order,
            deadline: opts.timeout.map(|t| start + t),
            ..Default::default()
        };
        let out = telesc(&pf, &cfg)?;
        let seconds = start.elapsed().as_secs_f64();
        let verified = if opts.verify { Some(verify_telescoper(&out.op, &pf)?) } else { None };
        rows.push(BenchRow { seed, order: out.op.order(), degree: out.op.degree(), dims: out.dims, seconds, verified });
    }
    Ok(rows)
}

pub fn rows_json(spec: &BenchSpec, rows: &[BenchRow]) -> Value {
    json!({
        "n": spec.n,
        "d": spec.d,
        "ell": spec.ell,
        "delta": spec.delta,
        "instances": rows.iter().map(|r| json!({
            "seed": r.seed,
            "order": r.order,
            "degree": r.degree,
            "dims": r.dims,
            "verified": r.verified,
            "timings": { "telescope": r.seconds },
        })).collect::<Vec<_>>(),
    })
}

pub fn rows_text(spec: &BenchSpec, rows: &[BenchRow]) -> String {
    let mut s = format!("n={} d={} ell={} delta={}\n", spec.n, spec.d, spec.ell, spec.delta);
    for r in rows {
        s += &format!("seed {}: order {} degree {} dims {:?}", r.seed, r.order, r.degree, r.dims);
        if let Some(v) = r.verified {
            s += &format!(" verified {v}");
        }
        s += &format!(" time {:.3} s\n", r.seconds);
    }
    s
}
