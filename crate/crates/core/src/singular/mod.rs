//! Telescopers of arbitrary affine integrands: homogenize, deform the
//! denominator by `ε·Σ xᵢ^d` to make it smooth, telescope at specialized
//! `ε = u`, and reconstruct the operator at `ε = 0`.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::macaulay::is_regular_with_limit;
use crate::multipoly::{homogenize, HPoly, MPoly, Monomial, PoleFraction};
use crate::reduction::{to_integral, IntegralFraction};
use num_bigint::BigInt;

use crate::scalars::reconstruct::fitting_degree_mod_p;
use crate::scalars::{limit_at_zero, modp, BPoly, Rat, RatFunc, Ring, ZPoly};
use crate::telescoper::{degree_bound, param_degrees, telesc_integral, DiffOp, TelescConfig};

/// `F_pr` together with its deformed denominator.
#[derive(Clone, Debug)]
pub struct DeformedProblem {
    pub f_pr: PoleFraction<RatFunc>,
    /// Integral numerator of `F_pr`; the same over every deformed base.
    pub input: IntegralFraction<ZPoly>,
    /// Integral form of the base of `F_pr`.
    pub base: HPoly<ZPoly>,
    /// `base + ε·Σᵢ xᵢ^{d_pr}`.
    pub f_reg: HPoly<BPoly>,
    pub d_pr: u32,
}

fn powers_sum(nvars: usize, d: u32) -> HPoly<ZPoly> {
    let mut s = HPoly::zero(nvars, d);
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = d;
        s.add_term(Monomial::new(e), &ZPoly::from_i64s(&[1]));
    }
    s
}

impl DeformedProblem {
    /// The denominator at `ε = u`.
    pub fn specialize(&self, u: i64) -> HPoly<ZPoly> {
        self.base.add(&powers_sum(self.base.nvars(), self.d_pr).scale(&ZPoly::from_i64s(&[u])))
    }

    /// `f_reg|_{ε=u}` satisfies (H).
    pub fn admissible(&self, u: i64, max_rows: usize) -> Result<bool> {
        is_regular_with_limit(&self.specialize(u), max_rows)
    }
}

/// Builds `f_reg` and checks that it satisfies (H) over `k(t, ε)`.
///
/// One regular specialization `ε = u` proves it; the check gives up with an
/// internal error after a handful of points since smoothness at `ε = ∞`
/// makes all but finitely many `u` work.
pub fn deform(f_pr: &PoleFraction<RatFunc>) -> Result<DeformedProblem> {
    deform_with_limit(f_pr, crate::macaulay::DEFAULT_MAX_ROWS)
}

pub fn deform_with_limit(f_pr: &PoleFraction<RatFunc>, max_rows: usize) -> Result<DeformedProblem> {
    let (input, base) = to_integral(f_pr);
    let d_pr = base.degree();
    let nv = base.nvars();
    let eps = powers_sum(nv, d_pr).map_coeffs(|c| BPoly::from_t_poly(c).mul(&BPoly::epsilon()));
    let f_reg = base.map_coeffs(BPoly::from_t_poly).add(&eps);
    let p = DeformedProblem {
        f_pr: f_pr.clone(),
        input,
        base,
        f_reg,
        d_pr,
    };
    for u in 1..=8 {
        if p.admissible(u, max_rows)? {
            return Ok(p);
        }
    }
    Err(Error::Internal("deformed denominator failed the regularity test".into()))
}

#[derive(Clone, Debug)]
pub struct AffineConfig {
    pub telesc: TelescConfig,
    /// Go through the deformation even if `f_pr` is already smooth.
    pub force_singular: bool,
    /// Give up after this many specializations.
    pub max_points: usize,
}

impl Default for AffineConfig {
    fn default() -> Self {
        AffineConfig {
            telesc: TelescConfig::default(),
            force_singular: false,
            max_points: 400,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Regular,
    Singular,
}

#[derive(Clone, Debug)]
pub struct AffineOutput {
    pub op: DiffOp,
    pub pipeline: Pipeline,
    /// Power of `ε` cleared before setting `ε = 0`.
    pub alpha: usize,
    /// Specializations computed, including discarded ones.
    pub points_used: usize,
    /// Regular specializations dropped because their order was lower.
    pub discarded: usize,
    /// Inadmissible specializations skipped.
    pub skipped: usize,
}

/// A telescoper with regular certificate of `a_aff / f_aff` in `n` variables.
pub fn telesc_affine(a_aff: &MPoly<RatFunc>, f_aff: &MPoly<RatFunc>, n: usize, cfg: &AffineConfig) -> Result<AffineOutput> {
    let f_pr = homogenize(a_aff, f_aff, n)?;
    telesc_projective_any(&f_pr, cfg)
}

/// As [`telesc_affine`], for an already homogenized `F_pr`.
pub fn telesc_projective_any(f_pr: &PoleFraction<RatFunc>, cfg: &AffineConfig) -> Result<AffineOutput> {
    let max_rows = cfg.telesc.max_rows;
    if !cfg.force_singular {
        let (input, base) = to_integral(f_pr);
        // a failed witness plus an exact test too large to run is treated as
        // singular: the deformation is sound either way
        let regular = match is_regular_with_limit(&base, max_rows) {
            Err(Error::ResourceLimit(_)) => false,
            r => r?,
        };
        if regular {
            let out = telesc_integral(&input, &base, &cfg.telesc)?;
            return Ok(AffineOutput {
                op: out.op,
                pipeline: Pipeline::Regular,
                alpha: 0,
                points_used: 0,
                discarded: 0,
                skipped: 0,
            });
        }
    }
    let prob = deform_with_limit(f_pr, max_rows)?;
    let mut sampler = Sampler::new(&prob, cfg);
    let (op, alpha) = loop {
        let r = sampler.order()?;
        let ceiling = sampler.t_degree_ceiling();
        match reconstruct_at_epsilon_zero(&mut |u: &Rat| sampler.at(u, r), r, ceiling) {
            Err(Error::Internal(m)) if m == RESTART => continue,
            other => break other?,
        }
    };
    Ok(AffineOutput {
        op,
        pipeline: Pipeline::Singular,
        alpha,
        points_used: sampler.cache.len(),
        discarded: sampler.discarded(),
        skipped: sampler.cache.values().filter(|v| v.is_none()).count(),
    })
}

const RESTART: &str = "a specialization of higher order appeared";

/// Per-point telescopers of `F_reg|_{ε=u}`, `u = 1, 2, …`, with caching and
/// the order filter.
struct Sampler<'a> {
    prob: &'a DeformedProblem,
    cfg: &'a AffineConfig,
    cache: BTreeMap<i64, Option<DiffOp>>,
    order: Option<usize>,
}

impl<'a> Sampler<'a> {
    fn new(prob: &'a DeformedProblem, cfg: &'a AffineConfig) -> Self {
        Sampler {
            prob,
            cfg,
            cache: BTreeMap::new(),
            order: None,
        }
    }

    fn compute(&mut self, u: i64) -> Result<Option<DiffOp>> {
        if let Some(v) = self.cache.get(&u) {
            return Ok(v.clone());
        }
        if self.cache.len() >= self.cfg.max_points {
            return Err(Error::InsufficientPoints(format!("{} specializations did not stabilize", self.cache.len())));
        }
        if let Some(d) = self.cfg.telesc.deadline {
            if Instant::now() > d {
                return Err(Error::ResourceLimit("time limit reached".into()));
            }
        }
        let fu = self.prob.specialize(u);
        let v = if is_regular_with_limit(&fu, self.cfg.telesc.max_rows)? {
            Some(telesc_integral(&self.prob.input, &fu, &self.cfg.telesc)?.op)
        } else {
            None
        };
        self.cache.insert(u, v.clone());
        Ok(v)
    }

    /// Generic order, estimated as the largest among the first three
    /// admissible points and raised whenever a larger one shows up.
    fn order(&mut self) -> Result<usize> {
        let mut seen = 0;
        let mut r = 0;
        let mut u = 0;
        while seen < 3 {
            u += 1;
            if let Some(op) = self.compute(u)? {
                seen += 1;
                r = r.max(op.order());
            }
        }
        let r = r.max(self.order.unwrap_or(0));
        self.order = Some(r);
        Ok(r)
    }

    /// Monic coefficients at `ε = u`, `None` if the point is inadmissible
    /// or of lower order.
    fn at(&mut self, u: &Rat, r: usize) -> Result<Option<Vec<RatFunc>>> {
        let u = u.to_integer().try_into().map_err(|_| Error::Internal("point out of range".into()))?;
        match self.compute(u)? {
            None => Ok(None),
            Some(op) if op.order() < r => Ok(None),
            Some(op) if op.order() > r => {
                self.order = Some(op.order());
                Err(Error::Internal(RESTART.into()))
            }
            Some(op) => Ok(Some(op.monic())),
        }
    }

    fn discarded(&self) -> usize {
        let r = self.order.unwrap_or(0);
        self.cache.values().flatten().filter(|op| op.order() < r).count()
    }

    /// Ceiling on the `t`-degree from the degree bound on telescopers.
    fn t_degree_ceiling(&self) -> usize {
        let r = self.order.unwrap_or(0);
        let (da, df) = param_degrees(&self.prob.input, &self.prob.base);
        let n = self.prob.base.nvars() - 1;
        let b = degree_bound(r, da, self.prob.input.pole, n, self.prob.d_pr, df.max(1));
        usize::try_from(b).unwrap_or(usize::MAX)
    }
}

fn clamp_degree(c: &RatFunc) -> usize {
    c.num().degree().max(c.den().degree())
}

/// `(ε^α·T)|_{ε=0}` from the monic specializations `u ↦ T|_{ε=u}` of an
/// order-`r` operator, with `α ≥ 0` minimal such that the result is finite.
///
/// `per_point` returns the monic coefficients `c_0/c_r … c_r/c_r` or
/// declines the point. The `ε`-degree is found adaptively: a guess `e` is
/// accepted once the reconstruction with two more points agrees.
pub fn reconstruct_at_epsilon_zero<P>(per_point: &mut P, r: usize, t_ceiling: usize) -> Result<(DiffOp, usize)>
where
    P: FnMut(&Rat) -> Result<Option<Vec<RatFunc>>>,
{
    let (cs, alpha) = reconstruct_coefficients(per_point, r, t_ceiling)?;
    Ok((DiffOp::from_ratfuncs(&cs), alpha))
}

/// The coefficients `(ε^α·c_k/c_r)|_{ε=0}`, `k = 0…r`, before normalization.
pub fn reconstruct_coefficients<P>(per_point: &mut P, r: usize, t_ceiling: usize) -> Result<(Vec<RatFunc>, usize)>
where
    P: FnMut(&Rat) -> Result<Option<Vec<RatFunc>>>,
{
    if r == 0 {
        return Ok((vec![RatFunc::one()], 0));
    }
    // t-degree from the first admissible point, capped by the ceiling
    let dt;
    let mut u = 0i64;
    loop {
        u += 1;
        if u > 256 {
            return Err(Error::InsufficientPoints("no admissible specialization".into()));
        }
        if let Some(cs) = per_point(&Rat::from_integer(u.into()))? {
            dt = cs.iter().map(clamp_degree).max().unwrap_or(0).min(t_ceiling);
            break;
        }
    }
    let mut e = probe_epsilon_degree(per_point, r)?.max(1);
    let mut last: Option<(Vec<RatFunc>, usize)> = None;
    loop {
        let attempt = limits(per_point, r, dt, e);
        match (attempt, &last) {
            (Ok(cur), Some(prev)) if &cur == prev => return Ok(cur),
            (Ok(cur), _) => last = Some(cur),
            (Err(Error::NoSolution(_)), _) => last = None,
            (Err(err), _) => return Err(err),
        }
        // the next guess uses two fresh points, then doubles
        e = if last.is_some() { e + 1 } else { 2 * e };
        if e > 4096 {
            return Err(Error::InsufficientPoints("epsilon degree did not stabilize".into()));
        }
    }
}

/// Estimates the `ε`-degree of the monic coefficients modulo a prime at a
/// fixed `t = t₀`. Exact reconstruction with a too small guess would still
/// succeed on `2e+1` points but with huge, useless coefficients, so a cheap
/// estimate saves most of the work; the exact stage re-validates it.
fn probe_epsilon_degree<P>(per_point: &mut P, r: usize) -> Result<usize>
where
    P: FnMut(&Rat) -> Result<Option<Vec<RatFunc>>>,
{
    let p = modp::primes()[5];
    let t0 = BigInt::from(0x5DEE_CE66_Du64);
    let mut vals: Vec<(u64, Vec<u64>)> = vec![];
    let mut want = 5usize;
    let mut v = 0i64;
    loop {
        while vals.len() < want {
            v += 1;
            if v > 4096 {
                return Err(Error::InsufficientPoints("epsilon degree probe".into()));
            }
            let Some(cs) = per_point(&Rat::from_integer(v.into()))? else {
                continue;
            };
            let mut ys = vec![];
            for c in &cs[..r] {
                let den = modp::reduce(&c.den().eval_int(&t0), p);
                if den == 0 {
                    return Err(Error::Internal("unlucky probe point".into()));
                }
                ys.push(modp::mul_mod(modp::reduce(&c.num().eval_int(&t0), p), modp::inv_mod(den, p), p));
            }
            vals.push((v as u64, ys));
        }
        let xs: Vec<u64> = vals.iter().map(|x| x.0).collect();
        let mut e = 0;
        let mut ok = true;
        for k in 0..r {
            let ys: Vec<u64> = vals.iter().map(|x| x.1[k]).collect();
            match fitting_degree_mod_p(&xs, &ys, p) {
                Some(ek) => e = e.max(ek),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(e);
        }
        want = want * 3 / 2 + 1;
    }
}

/// Coefficients of `(ε^α·T)|_{ε=0}` assuming `ε`-degree at most `e`.
fn limits<P>(per_point: &mut P, r: usize, dt: usize, e: usize) -> Result<(Vec<RatFunc>, usize)>
where
    P: FnMut(&Rat) -> Result<Option<Vec<RatFunc>>>,
{
    let mut lim = |k: usize, alpha: usize| -> Result<Option<RatFunc>> {
        limit_at_zero(
            |v: &Rat| {
                Ok(per_point(v)?.map(|cs| {
                    let s = RatFunc::from_rat(&num_traits::pow::pow(v.clone(), alpha));
                    cs[k].mul(&s)
                }))
            },
            dt,
            e + alpha,
        )
    };
    let finite = |lim: &mut dyn FnMut(usize, usize) -> Result<Option<RatFunc>>, alpha: usize| -> Result<Option<Vec<RatFunc>>> {
        let mut out = vec![];
        for k in 0..r {
            match lim(k, alpha)? {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
        out.push(if alpha == 0 { RatFunc::one() } else { RatFunc::zero() });
        Ok(Some(out))
    };
    if let Some(cs) = finite(&mut lim, 0)? {
        return Ok((cs, 0));
    }
    // finite at α implies finite at α + 1
    let (mut lo, mut hi) = (0usize, e.max(1));
    let mut best = finite(&mut lim, hi)?.ok_or_else(|| Error::NoSolution("pole order above the degree guess".into()))?;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match finite(&mut lim, mid)? {
            Some(cs) => {
                hi = mid;
                best = cs;
            }
            None => lo = mid,
        }
    }
    if best.iter().all(|c| c.is_zero()) {
        return Err(Error::NoSolution("vanishing limit".into()));
    }
    Ok((best, hi))
}
