//! Creative telescoping in the regular case: reduce `∂_t^i F` until the
//! reduced forms become linearly dependent.

mod diffop;
mod linsolve;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::macaulay::{is_regular_with_limit, PivotPolicy, SplitFamily, DEFAULT_MAX_ROWS};
use crate::multipoly::{Frac, HPoly, MPoly, PoleFraction};
use crate::reduction::{
    reduce, slot_degree, t_derivative_reduced, to_integral, FPow, IntegralFraction, ReducedForm,
};
use crate::scalars::{GcdDomain, RatFunc, ZPoly};

pub use diffop::DiffOp;
pub use linsolve::{first_relation, solve_last, Relation};

/// Coordinates of a reduced form: numerators over ℤ\[t\] with one common
/// denominator, slot by slot in the canonical monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedVector {
    pub num: Vec<ZPoly>,
    pub den: ZPoly,
}

pub fn vectorize(g: &ReducedForm<ZPoly>, d: u32) -> ReducedVector {
    let n = g.n();
    let mut num = vec![];
    for (idx, s) in g.slots.iter().enumerate() {
        if slot_degree(idx + 1, d, n) < 0 {
            continue;
        }
        num.extend(s.coords());
    }
    ReducedVector { num, den: g.den.clone() }
}

/// `Σ_k C(kd−1, n)`, the length of a [`ReducedVector`].
pub fn reduced_vector_len(n: usize, d: u32) -> usize {
    (1..=n)
        .map(|k| crate::multipoly::count_monomials(n + 1, slot_degree(k, d, n)))
        .sum()
}

/// Coefficients `a_k ∈ ℚ(t)` with `Σ_{k<last} a_k·v_k = v_last`.
pub fn solve_relation(vectors: &[ReducedVector]) -> Result<Vec<RatFunc>> {
    assert!(!vectors.is_empty());
    let cols: Vec<&[ZPoly]> = vectors.iter().map(|v| v.num.as_slice()).collect();
    let rel = solve_last(&cols).ok_or(Error::NoRelation)?;
    let last = vectors.last().unwrap();
    // z_k N_k = e N_r  ⇒  (z_k P_k / (e P_r)) v_k = v_r
    Ok(rel
        .z
        .iter()
        .zip(vectors)
        .map(|(z, v)| RatFunc::new(z.mul(&v.den), rel.e.mul(&last.den)))
        .collect())
}

#[derive(Clone, Debug)]
pub struct TelescConfig {
    pub policy: PivotPolicy,
    pub track_certificate: bool,
    /// Row limit for Macaulay matrices.
    pub max_rows: usize,
    /// Refuse to look beyond this order.
    pub max_order: Option<usize>,
    pub deadline: Option<Instant>,
}

impl Default for TelescConfig {
    fn default() -> Self {
        TelescConfig {
            policy: PivotPolicy::default(),
            track_certificate: false,
            max_rows: DEFAULT_MAX_ROWS,
            max_order: None,
            deadline: None,
        }
    }
}

/// `T(F) = Σᵢ ∂ᵢAᵢ` with `Aᵢ = components[i]`, all over powers of `base`.
#[derive(Clone, Debug)]
pub struct OpCertificate {
    pub components: Vec<FPow<ZPoly>>,
    pub base: HPoly<ZPoly>,
}

#[derive(Clone, Debug)]
pub struct TelescOutput {
    pub op: DiffOp,
    pub certificate: Option<OpCertificate>,
    /// `n_ℓ` for `ℓ = 1…n`; their sum bounds the order.
    pub dims: Vec<usize>,
    /// Largest `t`-degree of a split denominator used.
    pub delta_e: usize,
    /// Reduced forms `G_0 … G_r`.
    pub reduced: Vec<ReducedForm<ZPoly>>,
}

/// Minimal telescoper with regular certificate of `F = a/f^ℓ`, `f` regular.
pub fn telesc(f: &PoleFraction<RatFunc>, cfg: &TelescConfig) -> Result<TelescOutput> {
    let (input, fi) = to_integral(f);
    telesc_integral(&input, &fi, cfg)
}

fn check_deadline(cfg: &TelescConfig) -> Result<()> {
    match cfg.deadline {
        Some(d) if Instant::now() > d => Err(Error::ResourceLimit("time limit reached".into())),
        _ => Ok(()),
    }
}

/// [`telesc`] on `input.num / (input.den · f^pole)` with `f` over ℤ\[t\].
pub fn telesc_integral(input: &IntegralFraction<ZPoly>, f: &HPoly<ZPoly>, cfg: &TelescConfig) -> Result<TelescOutput> {
    if !is_regular_with_limit(f, cfg.max_rows)? {
        return Err(Error::NotRegular);
    }
    let family = SplitFamily::new(f.clone(), cfg.policy).with_max_rows(cfg.max_rows);
    telesc_with_family(input, &family, cfg)
}

/// Main loop over a prepared split family; `family.f()` must be regular.
pub fn telesc_with_family(
    input: &IntegralFraction<ZPoly>,
    family: &SplitFamily<ZPoly>,
    cfg: &TelescConfig,
) -> Result<TelescOutput> {
    let f = family.f().clone();
    let nv = f.nvars();
    let n = nv - 1;
    let d = f.degree();
    let dims = family.quotient_dims()?;
    let dim: usize = dims.iter().sum();
    let cap = 2 * (d as usize).pow(n as u32);
    let track = cfg.track_certificate;

    let (g0, c0) = reduce(input, family, track)?;
    let mut gs = vec![g0];
    let mut vecs = vec![vectorize(&gs[0], d)];
    // B_k: certificate of ∂_t^k F, one summed component per variable
    let mut bs: Vec<Vec<FPow<ZPoly>>> = vec![];
    if let Some(c) = c0 {
        bs.push((0..nv).map(|i| c.component(i, nv, &f)).collect());
    }
    let mut checkpoint = 1usize;
    let found = if gs[0].is_zero() {
        Some((0, Relation { z: vec![], e: ZPoly::from_i64s(&[1]) }))
    } else {
        let mut i = 0;
        loop {
            check_deadline(cfg)?;
            i += 1;
            if i > cap {
                return Err(Error::Internal(format!("no relation up to order {}", cap)));
            }
            if cfg.max_order.is_some_and(|m| i > m) {
                return Err(Error::ResourceLimit(format!("order exceeds {}", cfg.max_order.unwrap())));
            }
            let next = t_derivative_reduced(&gs[i - 1], &f);
            let (gi, ci) = reduce(&next, family, track)?;
            if let Some(c) = ci {
                let prev = &bs[i - 1];
                let comp: Vec<FPow<ZPoly>> = (0..nv)
                    .map(|v| c.component(v, nv, &f).add(&prev[v].d_t(f.poly()), f.poly()).simplified())
                    .collect();
                bs.push(comp);
            }
            vecs.push(vectorize(&gi, d));
            gs.push(gi);
            if i == checkpoint || i >= dim {
                let cols: Vec<&[ZPoly]> = vecs.iter().map(|v| v.num.as_slice()).collect();
                if let Some(hit) = first_relation(&cols) {
                    break Some(hit);
                }
                if i >= dim {
                    return Err(Error::Internal(format!(
                        "{} reduced forms in a space of dimension {} are independent",
                        i + 1,
                        dim
                    )));
                }
                while checkpoint <= i {
                    checkpoint *= 2;
                }
            }
        }
    };
    let (r, rel) = found.unwrap();
    // Σ_{k<r} z_k N_k = e N_r with G_k = N_k / P_k
    let mut raw: Vec<ZPoly> = (0..r).map(|k| rel.z[k].mul(&vecs[k].den).neg()).collect();
    raw.push(rel.e.mul(&vecs[r].den));
    let op = DiffOp::new(raw.clone()).normalized();
    debug_assert!(r <= dim);
    let certificate = if track {
        let mut comps = vec![FPow::zero(nv); nv];
        for (k, c) in op.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for v in 0..nv {
                comps[v] = comps[v].add(&bs[k][v].scale(c, &ZPoly::from_i64s(&[1])), f.poly());
            }
        }
        Some(OpCertificate {
            components: comps.into_iter().map(|c| c.simplified()).collect(),
            base: f.clone(),
        })
    } else {
        None
    };
    gs.truncate(r + 1);
    Ok(TelescOutput {
        op,
        certificate,
        dims,
        delta_e: family.delta_e(),
        reduced: gs,
    })
}

/// `T(F)` as a fraction over a power of `f`.
pub fn apply_op(op: &DiffOp, input: &IntegralFraction<ZPoly>, f: &HPoly<ZPoly>) -> FPow<ZPoly> {
    let one = ZPoly::from_i64s(&[1]);
    let mut cur = input.to_fpow();
    let mut acc = FPow::zero(f.nvars());
    for (k, c) in op.coeffs().iter().enumerate() {
        if k > 0 {
            cur = cur.d_t(f.poly()).simplified();
        }
        if !c.is_zero() {
            acc = acc.add(&cur.scale(c, &one), f.poly());
        }
    }
    acc.simplified()
}

/// `[T(F)] = 0`, reduced with an independently built split family that
/// uses the other pivot policy.
pub fn verify_telescoper_integral(op: &DiffOp, input: &IntegralFraction<ZPoly>, f: &HPoly<ZPoly>, max_rows: usize) -> Result<bool> {
    let tf = apply_op(op, input, f);
    if tf.is_zero() {
        return Ok(true);
    }
    let nv = f.nvars();
    let pole = tf.pole;
    let deg = pole as i64 * f.degree() as i64 - nv as i64;
    if deg < 0 {
        return Err(Error::DegreeError("T(F) is not homogeneous of degree -(n+1)".into()));
    }
    let num = HPoly::new(tf.num.clone(), deg as u32)?;
    let fam = SplitFamily::new(f.clone(), PivotPolicy::Reversed).with_max_rows(max_rows);
    let frac = IntegralFraction::new(num, tf.den.clone(), pole);
    match reduce(&frac, &fam, false) {
        Ok((g, _)) => Ok(g.is_zero()),
        Err(Error::NotReducible(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn verify_telescoper(op: &DiffOp, f: &PoleFraction<RatFunc>) -> Result<bool> {
    let (input, fi) = to_integral(f);
    if !is_regular_with_limit(&fi, DEFAULT_MAX_ROWS)? {
        return Err(Error::NotRegular);
    }
    verify_telescoper_integral(op, &input, &fi, DEFAULT_MAX_ROWS)
}

/// Certificate mode: `T(F) − Σᵢ ∂ᵢAᵢ = 0` as an exact identity.
pub fn verify_certificate(op: &DiffOp, input: &IntegralFraction<ZPoly>, cert: &OpCertificate) -> bool {
    let f = &cert.base;
    let tf = apply_op(op, input, f);
    let mut div = FPow::zero(f.nvars());
    for (i, a) in cert.components.iter().enumerate() {
        div = div.add(&a.partial(i, f.poly()), f.poly());
    }
    tf.sub(&div, f.poly()).is_zero()
}

/// Certificate mode in affine coordinates: checks
/// `T(a/f) − Σᵢ ∂_{xᵢ} Aᵢ = 0` for explicitly given rational `Aᵢ`.
pub fn verify_affine_certificate(op: &DiffOp, integrand: &Frac<RatFunc>, components: &[Frac<RatFunc>]) -> bool {
    let mut cur = integrand.clone();
    let nv = integrand.num.nvars();
    let mut acc = Frac::zero(nv);
    for (k, c) in op.coeffs().iter().enumerate() {
        if k > 0 {
            cur = cur.d_t();
        }
        if !c.is_zero() {
            acc = acc.add(&cur.scale(&RatFunc::from_poly(c.clone())));
        }
    }
    for (i, a) in components.iter().enumerate() {
        acc = acc.sub(&a.partial(i));
    }
    acc.num.is_zero()
}

/// `r·δ_a + (r² + rℓ)·⌈eⁿdⁿ⌉·δ_f`, an upper bound for the coefficient
/// degrees of the minimal telescoper.
pub fn degree_bound(r: usize, deg_a: usize, ell: u32, n: usize, d: u32, deg_f: usize) -> u128 {
    let en = (std::f64::consts::E * d as f64).powi(n as i32).ceil() as u128;
    let r = r as u128;
    r * deg_a as u128 + (r * r + r * ell as u128) * en * deg_f as u128
}

/// Largest `t`-degree of the coefficients of `F`'s integral numerator and
/// of `f`.
pub fn param_degrees(input: &IntegralFraction<ZPoly>, f: &HPoly<ZPoly>) -> (usize, usize) {
    let da = input
        .num
        .terms()
        .map(|(_, c)| c.degree())
        .chain(std::iter::once(input.den.degree()))
        .max()
        .unwrap_or(0);
    let df = f.terms().map(|(_, c)| c.param_degree()).max().unwrap_or(0);
    (da, df)
}

/// Affine integrand `a/f` as a [`Frac`] over ℚ(t).
pub fn affine_frac(a: &MPoly<RatFunc>, f: &MPoly<RatFunc>) -> Frac<RatFunc> {
    Frac::new(a.clone(), f.clone())
}
