//! Randomized checks shared by the property suites and the acceptance run.
//! Every check draws its instance from a seed and returns a description of
//! the first discrepancy.
#![allow(dead_code)]

use gdtel_core::macaulay::{
    compute_split, is_regular, macaulay_bound, primitive_cohomology_dim, quotient_dims, PivotPolicy, SplitFamily,
};
use gdtel_core::multipoly::{homogenize_pole, monomials_of_degree, HPoly, MPoly, Monomial};
use gdtel_core::oracle::{ansatz_telescoper, hermite_reduce, hermite_telescoper, AnsatzConfig};
use gdtel_core::reduction::{reduce, FPow, IntegralFraction};
use gdtel_core::scalars::{limit_at_zero, rat_int, rational_reconstruct, GcdDomain, RatFunc, Ring, UPoly, ZPoly};
use gdtel_core::singular::{telesc_projective_any, AffineConfig, Pipeline};
use gdtel_core::telescoper::{degree_bound, param_degrees, telesc_integral, DiffOp, TelescConfig};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return Err(format!($($m)+));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_zpoly(r: &mut impl Rng, delta: usize, b: i64) -> ZPoly {
    ZPoly::new((0..=delta).map(|_| BigInt::from(r.gen_range(-b..=b))).collect())
}

pub fn rand_form(r: &mut impl Rng, nvars: usize, deg: u32, delta: usize, b: i64) -> HPoly<ZPoly> {
    let mut p = MPoly::zero(nvars);
    for m in monomials_of_degree(nvars, deg) {
        p.add_term(m, &rand_zpoly(r, delta, b));
    }
    HPoly::new(p, deg).unwrap()
}

/// A smooth random form; dense draws are smooth with high probability.
pub fn regular_form(r: &mut impl Rng, nvars: usize, d: u32, delta: usize) -> Result<HPoly<ZPoly>, String> {
    for _ in 0..20 {
        let f = rand_form(r, nvars, d, delta, 9);
        if is_regular(&f).map_err(|e| e.to_string())? {
            return Ok(f);
        }
    }
    Err("no smooth draw".into())
}

fn nonzero_zpoly(r: &mut impl Rng, delta: usize) -> ZPoly {
    let p = rand_zpoly(r, delta, 9);
    if p.is_zero() {
        ZPoly::one()
    } else {
        p
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `φψφ = φ`, `π² = π`, the degree bounds on `E_q` and `π_D = 0`, in every
/// degree from `n+1` to Macaulay's bound.
pub fn split_identities(seed: u64, n: usize, d: u32, delta: usize) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let dbound = macaulay_bound(n, d);
    for q in n as u32 + 1..=dbound {
        let s = compute_split(&f, q, PivotPolicy::default());
        let phi = &s.mac.matrix;
        let psi = s.psi_matrix();
        let pi = s.pi_matrix();
        ensure!(phi.mul(&psi).mul(phi) == phi.scale(&s.e), "φψφ ≠ φ in degree {q}");
        ensure!(pi.mul(&pi) == pi.scale(&s.e), "π² ≠ π in degree {q}");
        ensure!(s.e.param_degree() <= s.rank * delta, "deg E = {} > rank·δ in degree {q}", s.e.param_degree());
        ensure!(s.degree_bounds_hold(delta), "split numerators exceed (rank−1)·δ in degree {q}");
        if q == dbound {
            ensure!(pi.is_zero(), "π_D ≠ 0");
        }
    }
    Ok(())
}

/// `E·a = r + Σ vᵢ∂ᵢf` in degree `q`, with `r = 0` from the bound on.
pub fn decomposition(seed: u64, n: usize, d: u32, delta: usize, above: u32) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let fam = SplitFamily::new(f.clone(), PivotPolicy::default());
    let dbound = macaulay_bound(n, d);
    let q = r.gen_range(n as u32 + 1..=dbound + above);
    let a = rand_form(&mut r, n + 1, q - n as u32 - 1, delta, 9);
    let dec = fam.decompose(&a).map_err(err)?;
    let mut rhs = dec.r.clone();
    for (i, v) in dec.v.iter().enumerate() {
        if !v.is_zero() {
            rhs = rhs.add(&v.mul(&f.partial(i)));
        }
    }
    ensure!(a.scale(&dec.den) == rhs, "E·a ≠ π(a) + Σ ψ(a)ᵢ∂ᵢf in degree {q}");
    if q >= dbound {
        ensure!(dec.r.is_zero(), "nonzero remainder in degree {q} ≥ D");
    }
    Ok(())
}

fn rand_integrand(r: &mut impl Rng, n: usize, d: u32, ell: u32, delta: usize) -> IntegralFraction<ZPoly> {
    let a = rand_form(r, n + 1, ell * d - n as u32 - 1, delta, 9);
    IntegralFraction::new(a, nonzero_zpoly(r, delta), ell)
}

/// `F = [F] + Σ ∂ᵢAᵢ` with the certificate returned by `reduce`.
pub fn reduce_soundness(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let fam = SplitFamily::new(f.clone(), PivotPolicy::default());
    let input = rand_integrand(&mut r, n, d, ell, delta);
    let (g, cert) = reduce(&input, &fam, true).map_err(err)?;
    let rhs = g.to_fpow(&f).add(&cert.unwrap().divergence(n + 1, &f), f.poly());
    ensure!(input.to_fpow().sub(&rhs, f.poly()).is_zero(), "F ≠ [F] + Σ∂ᵢAᵢ");
    ensure!(g.top_slot() <= n, "reduced form has pole order above n");
    Ok(())
}

/// `[c₁F₁ + c₂F₂] = c₁[F₁] + c₂[F₂]`.
pub fn reduce_linearity(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let fam = SplitFamily::new(f.clone(), PivotPolicy::default());
    let a1 = rand_form(&mut r, n + 1, ell * d - n as u32 - 1, delta, 9);
    let a2 = rand_form(&mut r, n + 1, ell * d - n as u32 - 1, delta, 9);
    let (c1, c2) = (rand_zpoly(&mut r, 1, 5), rand_zpoly(&mut r, 1, 5));
    let one = ZPoly::one();
    let red = |a: HPoly<ZPoly>| reduce(&IntegralFraction::new(a, one.clone(), ell), &fam, false).map(|x| x.0.to_fpow(&f));
    let lhs = red(a1.scale(&c1).add(&a2.scale(&c2))).map_err(err)?;
    let rhs = red(a1)
        .map_err(err)?
        .scale(&c1, &one)
        .add(&red(a2).map_err(err)?.scale(&c2, &one), f.poly());
    ensure!(lhs.sub(&rhs, f.poly()).is_zero(), "reduction is not linear");
    Ok(())
}

/// `reduce(Σ ∂ᵢ(bᵢ/f^{ℓ−1})) = 0`. Needs `(ℓ−1)d ≥ n`.
pub fn exactness(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let fam = SplitFamily::new(f.clone(), PivotPolicy::default());
    let deg_b = (ell - 1) * d - n as u32;
    let den = nonzero_zpoly(&mut r, delta);
    let mut acc = FPow::zero(n + 1);
    for i in 0..=n {
        let b = rand_form(&mut r, n + 1, deg_b, delta, 9);
        acc = acc.add(&FPow::new(b.into_poly(), den.clone(), ell - 1).partial(i, f.poly()), f.poly());
    }
    if acc.is_zero() {
        return Ok(());
    }
    ensure!(acc.pole == ell, "unexpected pole order {}", acc.pole);
    let num = HPoly::new(acc.num, ell * d - n as u32 - 1).map_err(err)?;
    let (g, _) = reduce(&IntegralFraction::new(num, acc.den, ell), &fam, false).map_err(err)?;
    ensure!(g.is_zero(), "a sum of derivatives has a nonzero reduced form");
    Ok(())
}

/// Coefficient degrees of the minimal telescoper against the a priori bound.
pub fn telescoper_degree_bound(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, delta)?;
    let input = rand_integrand(&mut r, n, d, ell, delta);
    let out = telesc_integral(&input, &f, &TelescConfig::default()).map_err(err)?;
    let (da, df) = param_degrees(&input, &f);
    let bound = degree_bound(out.op.order(), da, ell, n, d, df);
    ensure!(out.op.degree() as u128 <= bound, "degree {} above bound {bound}", out.op.degree());
    Ok(())
}

/// Cor. 3 style check: `Σ n_ℓ = ((d−1)^{n+1} + (−1)^{n+1}(d−1))/d`.
pub fn dimension_formula(seed: u64, n: usize, d: u32) -> Check {
    let mut r = rng(seed);
    let f = regular_form(&mut r, n + 1, d, 1)?;
    let dims = quotient_dims(&f).map_err(err)?;
    let total: usize = dims.iter().sum();
    let want = primitive_cohomology_dim(n, d);
    ensure!(BigInt::from(total) == want, "dims {dims:?} sum to {total}, formula gives {want}");
    Ok(())
}

/// Recovers a random `P/Q` from its values at `0, 1, 2, …`.
pub fn reconstruct_round_trip(seed: u64, nb: usize, db: usize) -> Check {
    let mut r = rng(seed);
    let p = rand_zpoly(&mut r, nb, 20);
    let q = nonzero_zpoly(&mut r, db);
    let want = RatFunc::new(p, q);
    let samples: Vec<_> = (0..(nb + db + 3) as i64).map(|x| (rat_int(x), want.eval(&rat_int(x)))).collect();
    let got = rational_reconstruct(&samples, nb, db).map_err(err)?;
    ensure!(got == want, "reconstructed {got:?}, expected {want:?}");
    Ok(())
}

fn eval_y(coeffs: &[ZPoly], v: i64) -> ZPoly {
    let mut acc = ZPoly::zero();
    let mut pw = BigInt::from(1);
    for c in coeffs {
        acc = acc.add(&c.mul_int(&pw));
        pw *= v;
    }
    acc
}

/// `R(x, 0)` of a random bivariate `R` from its specializations in `y`.
/// `None` means the draw was degenerate at `y = 0`.
pub fn limit_round_trip(seed: u64, dx: usize, dy: usize) -> Option<Check> {
    let mut r = rng(seed);
    let p: Vec<ZPoly> = (0..=dy).map(|_| rand_zpoly(&mut r, dx, 9)).collect();
    let q: Vec<ZPoly> = (0..=dy).map(|_| rand_zpoly(&mut r, dx, 9)).collect();
    if q[0].is_zero() || p[0].gcd(&q[0]).degree() > 0 {
        return None;
    }
    let want = RatFunc::new(p[0].clone(), q[0].clone());
    let got = limit_at_zero(
        |v| {
            let v = v.numer().try_into().unwrap();
            let den = eval_y(&q, v);
            Ok((!den.is_zero()).then(|| RatFunc::new(eval_y(&p, v), den)))
        },
        dx,
        dy,
    );
    Some(match got {
        Ok(Some(g)) if g == want => Ok(()),
        other => Err(format!("limit {other:?}, expected {want:?}")),
    })
}

type UP = UPoly<RatFunc>;

fn rand_upoly(r: &mut impl Rng, deg: usize, delta: usize) -> UP {
    UPoly::new((0..=deg).map(|_| RatFunc::from_poly(rand_zpoly(r, delta, 9))).collect())
}

/// Square-free of exact degree `deg`.
pub fn square_free(r: &mut impl Rng, deg: usize, delta: usize) -> UP {
    loop {
        let f = rand_upoly(r, deg, delta);
        if f.degree() == Some(deg) && f.gcd(&f.derivative()).degree() == Some(0) {
            return f;
        }
    }
}

/// `∂_x(v/f^k)·f^ℓ`.
fn derivative_times(v: &UP, k: u32, f: &UP, ell: u32) -> UP {
    let kk = RatFunc::from_i64(k as i64);
    v.derivative().mul(f).sub(&v.mul(&f.derivative()).scale(&kk)).mul(&f.pow(ell - k - 1))
}

/// Soundness and confinement: `a/f^ℓ = r/f + s + ∂(v/f^{ℓ−1})`, `deg r < deg f`.
pub fn hermite_soundness(seed: u64, df: usize, ell: u32) -> Check {
    let mut r = rng(seed);
    let f = square_free(&mut r, df, 1);
    let a = rand_upoly(&mut r, ell as usize * df + 1, 1);
    let h = hermite_reduce(&a, &f, ell).map_err(err)?;
    let rhs = h.r.mul(&f.pow(ell - 1)).add(&h.s.mul(&f.pow(ell))).add(&derivative_times(&h.v, h.v_pole, &f, ell));
    ensure!(rhs == a, "a/f^ℓ ≠ r/f + s + ∂(v/f^k)");
    ensure!(h.r.degree().is_none_or(|k| k < df), "deg r ≥ deg f");
    Ok(())
}

pub fn hermite_linearity(seed: u64, df: usize, ell: u32) -> Check {
    let mut r = rng(seed);
    let f = square_free(&mut r, df, 1);
    let a1 = rand_upoly(&mut r, ell as usize * df, 1);
    let a2 = rand_upoly(&mut r, ell as usize * df, 1);
    let c1 = RatFunc::new(rand_zpoly(&mut r, 1, 5), nonzero_zpoly(&mut r, 1));
    let c2 = RatFunc::from_poly(rand_zpoly(&mut r, 1, 5));
    let h = hermite_reduce(&a1.scale(&c1).add(&a2.scale(&c2)), &f, ell).map_err(err)?;
    let h1 = hermite_reduce(&a1, &f, ell).map_err(err)?;
    let h2 = hermite_reduce(&a2, &f, ell).map_err(err)?;
    ensure!(h.r == h1.r.scale(&c1).add(&h2.r.scale(&c2)), "r is not linear");
    Ok(())
}

/// A derivative plus a polynomial reduces to `r = 0`.
pub fn hermite_normalization(seed: u64, df: usize, ell: u32) -> Check {
    let mut r = rng(seed);
    let f = square_free(&mut r, df, 1);
    let s0 = rand_upoly(&mut r, 2, 1);
    let mut a = s0.mul(&f.pow(ell));
    if ell >= 2 {
        let b = rand_upoly(&mut r, (ell as usize - 1) * df + 1, 1);
        a = a.add(&derivative_times(&b, ell - 1, &f, ell));
    }
    let h = hermite_reduce(&a, &f, ell).map_err(err)?;
    ensure!(h.r.is_zero(), "derivative has nonzero reduced form");
    Ok(())
}

fn univariate(p: &UP) -> MPoly<RatFunc> {
    MPoly::from_terms(1, p.coeffs().iter().enumerate().map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())))
}

/// The `n = 1` pipeline against the Hermite telescoper.
pub fn hermite_vs_pipeline(seed: u64, df: usize, ell: u32) -> Check {
    let mut r = rng(seed);
    let f = square_free(&mut r, df, 1);
    let top = ell as usize * df - 2;
    let deg_a = r.gen_range(0..=top);
    let a = rand_upoly(&mut r, deg_a, 1);
    let pf = homogenize_pole(&univariate(&a), &univariate(&f), ell, 1).map_err(err)?;
    let main = telesc_projective_any(&pf, &AffineConfig::default()).map_err(err)?;
    let herm = hermite_telescoper(&a, &f, ell).map_err(err)?;
    ensure!(main.pipeline == Pipeline::Regular, "pipeline {:?}", main.pipeline);
    ensure!(main.op.normalized() == herm.normalized(), "pipeline {:?} vs Hermite {:?}", main.op, herm);
    Ok(())
}

fn to_rf(p: &MPoly<ZPoly>) -> MPoly<RatFunc> {
    p.map_coeffs(|c| RatFunc::from_poly(c.clone()))
}

/// Dense affine `a/f^ℓ` whose homogenization has degree exactly `−(n+1)`.
fn affine_instance(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> (MPoly<RatFunc>, MPoly<RatFunc>) {
    let mut r = rng(seed);
    let f = rand_form(&mut r, n + 1, d, delta, 9).poly().dehomogenize();
    let a = rand_form(&mut r, n + 1, ell * d - n as u32 - 1, delta, 9).poly().dehomogenize();
    (to_rf(&a), to_rf(&f))
}

/// Regular pipeline against the ansatz oracle. Returns the common operator.
pub fn oracle_agrees(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Result<DiffOp, String> {
    let (a, f) = affine_instance(seed, n, d, ell, delta);
    let pf = homogenize_pole(&a, &f, ell, n).map_err(err)?;
    let main = telesc_projective_any(&pf, &AffineConfig::default()).map_err(err)?;
    ensure!(main.pipeline == Pipeline::Regular, "draw is not smooth");
    let cfg = AnsatzConfig { max_order: main.op.order() + 1, ..Default::default() };
    let oracle = ansatz_telescoper(&a, &f, ell, n, &cfg).map_err(err)?;
    ensure!(main.op.normalized() == oracle.normalized(), "telesc {:?} vs oracle {:?}", main.op, oracle);
    Ok(main.op)
}

/// Deformation pipeline forced on a smooth instance against the regular one.
pub fn forced_singular_agrees(seed: u64, n: usize, d: u32, ell: u32, delta: usize) -> Result<DiffOp, String> {
    let (a, f) = affine_instance(seed, n, d, ell, delta);
    let pf = homogenize_pole(&a, &f, ell, n).map_err(err)?;
    let regular = telesc_projective_any(&pf, &AffineConfig::default()).map_err(err)?;
    ensure!(regular.pipeline == Pipeline::Regular, "draw is not smooth");
    let forced = telesc_projective_any(&pf, &AffineConfig { force_singular: true, ..Default::default() }).map_err(err)?;
    ensure!(forced.pipeline != Pipeline::Regular, "deformation was not used");
    ensure!(regular.op.normalized() == forced.op.normalized(), "regular {:?} vs deformed {:?}", regular.op, forced.op);
    Ok(regular.op)
}
