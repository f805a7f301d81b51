//! Telescopers found by brute force: the identity
//! `Σ_j c_j ∂_t^j (a/f^ℓ) = Σ_i ∂_i(g_i/f^p)` is read as one linear system
//! over ℚ(t) in the unknowns `c_j` and the coefficients of the `g_i`.
//!
//! The system is specialized at `t = t₀` modulo word primes. Columns are
//! ordered `g`-part first, then `c_0, c_1, …`, so the first `c`-column that
//! depends on its predecessors gives the minimal order and, normalized by
//! `c_k = 1`, a unique operator. Its coefficients are interpolated in `t`,
//! lifted to ℚ by CRT and rational reconstruction, and checked at fresh
//! specializations.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MPoly};
use crate::scalars::reconstruct::{crt, div_rem_mod, horner, interpolate_mod, mul_poly, rat_reconstruct, sub_poly};
use crate::scalars::{modp, Field, GcdDomain, Rat, RatFunc, Ring, UPoly, ZPoly};
use crate::telescoper::DiffOp;

#[derive(Clone, Debug)]
pub struct AnsatzConfig {
    pub max_order: usize,
    /// Total degree of the `g_i`; derived from the degree balance if `None`.
    pub cert_degree: Option<u32>,
    /// Pole order `p` of the certificate, `ℓ + max_order` if `None`.
    pub cert_pole: Option<u32>,
    /// Bound on the `t`-degree of numerators and denominators of `c_j/c_k`.
    pub t_degree: usize,
    /// Refuse systems with more matrix entries than this.
    pub max_entries: usize,
}

impl Default for AnsatzConfig {
    fn default() -> Self {
        AnsatzConfig { max_order: 4, cert_degree: None, cert_pole: None, t_degree: 400, max_entries: 4_000_000 }
    }
}

type Column = Vec<(usize, ZPoly)>;

struct System {
    cols: Vec<Column>,
    rows: usize,
    first_c: usize,
    /// `F = A/(D·f^ℓ)`; the `c`-unknowns are scaled by `D^{j+1}`.
    scale: ZPoly,
}

fn lcm_of_dens(p: &MPoly<RatFunc>) -> ZPoly {
    p.terms().fold(ZPoly::from_i64s(&[1]), |l, (_, c)| GcdDomain::lcm(&l, c.den()))
}

fn clear(p: &MPoly<RatFunc>, l: &ZPoly) -> MPoly<ZPoly> {
    p.map_coeffs(|c| c.num().mul(&l.div_exact(c.den()).expect("lcm")))
}

fn d_t(p: &MPoly<ZPoly>) -> MPoly<ZPoly> {
    p.map_coeffs(|c| c.derivative())
}

fn build(a: &MPoly<RatFunc>, f: &MPoly<RatFunc>, ell: u32, n: usize, cfg: &AnsatzConfig) -> Result<System> {
    let df = lcm_of_dens(f);
    let fi = clear(f, &df);
    let da = lcm_of_dens(a);
    let ai = clear(a, &da).map_coeffs(|c| c.mul(&df.pow(ell)));
    let d = fi.total_degree().ok_or(Error::ZeroDenominator)?;
    let deg_a = ai.total_degree().unwrap_or(0);
    let r = cfg.max_order as u32;
    let p = cfg.cert_pole.unwrap_or(ell + r);
    if p + 1 < ell + r {
        return Err(Error::DegreeError("certificate pole below ℓ + max_order − 1".into()));
    }
    // deg(∂_i g_i·f) must reach deg(N_j·f^{p+1−ℓ−j}); certificates coming
    // from projective ones, B_i/f^p with deg B_i = p·d − n, can cancel at the
    // top and need up to p·d − n + 1
    let balance = (deg_a + (p + 1 - ell) * d + 1).saturating_sub(d);
    let dg = cfg.cert_degree.unwrap_or(balance.max((p * d + 1).saturating_sub(n as u32)));

    // ∂_t^j F = N_j / (D^{j+1} f^{ℓ+j})
    let dd = da;
    let ddt = dd.derivative();
    let ft = d_t(&fi);
    let mut nums = vec![ai];
    for j in 0..r {
        let nj = &nums[j as usize];
        let m = ZPoly::from_i64s(&[(ell + j) as i64]);
        let next = d_t(nj)
            .scale(&dd)
            .mul(&fi)
            .sub(&nj.scale(&ddt.mul(&ZPoly::from_i64s(&[j as i64 + 1]))).mul(&fi))
            .sub(&nj.mul(&ft).scale(&dd.mul(&m)));
        nums.push(next);
    }

    let monos: Vec<Monomial> = (0..=dg).flat_map(|k| crate::multipoly::monomials_of_degree(n, k)).collect();
    let mut polys: Vec<MPoly<ZPoly>> = vec![];
    let pz = ZPoly::from_i64s(&[p as i64]);
    for i in 0..n {
        let fx = fi.partial(i);
        for m in &monos {
            let g = MPoly::monomial(m.clone(), ZPoly::from_i64s(&[1]));
            polys.push(g.partial(i).mul(&fi).sub(&g.mul(&fx).scale(&pz)));
        }
    }
    let first_c = polys.len();
    for (j, nj) in nums.iter().enumerate() {
        polys.push(nj.mul(&fi.pow(p + 1 - ell - j as u32)));
    }

    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut cols = Vec::with_capacity(polys.len());
    for q in polys {
        let mut col = vec![];
        for (m, c) in q.into_terms() {
            let next = index.len();
            let row = *index.entry(m).or_insert(next);
            col.push((row, c));
        }
        cols.push(col);
    }
    let rows = index.len();
    if rows.saturating_mul(cols.len()) > cfg.max_entries {
        return Err(Error::ResourceLimit(format!("ansatz system {rows}×{}", cols.len())));
    }
    Ok(System { cols, rows, first_c, scale: dd })
}

/// Per-prime residues of every column entry.
struct Reduced {
    p: u64,
    cols: Vec<Vec<(usize, Vec<u64>)>>,
}

impl System {
    fn reduce(&self, p: u64) -> Reduced {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, z)| (*r, z.coeffs().iter().map(|b| modp::reduce(b, p)).collect())).collect())
            .collect();
        Reduced { p, cols }
    }
}

/// Order `k` and the values `c'_0, …, c'_{k−1}` (with `c'_k = 1`) at `t0`,
/// or `None` if every `c`-column is independent.
fn solve_at(sys: &System, red: &Reduced, t0: u64) -> Option<(usize, Vec<u64>)> {
    let p = red.p;
    let ncols = red.cols.len();
    // row-major dense matrix
    let mut m = vec![vec![0u64; ncols]; sys.rows];
    for (j, col) in red.cols.iter().enumerate() {
        for (r, z) in col {
            m[*r][j] = horner(z, t0, p);
        }
    }
    let mut pivot_row_of = vec![usize::MAX; ncols];
    let mut next_row = 0;
    for j in 0..ncols {
        let Some(pr) = (next_row..sys.rows).find(|&r| m[r][j] != 0) else {
            if j >= sys.first_c {
                let k = j - sys.first_c;
                let vals = (0..k)
                    .map(|i| {
                        let row = pivot_row_of[sys.first_c + i];
                        (p - m[row][j]) % p
                    })
                    .collect();
                return Some((k, vals));
            }
            continue;
        };
        m.swap(pr, next_row);
        let inv = modp::inv_mod(m[next_row][j], p);
        for x in m[next_row][j..].iter_mut() {
            *x = modp::mul_mod(*x, inv, p);
        }
        let pivot = m[next_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next_row || row[j] == 0 {
                continue;
            }
            let x = row[j];
            for (y, &q) in row[j..].iter_mut().zip(&pivot[j..]) {
                if q != 0 {
                    *y = modp::sub_mod(*y, modp::mul_mod(x, q, p), p);
                }
            }
        }
        pivot_row_of[j] = next_row;
        next_row += 1;
    }
    None
}

fn sample_point(i: u64, p: u64) -> u64 {
    (i.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x2545_F491_4F6C_DD1D)) % p
}

/// `(num, monic den)` over 𝔽_p from samples, checked on the last two.
fn fit_mod(xs: &[u64], ys: &[u64], p: u64, bound: usize) -> Option<(Vec<u64>, Vec<u64>)> {
    let m = xs.len() - 2;
    let interp = interpolate_mod(&xs[..m], &ys[..m], p)?;
    let mut modulus = vec![1u64];
    for &x in &xs[..m] {
        modulus = mul_poly(&modulus, &[(p - x) % p, 1], p);
    }
    let (mut r0, mut r1) = (modulus, interp);
    let (mut u0, mut u1) = (Vec::<u64>::new(), vec![1u64]);
    loop {
        if r1.is_empty() {
            return None;
        }
        let deg_r = r1.len() - 1;
        let deg_u = u1.len() - 1;
        if deg_r.max(deg_u) <= bound && deg_r + deg_u + 1 < m && xs.iter().all(|&x| horner(&u1, x, p) != 0) {
            let inv = modp::inv_mod(*u1.last().unwrap(), p);
            let num: Vec<u64> = r1.iter().map(|&c| modp::mul_mod(c, inv, p)).collect();
            let den: Vec<u64> = u1.iter().map(|&c| modp::mul_mod(c, inv, p)).collect();
            let ok = (m..xs.len()).all(|i| {
                modp::mul_mod(ys[i], horner(&den, xs[i], p), p) == horner(&num, xs[i], p)
            });
            if ok {
                return Some((num, den));
            }
        }
        if deg_u > bound {
            return None;
        }
        let (q, r2) = div_rem_mod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r2);
        let u2 = sub_poly(&u0, &mul_poly(&q, &u1, p), p);
        u0 = std::mem::replace(&mut u1, u2);
    }
}

type Image = Vec<(Vec<u64>, Vec<u64>)>;

/// Images of the `k` coefficient functions modulo `p`.
fn image_mod(sys: &System, p: u64, k: usize, cfg: &AnsatzConfig) -> Result<Image> {
    let red = sys.reduce(p);
    let (mut xs, mut ys): (Vec<u64>, Vec<Vec<u64>>) = (vec![], vec![vec![]; k]);
    let mut want = 8;
    let mut i = 0u64;
    let mut misses = 0;
    loop {
        while xs.len() < want {
            i += 1;
            let t0 = sample_point(i, p);
            match solve_at(sys, &red, t0) {
                Some((kk, vals)) if kk == k => {
                    xs.push(t0);
                    for (y, v) in ys.iter_mut().zip(vals) {
                        y.push(v);
                    }
                }
                _ => {
                    misses += 1;
                    if misses > 8 + xs.len() {
                        return Err(Error::Internal("too many unlucky specializations".into()));
                    }
                }
            }
        }
        let fits: Option<Image> = ys.iter().map(|y| fit_mod(&xs, y, p, cfg.t_degree)).collect();
        if let Some(f) = fits {
            return Ok(f);
        }
        if want > 2 * cfg.t_degree + 4 {
            return Err(Error::NotFound);
        }
        want = (want * 2).min(2 * cfg.t_degree + 5);
    }
}

fn lift(acc: &[(Vec<BigInt>, Vec<BigInt>)], m: &BigInt) -> Option<Vec<RatFunc>> {
    acc.iter()
        .map(|(num, den)| {
            let n: Option<Vec<Rat>> = num.iter().map(|c| rat_reconstruct(c, m)).collect();
            let d: Option<Vec<Rat>> = den.iter().map(|c| rat_reconstruct(c, m)).collect();
            Some(RatFunc::from_upolys(&UPoly::new(n?), &UPoly::new(d?)))
        })
        .collect()
}

/// `c'_k·col_k + Σ_{j<k} c'_j·col_j` lies in the span of the `g`-columns
/// after specialization at `t0` modulo `p`.
fn check_at(sys: &System, cs: &[RatFunc], p: u64, t0: u64) -> bool {
    let red = sys.reduce(p);
    let eval = |z: &ZPoly| horner(&z.coeffs().iter().map(|b| modp::reduce(b, p)).collect::<Vec<_>>(), t0, p);
    let mut combined = vec![0u64; sys.rows];
    for (j, c) in cs.iter().enumerate() {
        let den = eval(c.den());
        if den == 0 {
            return true;
        }
        let v = modp::mul_mod(eval(c.num()), modp::inv_mod(den, p), p);
        for (r, z) in &red.cols[sys.first_c + j] {
            combined[*r] = modp::add_mod(combined[*r], modp::mul_mod(v, horner(z, t0, p), p), p);
        }
    }
    let g: Vec<Vec<u64>> = (0..sys.rows)
        .map(|r| {
            let mut row = vec![0u64; sys.first_c];
            for (j, col) in red.cols[..sys.first_c].iter().enumerate() {
                if let Some((_, z)) = col.iter().find(|(rr, _)| *rr == r) {
                    row[j] = horner(z, t0, p);
                }
            }
            row
        })
        .collect();
    let base = modp::rank_mod_p(g.clone(), p);
    let with: Vec<Vec<u64>> = g.into_iter().zip(&combined).map(|(mut row, &c)| {
        row.push(c);
        row
    }).collect();
    modp::rank_mod_p(with, p) == base
}

/// The minimal telescoper of `a/f^ℓ` (affine, `n` variables) whose
/// certificate has the shape `g_i/f^p` with `deg g_i` bounded.
pub fn ansatz_telescoper(a: &MPoly<RatFunc>, f: &MPoly<RatFunc>, ell: u32, n: usize, cfg: &AnsatzConfig) -> Result<DiffOp> {
    let sys = build(a, f, ell, n, cfg)?;
    let primes = modp::primes();
    // generic order: majority over a few specializations
    let red = sys.reduce(primes[0]);
    let mut votes: BTreeMap<Option<usize>, usize> = BTreeMap::new();
    for i in 0..5 {
        *votes.entry(solve_at(&sys, &red, sample_point(1000 + i, primes[0])).map(|x| x.0)).or_default() += 1;
    }
    let k = votes.iter().max_by_key(|(k, c)| (**c, **k)).and_then(|(k, _)| *k).ok_or(Error::NotFound)?;
    if k == 0 {
        return Ok(DiffOp::one());
    }

    let mut acc: Vec<(Vec<BigInt>, Vec<BigInt>)> = vec![];
    let mut shape: Vec<(usize, usize)> = vec![];
    let mut modulus = BigInt::from(1);
    let mut last: Option<Vec<RatFunc>> = None;
    for &p in primes.iter().take(64) {
        let img = image_mod(&sys, p, k, cfg)?;
        let s: Vec<(usize, usize)> = img.iter().map(|(a, b)| (a.len(), b.len())).collect();
        let size = |v: &[(usize, usize)]| v.iter().map(|x| x.0 + x.1).sum::<usize>();
        if s != shape {
            if !shape.is_empty() && size(&s) <= size(&shape) {
                // unlucky prime
                continue;
            }
            // first image, or a larger and therefore more generic shape
            shape = s;
            acc = img.iter().map(|(a, b)| (vec![BigInt::from(0); a.len()], vec![BigInt::from(0); b.len()])).collect();
            modulus = BigInt::from(1);
            last = None;
        }
        for ((an, ad), (im_n, im_d)) in acc.iter_mut().zip(&img) {
            for (x, &r) in an.iter_mut().zip(im_n) {
                *x = crt(x, &modulus, r, p);
            }
            for (x, &r) in ad.iter_mut().zip(im_d) {
                *x = crt(x, &modulus, r, p);
            }
        }
        modulus *= BigInt::from(p);
        let cur = lift(&acc, &modulus);
        if cur.is_some() && cur == last {
            let primed: Vec<RatFunc> = cur.clone().unwrap().into_iter().chain([RatFunc::one()]).collect();
            let fresh = primes[primes.len() - 1];
            if (1..=3).all(|i| check_at(&sys, &primed, fresh, sample_point(5000 + i, fresh))) {
                // c_j = c'_j·D^{j+1}, normalized by c_k
                let cs: Vec<RatFunc> = primed
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.div(&RatFunc::from_poly(sys.scale.pow((k - j) as u32))))
                    .collect();
                return Ok(DiffOp::from_ratfuncs(&cs));
            }
        }
        last = cur;
    }
    Err(Error::ResourceLimit("rational reconstruction did not stabilize".into()))
}
