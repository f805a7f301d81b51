//! Linear relations among vectors over ℚ(t), given by numerators in ℤ\[t\].
//!
//! A specialization `t = t₀` modulo a word prime locates the first
//! dependent vector and a nonsingular minor; the relation itself is then
//! solved and checked exactly. A specialization can only lose rank, so an
//! independence verdict from it is a proof, and a dependence verdict is
//! confirmed or refuted by the exact check.

use crate::macaulay::{inverse, primitive_vector, rank_kernel_minor, Matrix, PivotPolicy};
use crate::scalars::{modp, Ring, ZPoly};

/// `Σ_{k<r} z_k·v_k = e·v_r` with `e ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub z: Vec<ZPoly>,
    pub e: ZPoly,
}

const WITNESSES: [(u64, usize); 3] = [(1_000_003, 0), (77_777_771, 1), (3_141_593, 2)];

fn eval_mod(z: &ZPoly, t0: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for c in z.coeffs().iter().rev() {
        acc = (modp::mul_mod(acc, t0, p) + modp::reduce(c, p)) % p;
    }
    acc
}

/// For each column, whether it is independent of the previous ones
/// modulo `p` at `t = t0`, and the pivot row of each independent column.
fn modular_profile(cols: &[&[ZPoly]], rows: &[usize], t0: u64, p: u64) -> (Vec<bool>, Vec<usize>) {
    let mut basis: Vec<(usize, Vec<u64>)> = vec![];
    let mut indep = vec![];
    let mut pivots = vec![];
    for col in cols {
        let mut v: Vec<u64> = rows.iter().map(|&r| eval_mod(&col[r], t0, p)).collect();
        for (rho, b) in &basis {
            let x = v[*rho];
            if x != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    if *bi != 0 {
                        *vi = modp::sub_mod(*vi, modp::mul_mod(x, *bi, p), p);
                    }
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(rho) => {
                let inv = modp::inv_mod(v[rho], p);
                for x in v.iter_mut() {
                    *x = modp::mul_mod(*x, inv, p);
                }
                basis.push((rho, v));
                indep.push(true);
                pivots.push(rows[rho]);
            }
            None => indep.push(false),
        }
    }
    (indep, pivots)
}

/// Solves `Σ_{k<r} z_k·cols[k] = e·cols[r]` on `pivot_rows` and checks the
/// solution on every row.
fn exact_relation(cols: &[&[ZPoly]], r: usize, pivot_rows: &[usize], rows: &[usize]) -> Option<Relation> {
    let a = Matrix::from_rows(pivot_rows.iter().map(|&i| (0..r).map(|k| cols[k][i].clone()).collect()).collect());
    let (n, e) = if r == 0 { (Matrix::zeros(0, 0), ZPoly::from_i64s(&[1])) } else { inverse(&a)? };
    let b: Vec<ZPoly> = pivot_rows.iter().map(|&i| cols[r][i].clone()).collect();
    let z = n.mul_vec(&b);
    for &i in rows {
        let mut lhs = ZPoly::zero();
        for (k, zk) in z.iter().enumerate() {
            if !zk.is_zero() && !cols[k][i].is_zero() {
                lhs = lhs.add(&zk.mul(&cols[k][i]));
            }
        }
        if lhs != e.mul(&cols[r][i]) {
            return None;
        }
    }
    let mut all = z;
    all.push(e);
    let mut all = primitive_vector(all);
    let e = all.pop().unwrap();
    Some(Relation { z: all, e })
}

fn support(cols: &[&[ZPoly]]) -> Vec<usize> {
    let len = cols.first().map_or(0, |c| c.len());
    (0..len).filter(|&i| cols.iter().any(|c| !c[i].is_zero())).collect()
}

/// The smallest `r` such that `cols[r]` depends on `cols[..r]`, with the
/// relation; `None` if all columns are independent.
pub fn first_relation(cols: &[&[ZPoly]]) -> Option<(usize, Relation)> {
    let rows = support(cols);
    for &(t0, pi) in &WITNESSES {
        let p = modp::primes()[pi];
        let (indep, pivots) = modular_profile(cols, &rows, t0, p);
        let Some(r) = indep.iter().position(|&x| !x) else {
            return None;
        };
        if let Some(rel) = exact_relation(cols, r, &pivots[..r], &rows) {
            return Some((r, rel));
        }
    }
    exact_first_relation(cols, &rows)
}

/// Fallback when every specialization was unlucky: exact kernels of the
/// growing column sets.
fn exact_first_relation(cols: &[&[ZPoly]], rows: &[usize]) -> Option<(usize, Relation)> {
    for r in 0..cols.len() {
        let m = Matrix::from_rows(rows.iter().map(|&i| (0..=r).map(|k| cols[k][i].clone()).collect()).collect());
        let rk = rank_kernel_minor(&m, PivotPolicy::LowDegreeFirst);
        if rk.profile.rank <= r {
            // columns are processed left to right, so the first r are a basis
            let v = rk.kernel.into_iter().next().expect("kernel vector");
            let mut v = primitive_vector(v);
            let e = v.pop().unwrap();
            let z = v.into_iter().map(|x| x.neg()).collect();
            return Some((r, Relation { z, e }));
        }
    }
    None
}

/// `Some(z/e)` with `Σ_{k<last} z_k v_k = e·v_last` if the last column lies
/// in the span of the others, using exact elimination only.
pub fn solve_last(cols: &[&[ZPoly]]) -> Option<Relation> {
    let r = cols.len() - 1;
    let rows = support(cols);
    if rows.is_empty() {
        return Some(Relation {
            z: vec![ZPoly::zero(); r],
            e: ZPoly::from_i64s(&[1]),
        });
    }
    let m = Matrix::from_rows(rows.iter().map(|&i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    let rk = rank_kernel_minor(&m, PivotPolicy::LowDegreeFirst);
    if rk.profile.pivot_cols.contains(&r) {
        return None;
    }
    let v = rk.kernel.into_iter().last().expect("kernel vector of the last column");
    let mut v = primitive_vector(v);
    let e = v.pop().unwrap();
    Some(Relation {
        z: v.into_iter().map(|x| x.neg()).collect(),
        e,
    })
}
