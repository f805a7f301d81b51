use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::multipoly::{basis_signed, Basis, HPoly, Monomial};
use crate::scalars::GcdDomain;

use super::matrix::{inverse, rank_profile, Matrix, PivotPolicy};

/// Degree from which `φ_q` is onto for a regular `f`: `(n+1)d − n`.
pub fn macaulay_bound(n: usize, d: u32) -> u32 {
    (n as u32 + 1) * d - n as u32
}

/// Largest row count accepted for a Macaulay matrix before elimination is
/// refused with [`Error::ResourceLimit`].
pub const DEFAULT_MAX_ROWS: usize = 400;

/// Matrix of `φ_q : (v₀,…,vₙ) ↦ Σ vᵢ ∂ᵢf` in monomial bases.
///
/// Rows are the monomials of degree `q−n−1`; column `i·|cols| + k` is
/// `cols[k]·∂ᵢf`.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix<R: GcdDomain> {
    pub q: u32,
    pub n: usize,
    pub d: u32,
    pub rows: Arc<Basis>,
    pub cols: Arc<Basis>,
    pub matrix: Matrix<R>,
}

pub fn build_matrix<R: GcdDomain>(f: &HPoly<R>, q: u32) -> MacaulayMatrix<R> {
    let nv = f.nvars();
    let n = nv - 1;
    let d = f.degree();
    let rows = basis_signed(nv, q as i64 - n as i64 - 1);
    let cols = basis_signed(nv, q as i64 - d as i64 - n as i64);
    let mut matrix = Matrix::zeros(rows.len(), nv * cols.len());
    if !cols.is_empty() {
        for i in 0..nv {
            let df = f.partial(i);
            for (k, m) in cols.monos.iter().enumerate() {
                for (u, c) in df.terms() {
                    let w = m.mul(u);
                    let r = rows.index_of(&w).expect("row monomial");
                    matrix.set(r, i * cols.len() + k, c.clone());
                }
            }
        }
    }
    MacaulayMatrix { q, n, d, rows, cols, matrix }
}

/// A split `ψ_q` of `φ_q`, stored as the inverse `N/E` of a maximal-rank
/// minor. `ψ_q` sends a row vector `a` to `N·a|_P` placed on the pivot
/// columns and zero elsewhere, so `π_q(a) = a − φ_q ψ_q(a)` vanishes on the
/// pivot rows.
#[derive(Clone, Debug)]
pub struct MacaulaySplit<R: GcdDomain> {
    pub q: u32,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    pub inv_num: Matrix<R>,
    /// Common denominator `E_q`.
    pub e: R,
    pub mac: MacaulayMatrix<R>,
}

pub fn compute_split<R: GcdDomain>(f: &HPoly<R>, q: u32, policy: PivotPolicy) -> MacaulaySplit<R> {
    let mac = build_matrix(f, q);
    let prof = rank_profile(&mac.matrix, policy);
    let minor = mac.matrix.submatrix(&prof.pivot_rows, &prof.pivot_cols);
    let (inv_num, e) = inverse(&minor).expect("pivot minor is nonsingular");
    let s = MacaulaySplit {
        q,
        rank: prof.rank,
        pivot_rows: prof.pivot_rows,
        pivot_cols: prof.pivot_cols,
        inv_num,
        e,
        mac,
    };
    debug_assert!(s.degree_bounds_hold(max_param_degree(f)));
    s
}

pub(crate) fn max_param_degree<R: GcdDomain>(f: &HPoly<R>) -> usize {
    f.terms().map(|(_, c)| c.param_degree()).max().unwrap_or(0)
}

impl<R: GcdDomain> MacaulaySplit<R> {
    pub fn nrows(&self) -> usize {
        self.mac.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.mac.matrix.ncols()
    }

    /// `E·ψ_q(a)` as a column vector.
    pub fn psi(&self, a: &[R]) -> Vec<R> {
        let ap: Vec<R> = self.pivot_rows.iter().map(|&r| a[r].clone()).collect();
        let y = self.inv_num.mul_vec(&ap);
        let mut out = vec![R::zero(); self.ncols()];
        for (k, &c) in self.pivot_cols.iter().enumerate() {
            out[c] = y[k].clone();
        }
        out
    }

    /// `(E·ψ_q(a), E·π_q(a))`.
    pub fn apply(&self, a: &[R]) -> (Vec<R>, Vec<R>) {
        let cols = self.psi(a);
        let mut rem: Vec<R> = a.iter().map(|x| x.mul(&self.e)).collect();
        for &r in &self.pivot_rows {
            rem[r] = R::zero();
        }
        let m = &self.mac.matrix;
        let pivot_row = {
            let mut v = vec![false; self.nrows()];
            for &r in &self.pivot_rows {
                v[r] = true;
            }
            v
        };
        for (w, slot) in rem.iter_mut().enumerate() {
            if pivot_row[w] {
                continue;
            }
            for &c in &self.pivot_cols {
                let x = m.get(w, c);
                if !x.is_zero() && !cols[c].is_zero() {
                    *slot = slot.sub(&x.mul(&cols[c]));
                }
            }
        }
        (cols, rem)
    }

    /// Matrix of `E·ψ_q`, of size `C_q × R_q`.
    pub fn psi_matrix(&self) -> Matrix<R> {
        let mut out = Matrix::zeros(self.ncols(), self.nrows());
        for (k, &c) in self.pivot_cols.iter().enumerate() {
            for (j, &r) in self.pivot_rows.iter().enumerate() {
                out.set(c, r, self.inv_num.get(k, j).clone());
            }
        }
        out
    }

    /// Matrix of `E·π_q = E·id − φ_q·(E·ψ_q)`.
    pub fn pi_matrix(&self) -> Matrix<R> {
        let fp = self.mac.matrix.mul(&self.psi_matrix());
        let mut out = Matrix::identity(self.nrows()).scale(&self.e);
        for i in 0..self.nrows() {
            for j in 0..self.nrows() {
                let v = out.get(i, j).sub(fp.get(i, j));
                out.set(i, j, v);
            }
        }
        out
    }

    /// `deg_t E ≤ rank·δ` and every numerator entry has degree at most
    /// `(rank−1)·δ`, where `δ` bounds the `t`-degrees of `f`.
    pub fn degree_bounds_hold(&self, delta: usize) -> bool {
        if self.rank == 0 {
            return self.e.param_degree() == 0;
        }
        let ok_e = self.e.param_degree() <= self.rank * delta;
        let lim = (self.rank - 1) * delta;
        let ok_n = (0..self.rank).all(|i| (0..self.rank).all(|j| self.inv_num.get(i, j).param_degree() <= lim));
        ok_e && ok_n
    }

    /// Row indices not in the pivot set, in increasing order. Remainders
    /// are supported there.
    pub fn free_rows(&self) -> Vec<usize> {
        let mut v = vec![true; self.nrows()];
        for &r in &self.pivot_rows {
            v[r] = false;
        }
        (0..self.nrows()).filter(|&i| v[i]).collect()
    }
}

/// `E·a = r + Σ vᵢ ∂ᵢf` with `r = E·π(a)`.
#[derive(Clone, Debug)]
pub struct Decomposition<R: GcdDomain> {
    pub v: Vec<HPoly<R>>,
    pub r: HPoly<R>,
    pub den: R,
}

/// Splits of one `f` in all degrees, computed on demand and shared.
#[derive(Debug)]
pub struct SplitFamily<R: GcdDomain> {
    f: HPoly<R>,
    policy: PivotPolicy,
    max_rows: usize,
    cache: Mutex<HashMap<u32, Arc<MacaulaySplit<R>>>>,
}

impl<R: GcdDomain> SplitFamily<R> {
    pub fn new(f: HPoly<R>, policy: PivotPolicy) -> Self {
        assert!(f.degree() >= 1, "f must have positive degree");
        SplitFamily {
            f,
            policy,
            max_rows: DEFAULT_MAX_ROWS,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_rows(mut self, max_rows: usize) -> Self {
        self.max_rows = max_rows;
        self
    }

    pub fn f(&self) -> &HPoly<R> {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn d(&self) -> u32 {
        self.f.degree()
    }

    pub fn policy(&self) -> PivotPolicy {
        self.policy
    }

    pub fn bound(&self) -> u32 {
        macaulay_bound(self.n(), self.d())
    }

    /// Highest degree that gets its own split: `D`, or `n+1` when `f` is
    /// linear and `D` has no monomials in the row space.
    pub fn ceiling(&self) -> u32 {
        self.bound().max(self.n() as u32 + 1)
    }

    /// Split in degree `q` up to [`SplitFamily::ceiling`].
    pub fn split(&self, q: u32) -> Result<Arc<MacaulaySplit<R>>> {
        assert!(q <= self.ceiling(), "degree above Macaulay's bound");
        if let Some(s) = self.cache.lock().unwrap().get(&q) {
            return Ok(s.clone());
        }
        let rows = basis_signed(self.f.nvars(), q as i64 - self.n() as i64 - 1).len();
        if rows > self.max_rows {
            return Err(Error::ResourceLimit(format!(
                "Macaulay matrix in degree {} has {} rows (limit {})",
                q, rows, self.max_rows
            )));
        }
        let s = Arc::new(compute_split(&self.f, q, self.policy));
        Ok(self.cache.lock().unwrap().entry(q).or_insert(s).clone())
    }

    /// Largest `t`-degree of the denominators computed so far.
    pub fn delta_e(&self) -> usize {
        self.cache.lock().unwrap().values().map(|s| s.e.param_degree()).max().unwrap_or(0)
    }

    /// Decomposes `a` (degree `q−n−1`) as `E·a = r + Σ vᵢ ∂ᵢf`. Above
    /// Macaulay's bound every monomial `w` is written `m·w′` with `m` its
    /// greedy divisor of degree `q−D`, and `ψ_D` is applied to each group.
    pub fn decompose(&self, a: &HPoly<R>) -> Result<Decomposition<R>> {
        let nv = self.f.nvars();
        let n = self.n();
        let d = self.d();
        let q = a.degree() + n as u32 + 1;
        let vdeg = q as i64 - d as i64 - n as i64;
        let bound = self.ceiling();
        if q <= bound {
            let s = self.split(q)?;
            let (cols, rem) = s.apply(&a.coords());
            let r = HPoly::from_coords(nv, a.degree(), &rem);
            let v = if vdeg < 0 {
                vec![HPoly::zero(nv, 0); nv]
            } else {
                let k = s.mac.cols.len();
                (0..nv)
                    .map(|i| HPoly::from_coords(nv, vdeg as u32, &cols[i * k..(i + 1) * k]))
                    .collect()
            };
            return Ok(Decomposition { v, r, den: s.e.clone() });
        }
        let s = self.split(bound)?;
        let shift = q - bound;
        let low = s.mac.rows.clone();
        let mut groups: HashMap<Monomial, Vec<R>> = HashMap::new();
        for (w, c) in a.terms() {
            let m = w.greedy_divisor(shift);
            let rest = w.div(&m).unwrap();
            let g = groups.entry(m).or_insert_with(|| vec![R::zero(); low.len()]);
            g[low.index_of(&rest).unwrap()] = c.clone();
        }
        let vdeg = vdeg as u32;
        let mut v = vec![HPoly::zero(nv, vdeg); nv];
        let mut r = HPoly::zero(nv, a.degree());
        let k = s.mac.cols.len();
        let mut keys: Vec<&Monomial> = groups.keys().collect();
        keys.sort();
        for m in keys {
            let (cols, rem) = s.apply(&groups[m]);
            for (i, vi) in v.iter_mut().enumerate() {
                let part = HPoly::from_coords(nv, vdeg - shift, &cols[i * k..(i + 1) * k]);
                *vi = vi.add(&part.mul_monomial(m));
            }
            let rp = HPoly::from_coords(nv, a.degree() - shift, &rem);
            r = r.add(&rp.mul_monomial(m));
        }
        Ok(Decomposition { v, r, den: s.e.clone() })
    }

    /// `n_ℓ = R_{ℓd} − rank φ_{ℓd}` for `ℓ = 1…n`; zero when `ℓd > D`.
    pub fn quotient_dims(&self) -> Result<Vec<usize>> {
        (1..=self.n() as u32)
            .map(|l| {
                let q = l * self.d();
                if q > self.bound() {
                    return Ok(0);
                }
                let s = self.split(q)?;
                Ok(s.nrows() - s.rank)
            })
            .collect()
    }
}
