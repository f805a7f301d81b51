//! Dense matrices over an integral domain and fraction-free elimination.

use std::fmt;

use crate::scalars::{GcdDomain, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_rows(rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, k: &R) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// How pivots are chosen during elimination. Any choice yields a valid
/// maximal-rank minor; the alternative exists to cross-check results that
/// must not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PivotPolicy {
    /// Columns left to right, and within a column the nonzero entry of
    /// smallest size (degree in `t`, then bit length), earliest row on ties.
    #[default]
    LowDegreeFirst,
    /// Columns right to left, latest nonzero row first.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

/// Rank and a maximal nonsingular minor by Bareiss elimination.
pub fn rank_profile<R: GcdDomain>(m: &Matrix<R>, policy: PivotPolicy) -> RankProfile {
    let order: Vec<usize> = match policy {
        PivotPolicy::LowDegreeFirst => (0..m.cols).collect(),
        PivotPolicy::Reversed => (0..m.cols).rev().collect(),
    };
    let mut a = m.to_rows();
    let mut active: Vec<usize> = (0..m.rows).collect();
    let mut prev = R::one();
    let mut prof = RankProfile {
        rank: 0,
        pivot_rows: vec![],
        pivot_cols: vec![],
    };
    for (pos, &c) in order.iter().enumerate() {
        if active.is_empty() {
            break;
        }
        let cand = active.iter().enumerate().filter(|(_, &r)| !a[r][c].is_zero());
        let chosen = match policy {
            PivotPolicy::LowDegreeFirst => cand.min_by_key(|(_, &r)| a[r][c].size_key()),
            PivotPolicy::Reversed => cand.max_by_key(|(_, &r)| r),
        };
        let Some((slot, &p)) = chosen else {
            continue;
        };
        active.remove(slot);
        let prow = std::mem::take(&mut a[p]);
        let piv = prow[c].clone();
        let rest = &order[pos + 1..];
        for &r in &active {
            let row = &mut a[r];
            let x = row[c].clone();
            for &j in rest {
                let v = if x.is_zero() {
                    row[j].mul(&piv)
                } else {
                    row[j].mul(&piv).sub(&x.mul(&prow[j]))
                };
                row[j] = if prev.is_one() { v } else { v.div_known(&prev) };
            }
            row[c] = R::zero();
        }
        prev = piv;
        prof.rank += 1;
        prof.pivot_rows.push(p);
        prof.pivot_cols.push(c);
    }
    prof
}

pub fn rank<R: GcdDomain>(m: &Matrix<R>) -> usize {
    rank_profile(m, PivotPolicy::default()).rank
}

/// `A⁻¹ = N / E` for a square nonsingular `A`, in lowest terms: `E` is the
/// lcm of the denominators of the entries of `A⁻¹`, normalized.
/// `None` if `A` is singular.
pub fn inverse<R: GcdDomain>(a: &Matrix<R>) -> Option<(Matrix<R>, R)> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    if n == 0 {
        return Some((Matrix::zeros(0, 0), R::one()));
    }
    // fraction-free Gauss–Jordan on [A | I]
    let w = 2 * n;
    let mut m: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { R::one() } else { R::zero() }));
            r
        })
        .collect();
    let mut prev = R::one();
    for k in 0..n {
        let p = (k..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].size_key())?;
        m.swap(k, p);
        let prow = m[k].clone();
        let piv = prow[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let x = row[k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = if x.is_zero() {
                    row[j].mul(&piv)
                } else {
                    row[j].mul(&piv).sub(&x.mul(&prow[j]))
                };
                row[j] = if prev.is_one() { v } else { v.div_known(&prev) };
            }
            row[k] = R::zero();
        }
        prev = piv;
    }
    // now [det·I | adj-like], with every diagonal entry equal to det
    let det = m[0][0].clone();
    let mut g = det.clone();
    'outer: for row in &m {
        for x in &row[n..] {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    break 'outer;
                }
            }
        }
    }
    let (e, flip) = det.div_known(&g).normalize_unit();
    let g = if flip { g.neg() } else { g };
    let rows = m
        .into_iter()
        .map(|r| r[n..].iter().map(|x| if x.is_zero() { R::zero() } else { x.div_known(&g) }).collect())
        .collect();
    Some((Matrix::from_rows(rows), e))
}

/// Rank, kernel basis, pivot rows/columns, and the exact inverse `N/E` of
/// the pivot minor.
#[derive(Clone, Debug)]
pub struct RankKernelMinor<R: GcdDomain> {
    pub profile: RankProfile,
    /// Right kernel vectors, one per non-pivot column, each primitive.
    pub kernel: Vec<Vec<R>>,
    pub inv_num: Matrix<R>,
    pub inv_den: R,
}

pub fn rank_kernel_minor<R: GcdDomain>(m: &Matrix<R>, policy: PivotPolicy) -> RankKernelMinor<R> {
    let profile = rank_profile(m, policy);
    let minor = m.submatrix(&profile.pivot_rows, &profile.pivot_cols);
    let (inv_num, inv_den) = inverse(&minor).expect("pivot minor is nonsingular");
    let mut kernel = vec![];
    for c in 0..m.cols {
        if profile.pivot_cols.contains(&c) {
            continue;
        }
        let rhs: Vec<R> = profile.pivot_rows.iter().map(|&r| m.get(r, c).clone()).collect();
        let y = inv_num.mul_vec(&rhs);
        let mut x = vec![R::zero(); m.cols];
        x[c] = inv_den.clone();
        for (k, &pc) in profile.pivot_cols.iter().enumerate() {
            x[pc] = y[k].neg();
        }
        kernel.push(primitive_vector(x));
    }
    RankKernelMinor {
        profile,
        kernel,
        inv_num,
        inv_den,
    }
}

/// Divides a vector by the gcd of its entries and normalizes the sign of
/// its last nonzero entry.
pub fn primitive_vector<R: GcdDomain>(v: Vec<R>) -> Vec<R> {
    let mut g = R::zero();
    for x in &v {
        if !x.is_zero() {
            g = if g.is_zero() { x.normalize_unit().0 } else { g.gcd(x) };
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return v;
    }
    let flip = v.iter().rev().find(|x| !x.is_zero()).map(|x| x.normalize_unit().1).unwrap_or(false);
    let g = if flip { g.neg() } else { g };
    if g.is_one() {
        return v;
    }
    v.into_iter().map(|x| if x.is_zero() { x } else { x.div_known(&g) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ZPoly;
    use num_bigint::BigInt;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    fn ints(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::<ZPoly>::identity(3);
        let r = rank_kernel_minor(&id, PivotPolicy::default());
        assert_eq!(r.profile.rank, 3);
        assert!(r.kernel.is_empty());
        assert!(r.inv_den.is_one());
        assert_eq!(r.inv_num, id);
        let zero = Matrix::<ZPoly>::zeros(2, 3);
        let r = rank_kernel_minor(&zero, PivotPolicy::default());
        assert_eq!(r.profile.rank, 0);
        assert_eq!(r.kernel.len(), 3);
    }

    #[test]
    fn proportional_rows() {
        // [[1, t], [t, t^2]]
        let m = Matrix::from_rows(vec![vec![z(&[1]), z(&[0, 1])], vec![z(&[0, 1]), z(&[0, 0, 1])]]);
        let r = rank_kernel_minor(&m, PivotPolicy::default());
        assert_eq!(r.profile.rank, 1);
        assert_eq!(r.kernel, vec![vec![z(&[0, -1]), z(&[1])]]);
        let r2 = rank_kernel_minor(&m, PivotPolicy::Reversed);
        assert_eq!(r2.profile.rank, 1);
        assert_eq!(r2.kernel, vec![vec![z(&[0, -1]), z(&[1])]]);
    }

    #[test]
    fn inverse_lowest_terms() {
        // [[2, 0], [0, 4]]⁻¹ = [[2, 0], [0, 1]] / 4
        let (n, e) = inverse(&ints(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(e, BigInt::from(4));
        assert_eq!(n, ints(&[&[2, 0], &[0, 1]]));
        // [[t, 1], [0, t]]⁻¹ = [[t, -1], [0, t]] / t^2
        let m = Matrix::from_rows(vec![vec![z(&[0, 1]), z(&[1])], vec![z(&[]), z(&[0, 1])]]);
        let (n, e) = inverse(&m).unwrap();
        assert_eq!(e, z(&[0, 0, 1]));
        assert_eq!(m.mul(&n), Matrix::identity(2).scale(&e));
        assert!(inverse(&ints(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn negative_determinant_sign() {
        let m = ints(&[&[0, 1], &[1, 0]]);
        let (n, e) = inverse(&m).unwrap();
        assert_eq!(e, BigInt::from(1));
        assert_eq!(m.mul(&n), Matrix::identity(2));
    }

    #[test]
    fn rank_with_row_swaps() {
        let m = ints(&[&[0, 0, 1], &[0, 2, 3], &[1, 1, 1], &[1, 3, 4]]);
        for pol in [PivotPolicy::LowDegreeFirst, PivotPolicy::Reversed] {
            let p = rank_profile(&m, pol);
            assert_eq!(p.rank, 3);
            let minor = m.submatrix(&p.pivot_rows, &p.pivot_cols);
            assert!(inverse(&minor).is_some());
        }
        let k = rank_kernel_minor(&ints(&[&[1, 2, 3], &[2, 4, 6]]), PivotPolicy::default());
        assert_eq!(k.profile.rank, 1);
        assert_eq!(k.kernel.len(), 2);
        for v in &k.kernel {
            assert!(ints(&[&[1, 2, 3]]).mul_vec(v).iter().all(|x| x == &BigInt::from(0)));
        }
    }
}
