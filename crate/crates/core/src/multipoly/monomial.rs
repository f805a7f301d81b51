use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent vector over `x₀ … xₙ`.
///
/// Ordered by graded reverse lexicographic order with `x₀ < x₁ < … < xₙ`:
/// first by total degree, then at the smallest index where the exponents
/// differ, the monomial with the smaller exponent is the larger one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Divisor of degree `k` taking exponents greedily from `x₀` upward.
    pub fn greedy_divisor(&self, k: u32) -> Self {
        let mut left = k;
        let mut e = vec![0; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            let take = a.min(left);
            e[i] = take;
            left -= take;
        }
        assert_eq!(left, 0, "greedy divisor larger than the monomial");
        Monomial(e)
    }

    /// Inserts a new variable with exponent `e` at position 0.
    pub fn prepend(&self, e: u32) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(e);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    /// Drops the variable at position 0.
    pub fn drop_first(&self) -> Self {
        Monomial(self.0[1..].to_vec())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        for (a, b) in self.0.iter().zip(&o.0) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0)
    }
}

/// All monomials of a degree, in increasing order, with a reverse index.
#[derive(Debug)]
pub struct Basis {
    pub monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn compositions(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(degree);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in 0..=degree {
        prefix.push(e);
        compositions(nvars, degree - e, prefix, out);
        prefix.pop();
    }
}

/// All `C(degree+nvars−1, nvars−1)` monomials of the given degree, sorted.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    assert!(nvars >= 1);
    let mut out = Vec::new();
    compositions(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out.sort();
    out
}

/// Shared, memoized [`Basis`] for `(nvars, degree)`.
pub fn basis(nvars: usize, degree: u32) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(nvars, degree)) {
        return b.clone();
    }
    let monos = monomials_of_degree(nvars, degree);
    let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let b = Arc::new(Basis { monos, index });
    cache.lock().unwrap().insert((nvars, degree), b.clone());
    b
}

/// Like [`basis`], but an empty basis for negative degrees.
pub fn basis_signed(nvars: usize, degree: i64) -> Arc<Basis> {
    if degree < 0 {
        static EMPTY: OnceLock<Arc<Basis>> = OnceLock::new();
        return EMPTY
            .get_or_init(|| {
                Arc::new(Basis {
                    monos: vec![],
                    index: HashMap::new(),
                })
            })
            .clone();
    }
    basis(nvars, degree as u32)
}

/// Number of monomials of degree `degree` in `nvars` variables.
pub fn count_monomials(nvars: usize, degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5), vec![Monomial::new(vec![5])]);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        assert_eq!(count_monomials(3, 4), 15);
        assert_eq!(count_monomials(3, -1), 0);
    }

    #[test]
    fn grevlex_order() {
        // degree 2 in three variables, x0 smallest
        let got: Vec<Vec<u32>> = monomials_of_degree(3, 2).into_iter().map(|m| m.0).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn greedy_divisor_consumes_low_indices() {
        let w = Monomial::new(vec![1, 0, 3]);
        assert_eq!(w.greedy_divisor(2), Monomial::new(vec![1, 0, 1]));
        assert_eq!(w.greedy_divisor(0), Monomial::one(3));
    }
}
