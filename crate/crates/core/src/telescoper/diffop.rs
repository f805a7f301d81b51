use std::fmt;

use crate::scalars::{FracField, GcdDomain, RatFunc, ZPoly};

/// `Σ_k c_k(t) ∂_t^k` with integer polynomial coefficients.
///
/// Normalized form: no common factor of all coefficients in ℤ\[t\] (so in
/// particular content 1) and `lc(c_r) > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    coeffs: Vec<ZPoly>,
}

impl DiffOp {
    /// Trailing zero coefficients are dropped; panics on the zero operator.
    pub fn new(mut coeffs: Vec<ZPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "zero operator");
        DiffOp { coeffs }
    }

    /// The identity operator `1`.
    pub fn one() -> Self {
        DiffOp::new(vec![ZPoly::from_i64s(&[1])])
    }

    /// Clears denominators of rational coefficients and normalizes.
    pub fn from_ratfuncs(cs: &[RatFunc]) -> Self {
        let mut l = ZPoly::from_i64s(&[1]);
        for c in cs {
            l = GcdDomain::lcm(&l, c.den());
        }
        let coeffs = cs.iter().map(|c| c.num().mul(&l.div_exact(c.den()).unwrap())).collect();
        DiffOp::new(coeffs).normalized()
    }

    pub fn normalized(&self) -> Self {
        let mut g = ZPoly::default();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = if g.is_zero() { c.primitive_part().mul_int(&c.content()) } else { GcdDomain::gcd(&g, c) };
            }
        }
        let lc_neg = self.coeffs.last().unwrap().lc().is_some_and(|x| x.sign() == num_bigint::Sign::Minus);
        let g = if lc_neg { g.neg() } else { g };
        DiffOp::new(self.coeffs.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ZPoly] {
        &self.coeffs
    }

    /// Largest `t`-degree of a coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.degree()).max().unwrap_or(0)
    }

    /// `c_k / c_r` for `k = 0…r`.
    pub fn monic(&self) -> Vec<RatFunc> {
        let lc = self.coeffs.last().unwrap();
        self.coeffs.iter().map(|c| RatFunc::from_parts(c.clone(), lc.clone())).collect()
    }

    /// Renders `c_r*D^r + … + c_0` with parenthesized coefficients, where
    /// `D` is the derivation named `dname`.
    pub fn display_with(&self, var: &str, dname: &str) -> String {
        let mut parts = vec![];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("({})", c.display_var(var));
            parts.push(match k {
                0 => cs,
                1 => format!("{}*{}", cs, dname),
                _ => format!("{}*{}^{}", cs, dname, k),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t", "Dt"))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        ZPoly::from_i64s(v)
    }

    #[test]
    fn normalization() {
        // -4t Dt - 2  ->  2t Dt + 1
        let op = DiffOp::new(vec![z(&[-2]), z(&[0, -4])]).normalized();
        assert_eq!(op.coeffs(), &[z(&[1]), z(&[0, 2])]);
        assert_eq!(op.to_string(), "(2*t)*Dt + (1)");
        // common polynomial factor (t+1)
        let op = DiffOp::new(vec![z(&[1, 1]), z(&[0, 1, 1])]).normalized();
        assert_eq!(op.coeffs(), &[z(&[1]), z(&[0, 1])]);
        assert_eq!(op.order(), 1);
    }

    #[test]
    fn from_rational_coefficients() {
        let half_t = RatFunc::from_parts(z(&[1]), z(&[0, 2]));
        let op = DiffOp::from_ratfuncs(&[half_t, RatFunc::from_poly(z(&[1]))]);
        assert_eq!(op.coeffs(), &[z(&[1]), z(&[0, 2])]);
    }
}
