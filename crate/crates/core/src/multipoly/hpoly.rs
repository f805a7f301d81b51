use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Differential, Ring};

use super::monomial::{basis, Monomial};
use super::poly::MPoly;

/// Homogeneous polynomial in `x₀ … xₙ`. The zero polynomial keeps its
/// degree so that graded invariants stay checkable.
#[derive(Clone, PartialEq)]
pub struct HPoly<C> {
    degree: u32,
    poly: MPoly<C>,
}

impl<C: Ring> HPoly<C> {
    /// Checks that every term of `poly` has total degree `degree`.
    pub fn new(poly: MPoly<C>, degree: u32) -> Result<Self> {
        if let Some((m, _)) = poly.terms().find(|(m, _)| m.degree() != degree) {
            return Err(Error::DegreeError(format!(
                "term {:?} does not have degree {}",
                m, degree
            )));
        }
        Ok(HPoly { degree, poly })
    }

    /// Homogeneous polynomial from a nonzero `poly`, inferring the degree.
    pub fn from_poly(poly: MPoly<C>) -> Result<Self> {
        match poly.homogeneous_degree() {
            Some(d) => Ok(HPoly { degree: d, poly }),
            None if poly.is_zero() => Err(Error::DegreeError("zero polynomial has no inferred degree".into())),
            None => Err(Error::DegreeError("polynomial is not homogeneous".into())),
        }
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        HPoly {
            degree,
            poly: MPoly::zero(nvars),
        }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        HPoly {
            degree: m.degree(),
            poly: MPoly::monomial(m, c),
        }
    }

    /// From coordinates in the canonical basis of the degree.
    pub fn from_coords(nvars: usize, degree: u32, coords: &[C]) -> Self {
        let b = basis(nvars, degree);
        assert_eq!(b.len(), coords.len());
        HPoly {
            degree,
            poly: MPoly::from_terms(nvars, b.monos.iter().cloned().zip(coords.iter().cloned())),
        }
    }

    /// Coordinates in the canonical basis of the degree.
    pub fn coords(&self) -> Vec<C> {
        let b = basis(self.nvars(), self.degree);
        let mut out = vec![C::zero(); b.len()];
        for (m, c) in self.poly.terms() {
            out[b.index_of(m).expect("monomial of the right degree")] = c.clone();
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn poly(&self) -> &MPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.poly.terms()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.poly.coeff(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        assert_eq!(m.degree(), self.degree, "degree mismatch");
        self.poly.add_term(m, c);
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding homogeneous polynomials of different degrees");
        HPoly {
            degree: self.degree,
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "subtracting homogeneous polynomials of different degrees");
        HPoly {
            degree: self.degree,
            poly: self.poly.sub(&o.poly),
        }
    }

    pub fn neg(&self) -> Self {
        HPoly {
            degree: self.degree,
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        HPoly {
            degree: self.degree,
            poly: self.poly.scale(k),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HPoly {
            degree: self.degree + o.degree,
            poly: self.poly.mul(&o.poly),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        HPoly {
            degree: self.degree + m.degree(),
            poly: self.poly.mul_monomial(m),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        HPoly {
            degree: self.degree * e,
            poly: self.poly.pow(e),
        }
    }

    /// `∂/∂x_i`; the zero polynomial of degree 0 stays in degree 0.
    pub fn partial(&self, i: usize) -> Self {
        HPoly {
            degree: self.degree.saturating_sub(1),
            poly: self.poly.partial(i),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl FnMut(&C) -> D) -> HPoly<D> {
        HPoly {
            degree: self.degree,
            poly: self.poly.map_coeffs(f),
        }
    }

    /// Evaluates `x₀ = 1`.
    pub fn evaluate_x0(&self) -> MPoly<C> {
        self.poly.dehomogenize()
    }
}

impl<C: Differential> HPoly<C> {
    pub fn d_t(&self) -> Self {
        HPoly {
            degree: self.degree,
            poly: self.poly.d_t(),
        }
    }
}

impl<C: Ring> fmt::Display for HPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.poly, f)
    }
}

impl<C: Ring> fmt::Debug for HPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly[deg {}]({})", self.degree, self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat_int, Rat};

    fn fermat() -> HPoly<Rat> {
        let p = (0..3).fold(MPoly::zero(3), |acc, i| acc.add(&MPoly::var(3, i).pow(3)));
        HPoly::from_poly(p).unwrap()
    }

    #[test]
    fn euler_relation() {
        let f = fermat();
        let mut s = HPoly::zero(3, 3);
        for i in 0..3 {
            s = s.add(&HPoly::monomial(Monomial::var(3, i), rat_int(1)).mul(&f.partial(i)));
        }
        assert_eq!(s, f.scale(&rat_int(3)));
    }

    #[test]
    fn rejects_inhomogeneous() {
        let p = MPoly::<Rat>::var(2, 0).add(&MPoly::one(2));
        assert!(HPoly::from_poly(p.clone()).is_err());
        assert!(HPoly::new(p, 1).is_err());
    }

    #[test]
    fn coords_round_trip() {
        let f = fermat();
        assert_eq!(HPoly::from_coords(3, 3, &f.coords()), f);
    }
}
