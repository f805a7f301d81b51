//! Multivariate polynomials, homogeneous forms and pole fractions.

mod hpoly;
mod monomial;
mod pole;
mod poly;

pub use hpoly::HPoly;
pub use monomial::{basis, basis_signed, binomial, count_monomials, monomials_of_degree, Basis, Monomial};
pub use pole::{homogenize, homogenize_pole, Frac, PoleFraction};
pub use poly::MPoly;
