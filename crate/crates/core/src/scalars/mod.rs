//! Exact base arithmetic.

pub mod bpoly;
pub mod modp;
pub mod rat;
pub mod ratfunc;
pub mod reconstruct;
pub mod traits;
pub mod upoly;
pub mod zpoly;

pub use bpoly::{BPoly, BiRatFunc};
pub use rat::{rat, rat_int, Rat};
pub use ratfunc::RatFunc;
pub use reconstruct::{limit_at_zero, rational_reconstruct};
pub use traits::{Differential, FracField, Field, GcdDomain, Ring};
pub use upoly::UPoly;
pub use zpoly::ZPoly;
