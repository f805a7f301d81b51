//! Independent verification backends. Never used on the main path.

mod ansatz;
mod hermite;

pub use ansatz::{ansatz_telescoper, AnsatzConfig};
pub use hermite::{hermite_reduce, hermite_telescoper, HermiteReduction};
