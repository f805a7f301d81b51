//! Creative telescoping of rational functions by Griffiths–Dwork reduction.

pub mod error;
pub mod macaulay;
pub mod multipoly;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod reduction;
pub mod scalars;
pub mod singular;
pub mod telescoper;

pub use error::{Error, Result};
