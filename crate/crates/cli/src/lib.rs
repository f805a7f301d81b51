//! Front end of the `gdtel` executable.

pub mod bench;
pub mod parse;
pub mod problem;
pub mod render;
pub mod run;
