//! Macaulay matrices of the Jacobian ideal, their splits, and the
//! regularity test.

mod matrix;
mod regular;
mod split;

pub use matrix::{inverse, primitive_vector, rank, rank_kernel_minor, rank_profile, Matrix, PivotPolicy, RankKernelMinor, RankProfile};
pub use regular::{is_regular, is_regular_with_limit, primitive_cohomology_dim, quotient_dims, regularity_witness};
pub use split::{
    build_matrix, compute_split, macaulay_bound, Decomposition, MacaulayMatrix, MacaulaySplit, SplitFamily, DEFAULT_MAX_ROWS,
};
