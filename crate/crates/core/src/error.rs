use thiserror::Error as ThisError;

/// Failure modes shared by the whole library.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("denominator does not satisfy the regularity hypothesis")]
    NotRegular,
    #[error("nonzero remainder at pole order {0}, above the number of variables")]
    NotReducible(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("degree mismatch: {0}")]
    DegreeError(String),
    #[error("no linear relation")]
    NoRelation,
    #[error("insufficient evaluation points: {0}")]
    InsufficientPoints(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("not found within bounds")]
    NotFound,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
