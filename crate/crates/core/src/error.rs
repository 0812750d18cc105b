use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {index} out of range for a ground set of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    /// The generating relation is not antisymmetric; carries one offending cycle.
    #[error("relation contains a cycle: {cycle:?}")]
    Cycle { cycle: Vec<usize> },

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} is limited to {limit} elements, got {n}")]
    OracleLimit { what: &'static str, n: usize, limit: usize },

    #[error("point violates a chain inequality: chain ending at {element} has weight {weight}")]
    NotInStablePolytope { element: usize, weight: String },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("sets do not partition the ground set: {0}")]
    NotPartition(String),

    #[error("rank {rank} out of bounds or not strictly increasing (n = {n})")]
    InvalidRank { rank: usize, n: usize },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("no ordering of the antichains is compatible with the interval order")]
    Unsortable,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
