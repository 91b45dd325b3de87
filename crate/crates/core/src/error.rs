use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value `{0}` is not rational")]
    NotRational(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("module is not full rank (rank {rank}, dimension {dim})")]
    NotFullRank { rank: usize, dim: usize },

    #[error("vector is not a member of the module")]
    NotMember,

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("lattice has no nonzero vertical vector (case 1 lattice)")]
    NoVerticalVector,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("frequency is not in the dual lattice; the wave would not be periodic")]
    NotInDual,

    #[error("degenerate render window or pixel grid")]
    DegenerateWindow,

    #[error("no width projects onto the target lattice: {certificate}")]
    NoWidthProjects { certificate: String },

    #[error("invalid input at line {line}, column {column}: {message}")]
    Input {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
