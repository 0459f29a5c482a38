use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("initial configuration is empty")]
    EmptyConfig,
    #[error("initial vector {0} is the zero vector")]
    ZeroVector(String),
    #[error("initial vector {0} has a negative coordinate")]
    NegativeCoordinate(String),
    #[error("initial vector {0} appears more than once")]
    DuplicateVector(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid size function: {0}")]
    InvalidSizeFunction(String),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("bound excludes initial vector {0}")]
    BoundTooSmall(String),
    #[error("coordinate arithmetic overflowed")]
    Overflow,
    #[error("invalid initial terms: {0}")]
    InvalidInitials(String),
    #[error("sequence too short: need at least {needed} terms, have {have}")]
    TooShort { needed: usize, have: usize },
    #[error("configurations have different numbers of vectors ({left} vs {right})")]
    MismatchedArity { left: usize, right: usize },
    #[error("vector {0} is not a nonnegative nonzero direction")]
    NonPositiveDirection(usize),
    #[error("declared symbol independence contradicted: {0}")]
    IndependenceViolated(String),
    #[error("configuration does not span the plane")]
    DegenerateSpan,
    #[error("symbol {0} is outside the word alphabet")]
    BadAlphabet(u8),
    #[error("requested range exceeds the generation bound")]
    RangeExceedsBound,
    #[error("unknown oracle: {0}")]
    UnknownOracle(String),
    #[error("bad oracle parameters: {0}")]
    BadParameters(String),
    #[error("comparison region exceeds the generation bound")]
    RegionExceedsBound,
    #[error("x bound {x_bound} is below twice the largest member x ({x_max})")]
    InconclusiveBound { x_bound: u64, x_max: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
