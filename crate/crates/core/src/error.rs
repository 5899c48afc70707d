use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A zero weight means the group fixes a nonzero vector, i.e. V^G != {0}.
    #[error("fixed-point condition violated: weight {weight:?} in {rep} is trivial, so {rep}^G != {{0}}")]
    FixedPointViolated { rep: String, weight: Vec<i64> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("representations are over different groups")]
    GroupMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(
        "no equivariant map exists: line {line:?} has dim_R V^H = {dim_v} > dim_R W^H = {dim_w}"
    )]
    Refused {
        line: Vec<i64>,
        dim_v: usize,
        dim_w: usize,
    },

    #[error("weight stream exhausted after {produced} slots (real dimension {dim}) before reaching {target}")]
    StreamExhausted {
        produced: usize,
        dim: usize,
        target: usize,
    },

    #[error("point is not on the unit sphere: |x| = {norm}")]
    NotOnSphere { norm: f64 },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
