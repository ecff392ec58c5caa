use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("code dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("permutation is not an automorphism of the code")]
    SigmaNotAutomorphism,

    #[error("permutation order {0} is not prime")]
    NotPrimeOrder(usize),

    #[error("vector is not fixed by the automorphism")]
    NotFixed,

    #[error("restriction to cycle {cycle} has odd weight")]
    OddRestriction { cycle: usize },

    #[error("code is not self-dual")]
    NotSelfDual,

    #[error("P is not a field for p = {p}: ord_p(2) = {s}")]
    NotAField { p: u64, s: u64 },

    #[error("incomplete factorization: {0}")]
    IncompleteFactorization(String),

    #[error("element is not primitive")]
    NotPrimitive,

    #[error("unknown code name {0:?}")]
    UnknownCode(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
