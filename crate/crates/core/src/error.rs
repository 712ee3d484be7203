use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A phase reduction e(s) was requested for an `s` that is not a quarter-integer.
    #[error("phase e({0}) is not a fourth root of unity")]
    DomainPhase(String),
    #[error("parameter mismatch: expected {expected}, found {found}")]
    ParamMismatch { expected: String, found: String },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("bad seed k={k}, m={m}: {reason}")]
    BadSeed { k: String, m: String, reason: String },
    #[error("inequality chain fails: {0}")]
    ChainFailure(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("sign of {0} is not decided on the window")]
    IndeterminateSign(String),
    #[error("intertwiner solution space has dimension {0}, expected 1")]
    NoIntertwiner(usize),
    #[error("scaled intertwiner is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
