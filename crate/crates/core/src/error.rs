use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("incompatible cyclotomic fields: Q(zeta_{0}) vs Q(zeta_{1})")]
    IncompatibleField(u64, u64),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("incomplete input: {0}")]
    IncompleteInput(String),
    #[error("inadmissible partial augmentation: {0}")]
    Inadmissible(String),
    #[error("internal consistency error: {0}")]
    Inconsistency(String),
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
