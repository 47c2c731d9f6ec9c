use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("element code {code} is not valid in a field of size {q}")]
    InvalidElement { code: u32, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("node {0} is not a terminal")]
    NotTerminal(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("network code does not assign edge {0}")]
    MissingAssignment(u32),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
