use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a supported prime modulus")]
    BadModulus(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate tuple: {0}")]
    Degenerate(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("no orbit family matches {0}")]
    NoFamily(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("face does not land in the target orbit: {0}")]
    FaceMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
