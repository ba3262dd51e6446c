use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("matrix is not an intertwiner: {0}")]
    NotIntertwiner(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("not an exact pair: {0}")]
    NotExactPair(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("workspace error: {0}")]
    Workspace(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::DimensionMismatch(msg.into()))
}
