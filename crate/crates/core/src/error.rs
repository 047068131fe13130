use thiserror::Error;

/// Errors produced by field construction, ring enumeration and plane building.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("field order {q} exceeds the configured ceiling {ceiling}")]
    OrderTooLarge { q: u32, ceiling: u32 },

    #[error("matrix dimension {0} is not supported here (expected {1})")]
    DimensionUnsupported(usize, &'static str),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("operands belong to different ring contexts")]
    ContextMismatch,

    #[error("pair space of size {q}^{exponent} is too large to enumerate")]
    EnumerationTooLarge { q: u32, exponent: usize },

    #[error("cyclic submodule is not free")]
    NotFree,

    #[error("invalid plane selector: {0}")]
    SelectorInvalid(String),

    #[error("invalid subset label: {0}")]
    SubsetInvalid(String),

    #[error("structure is not an affine plane: {0}")]
    NotAnAffinePlane(String),

    #[error("isomorphism search is limited to q <= 4 (got {0})")]
    OrderTooLargeForSearch(u32),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed document: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
