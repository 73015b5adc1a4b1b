use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into three families that callers usually treat differently:
/// malformed input, exceeded resource guards, and internal consistency
/// failures (which indicate a bug rather than bad input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("arity mismatch: expected {expected} residues, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("digit {digit} out of range for base {base}")]
    DigitRange { digit: u64, base: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("no qualifying degree up to cap {cap}; raise the cap")]
    CapTooLow { cap: usize },

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceBound(_) | Error::CapTooLow { .. })
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
