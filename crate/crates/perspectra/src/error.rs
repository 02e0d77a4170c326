use thiserror::Error;

/// Crate-wide error type. The variants map onto the CLI exit-code contract:
/// parse errors exit 1, precondition failures exit 2, cap refusals exit 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: {what} = {actual} > cap {cap}")]
    CapExceeded { what: &'static str, cap: i64, actual: i64 },

    #[error("integer overflow (orders are capped at 2^31)")]
    Overflow,

    #[error("ambient group mismatch")]
    AmbientMismatch,

    #[error("homomorphism entry ({row},{col}) violates the divisibility invariant")]
    InvalidHom { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse { position, message: msg.into() }
    }

    /// Exit code for the CLI contract: 0 ok / 1 parse / 2 precondition / 3 cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
