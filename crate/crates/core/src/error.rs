use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Variants are grouped by the kind of failure rather than by module: a
/// structural error means inputs do not fit together (wrong group, wrong
/// length, wrong conductor), a validation error means a declared object
/// fails one of its defining checks, and a domain error means the request
/// itself is outside the operation's contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource ceiling exceeded: {0}")]
    Ceiling(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! structural {
    ($($arg:tt)*) => { $crate::error::Error::Structural(format!($($arg)*)) };
}
macro_rules! validation {
    ($($arg:tt)*) => { $crate::error::Error::Validation(format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

pub(crate) use {domain, structural, validation};
