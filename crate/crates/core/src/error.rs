use thiserror::Error;

/// Errors raised by the physics and numerics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid quantum numbers, indices or other malformed input.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Input outside the region where the quantity is defined or real.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative or variational procedure failed to settle.
    #[error("convergence failure: {0}")]
    Convergence(String),
    /// Floating-point breakdown (underflow, non-finite intermediate).
    #[error("numerical failure: {0}")]
    Numeric(String),
    /// Internal identity violated beyond tolerance.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
