use alloc::string::String;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("numerical anomaly: {0}")]
    NumericalAnomaly(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
