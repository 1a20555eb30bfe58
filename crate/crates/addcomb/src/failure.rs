use std::fmt;
use std::process::ExitCode;

use addcomb_core::Error;

/// Why a run stopped, grouped by the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    InvalidConfig(String),
    #[error("{0}")]
    ResourceLimit(String),
    #[error("{0}")]
    Anomaly(String),
    #[error("{0}")]
    Other(String),
}

impl Failure {
    pub fn tag(&self) -> &'static str {
        match self {
            Failure::InvalidConfig(_) => "invalid-config",
            Failure::ResourceLimit(_) => "resource-limit",
            Failure::Anomaly(_) => "internal-anomaly",
            Failure::Other(_) => "error",
        }
    }

    pub fn exit_status(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::InvalidConfig(_) => 2,
            Failure::ResourceLimit(_) => 3,
            Failure::Anomaly(_) => 4,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.exit_status())
    }

    /// One line, `error[<tag>]: <message>`, with embedded newlines flattened.
    pub fn diagnostic(&self) -> String {
        format!(
            "error[{}]: {}",
            self.tag(),
            self.to_string().replace('\n', " ")
        )
    }

    pub fn config(msg: impl fmt::Display) -> Self {
        Failure::InvalidConfig(msg.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidArgument(_)
            | Error::GroupMismatch(_)
            | Error::PreconditionViolation(_) => Failure::InvalidConfig(msg),
            Error::ResourceLimit(_) => Failure::ResourceLimit(msg),
            Error::NumericalAnomaly(_) => Failure::Anomaly(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(format!("io: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Other(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, Failure>;
