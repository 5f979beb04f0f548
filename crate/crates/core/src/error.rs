use thiserror::Error;

/// Errors raised across the library. Variants carry enough context to print a
/// single machine-parsable line from the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("instance too large: {what} has {size}, maximum is {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("kernel contract violated: {0}")]
    KernelContract(String),

    #[error("invalid generator spec: {0}")]
    Generator(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable short tag for machine-parsable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Precondition(_) => "precondition",
            Error::Budget { .. } => "budget",
            Error::TooLarge { .. } => "too-large",
            Error::InvalidDecomposition(_) => "invalid-decomposition",
            Error::KernelContract(_) => "kernel-contract",
            Error::Generator(_) => "generator",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }
}
