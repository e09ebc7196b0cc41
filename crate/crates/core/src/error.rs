use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain an operation accepts.
    #[error("{module}: {msg}")]
    Domain { module: &'static str, msg: String },
    /// Two independent computations of the same quantity disagree.
    #[error("{module}: oracle disagreement: {msg}")]
    Oracle { module: &'static str, msg: String },
    /// Malformed input data.
    #[error("{module}: data format: {msg}")]
    Data { module: &'static str, msg: String },
    /// An arithmetic invariant failed. Always a bug.
    #[error("{module}: internal: {msg}")]
    Internal { module: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { module, msg: msg.into() }
    }
    pub fn oracle(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Oracle { module, msg: msg.into() }
    }
    pub fn data(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Data { module, msg: msg.into() }
    }
    pub fn internal(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Internal { module, msg: msg.into() }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } => 2,
            Error::Oracle { .. } => 3,
            Error::Data { .. } => 4,
            Error::Internal { .. } => 1,
        }
    }
}
