use thiserror::Error;

/// Errors produced by basis construction, sampling, and experiment I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A requested concentration target cannot be met by any coefficient
    /// vector in the chosen span; `floor` is the smallest achievable value.
    #[error("concentration target {requested} is unattainable; minimum achievable is {floor}")]
    InfeasibleTarget { requested: f64, floor: f64 },

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(path: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            msg: msg.into(),
        }
    }
}
