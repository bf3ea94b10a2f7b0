use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    Hermiticity(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    Convergence { sweeps: usize, residual: f64 },

    #[error("Kraus family is not trace preserving (max deviation {0:e})")]
    TracePreservation(f64),

    #[error("invalid correlation matrix: {0}")]
    Correlation(String),

    #[error("invalid probability distribution: {0}")]
    Distribution(String),

    #[error("invalid circle measure: {0}")]
    Measure(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("support condition violated: {0}")]
    Support(String),

    #[error("columns are not orthonormal (max deviation {0:e})")]
    Isometry(f64),

    #[error("invalid configuration field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
