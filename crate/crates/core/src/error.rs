use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("singular transform: condition number {cond:.3e} exceeds 1e12")]
    SingularTransform { cond: f64 },
    #[error("rank deficient: expected {expected} independent rows, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("invalid prior: {0}")]
    InvalidPrior(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("integration failure: {0}")]
    IntegrationFailure(String),
    #[error("Monte Carlo failure: {0}")]
    McFailure(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
