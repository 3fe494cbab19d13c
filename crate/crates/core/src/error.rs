use exact::ExactError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("closure exceeded {0} elements")]
    ClosureBound(usize),
    #[error("Reynolds average of every candidate monomial vanishes")]
    ZeroReynolds,
    #[error("no weight data for p = {0}")]
    InvalidWeight(String),
    #[error("unknown check prefix {prefix:?}; valid prefixes: {valid}")]
    UnknownPrefix { prefix: String, valid: String },
    #[error("presentation parse error on line {line}: {msg}")]
    Presentation { line: usize, msg: String },
    #[error("braid relator needs n >= 2, got {0}")]
    BraidLength(usize),
    #[error("coset enumeration exceeded {0} cosets")]
    CosetBound(usize),
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CertError>;
