use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cyclotomic conductor must be positive")]
    ZeroConductor,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus x^2 - {m1}x - {m0} is reducible over F_{p}")]
    ReducibleModulus { p: u32, m0: u32, m1: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("could not parse `{0}`")]
    Parse(String),
}
