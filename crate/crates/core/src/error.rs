use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("d must be prime (got {0})")]
    NotPrime(usize),

    #[error("d must be an odd prime (got {0})")]
    NotOddPrime(usize),

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("eigensolver did not converge (off-diagonal residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    #[error("{what}: deviation {deviation:.3e} exceeds tolerance {tol:.3e}")]
    Verification {
        what: &'static str,
        deviation: f64,
        tol: f64,
    },

    #[error("expected {expected} phases, found {found}")]
    PhaseCount { expected: usize, found: usize },

    #[error("operator is not diagonal in basis {basis} (off-diagonal residue {residual:.3e})")]
    NotDiagonal { basis: usize, residual: f64 },

    #[error("operator trace is {trace}, expected 1")]
    NonUnitTrace { trace: f64 },

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("vector norm {norm} is not within 1e-6 of 1")]
    NotNormalized { norm: f64 },

    #[error("unknown format '{0}'")]
    UnknownFormat(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
