use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds {tolerance:.3e})")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("operator is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositive { eigenvalue: f64 },

    #[error("{what} did not converge")]
    NoConvergence { what: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "operator has no A^(1/2)-adjoint: it does not annihilate ker A after weighting, \
         so its A-seminorm is +infinity (defect {defect:.3e})"
    )]
    NotMember { defect: f64 },

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("reduced dimension {dim} exceeds the oracle limit of 3")]
    DimensionTooLarge { dim: usize },

    #[error("lambda must lie in [0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
