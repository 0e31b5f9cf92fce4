use thiserror::Error;

pub type Result<T> = std::result::Result<T, NaqmError>;

#[derive(Debug, Error)]
pub enum NaqmError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not normalized: tau(psi* psi) = {norm}")]
    NotNormalized { norm: f64 },

    #[error("operator is not an observable: |O - O*| = {residual:e}")]
    ObservableViolation { residual: f64 },

    #[error("positivity violated: value {value:e}")]
    PositivityViolation { value: f64 },

    #[error("trace axioms fail: {0}")]
    TraceAxiomFailure(String),

    #[error("no eigenvector for eigenvalue {lambda}")]
    NoEigenvector { lambda: f64 },

    #[error("probability mismatch: {0}")]
    ProbabilityMismatch(String),

    #[error("operator basis is not closed under composition")]
    NonClosedBasis,

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("Krauss normalization violated: residual {residual:e}")]
    KraussNormalization { residual: f64 },

    #[error("unknown generator symbol: {0}")]
    UnknownSymbol(String),

    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl NaqmError {
    pub fn dims(expected: usize, found: usize) -> Self {
        NaqmError::DimensionMismatch { expected, found }
    }
}
