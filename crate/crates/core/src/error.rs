use thiserror::Error;

/// Errors raised by the algebra, projector, self-adjoint and sequence routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("theta parameters differ between operands")]
    ThetaMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("gamma normalization needs theta > 0")]
    ThetaZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not a projector")]
    NotAProjector,
    #[error("grid entry {0:?} lies outside the band")]
    BandViolation(Vec<u32>),
    #[error("element is not self-adjoint")]
    NotSelfAdjoint,
    #[error("inconsistent system at index {0:?}")]
    InconsistentSystem((u32, u32)),
    #[error("negative discriminant at step {step}")]
    ComplexRoot { step: usize },
    #[error("residual {residual} at step {step} exceeds the precision budget")]
    PrecisionExhausted { step: usize, residual: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
