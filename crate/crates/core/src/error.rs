use thiserror::Error;

use crate::frames::FrameReport;
use crate::qstate::StateDiagnostics;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(StateDiagnostics),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("vectors are not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("weights must be non-negative and sum to 1 (sum = {sum}, min = {min})")]
    InvalidWeights { sum: f64, min: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid simplex frame: {0}")]
    InvalidFrame(FrameReport),

    #[error("internal contract violated: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
