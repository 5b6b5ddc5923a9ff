//! Error taxonomy shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a documented precondition (bad h, bad p, non-Hermitian entries, ...).
    #[error("contract violation: {0}")]
    Contract(String),
    /// A numeric argument is outside its documented domain (s ∉ [0,1], T ≤ 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Dimensions or lengths do not match.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// The request exceeds a hard size budget (dense limit, scan budget).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An iterative routine exhausted its budget before reaching its tolerance.
    #[error("accuracy target not reached: {0}")]
    Accuracy(String),
    /// A ground state was requested where the two lowest eigenvalues coincide.
    #[error("degenerate ground state: {0}")]
    DegenerateGround(String),
    /// An adaptive schedule was built from a gap function that is not strictly positive.
    #[error("singular schedule: {0}")]
    SingularSchedule(String),
    /// The operation requires structure (weight symmetry, specific h) the family lacks.
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    /// A reconstruction was attempted from a transcript missing required queries.
    #[error("incomplete transcript: {0}")]
    IncompleteTranscript(String),
    /// The lower-bound diagnostic could not locate or verify its critical point.
    #[error("diagnostic failure: {0}")]
    DiagnosticFailure(String),
    /// Malformed input text (formula files, family documents).
    #[error("parse error: {0}")]
    Parse(String),
    /// LAPACK returned a nonzero info code.
    #[error("eigensolver failure: LAPACK info = {0}")]
    Lapack(i32),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 for capacity errors, 1 otherwise.
    /// (Usage errors exit 64 and are handled by the argument parser.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 2,
            _ => 1,
        }
    }
}
