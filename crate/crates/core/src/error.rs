use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants are grouped by how a caller is expected to react: malformed input,
/// a violated precondition of an operation, or a numerical failure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CwError {
    #[error("malformed profile: {0}")]
    MalformedProfile(String),
    #[error("incompatible profiles: {0}")]
    IncompatibleProfile(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not in the orthogonal centraliser of S: {0}")]
    CentraliserViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a strict homothety (s = {0})")]
    NotStrict(f64),
    #[error("resonance: {0}")]
    Resonance(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("point outside domain: {0}")]
    Domain(String),
    #[error("singular linear system: {0}")]
    Singular(String),
}

impl CwError {
    /// Stable machine-readable tag, used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            CwError::MalformedProfile(_) => "malformed-profile",
            CwError::IncompatibleProfile(_) => "incompatible-profile",
            CwError::DimensionMismatch { .. } => "dimension-mismatch",
            CwError::CentraliserViolation(_) => "centraliser-violation",
            CwError::InvalidInput(_) => "invalid-input",
            CwError::NotStrict(_) => "not-strict",
            CwError::Resonance(_) => "resonance",
            CwError::Unsupported(_) => "unsupported",
            CwError::Precondition(_) => "precondition",
            CwError::Domain(_) => "domain",
            CwError::Singular(_) => "singular",
        }
    }

    /// True for errors caused by the shape or content of the input rather
    /// than by the mathematical hypotheses of an operation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            CwError::MalformedProfile(_)
                | CwError::IncompatibleProfile(_)
                | CwError::DimensionMismatch { .. }
                | CwError::CentraliserViolation(_)
                | CwError::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, CwError>;
