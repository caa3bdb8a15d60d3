use thiserror::Error;

/// Errors surfaced by library operations.
///
/// Assertion-grade inconsistencies (enumeration bugs, convention bugs)
/// panic instead: they signal a broken build, not recoverable input.
#[derive(Debug, Error)]
pub enum KlabError {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("invalid galois action: {0}")]
    InvalidGalois(String),
    #[error("mismatched lattice tags: expected {expected}, got {got}")]
    TagMismatch { expected: &'static str, got: &'static str },
    #[error("not dominant: {0}")]
    NotDominant(String),
    #[error("not integral in the coweight lattice: {0}")]
    NotIntegral(String),
    #[error("parabolic subset is not stable under the galois action")]
    NotGaloisStable,
    #[error("element not in the stated group: {0}")]
    NotInGroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, KlabError>;
