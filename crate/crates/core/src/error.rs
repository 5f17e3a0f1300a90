use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: {0}")]
    ContextMismatch(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quiver ({r},{s},{t}) is mutation-acyclic")]
    AcyclicInput { r: i64, s: i64, t: i64 },
    #[error("enumeration cap of {cap} exceeded")]
    EnumerationCap { cap: u64 },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ContextMismatch(_) => "context_mismatch",
            Error::ExponentOverflow => "exponent_overflow",
            Error::NotDivisible(_) => "not_divisible",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::AcyclicInput { .. } => "acyclic_input",
            Error::EnumerationCap { .. } => "enumeration_cap",
            Error::ResourceLimit(_) => "resource_limit",
            Error::TheoremViolation(_) => "theorem_violation",
            Error::InternalConsistency(_) => "internal_consistency",
            Error::Parse(_) => "parse",
        }
    }

    /// True for failures that would contradict a proved statement.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::TheoremViolation(_) | Error::InternalConsistency(_) | Error::NotDivisible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
