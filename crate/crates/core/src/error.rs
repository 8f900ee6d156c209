use crate::pcaf::{Reduction, ValidationReport};
use crate::Semantics;

/// Errors produced by the library. Violations found by [`crate::PrefFramework::validate`]
/// are data, not errors; they only surface here when a constructor refuses them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("duplicate argument `{0}`")]
    DuplicateArgument(String),
    #[error("names must be nonempty")]
    EmptyName,
    #[error("argument `{0}` has no claim")]
    MissingClaim(String),
    #[error("argument `{0}` has more than one claim")]
    DuplicateClaim(String),
    #[error("invalid preference framework: {0}")]
    Invalid(ValidationReport),
    #[error("reduction {0} has no realization machinery; use verify instead")]
    UnsupportedReduction(Reduction),
    #[error("semantics {0} is not supported here")]
    UnsupportedSemantics(Semantics),
    #[error("{what} limit exceeded: {actual} > {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("transitive closure is not asymmetric: both {0} > {1} and {1} > {0}")]
    ClosureNotAsymmetric(String, String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
