use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(
        "no exact evaluation for hypothesis `{hypothesis}` under improvement map `{map}` (grid fallback disabled)"
    )]
    EvaluationUnsupported { hypothesis: &'static str, map: &'static str },
    #[error("sample is not realizable by the family: {0}")]
    InconsistentSample(String),
    #[error("no consistent halfspace found after {updates} updates ({violations} constraints still violated)")]
    NonSeparable { updates: usize, violations: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("training diverged at epoch {epoch}, batch {batch}")]
    Divergence { epoch: usize, batch: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}
