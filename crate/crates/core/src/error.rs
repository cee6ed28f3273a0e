use thiserror::Error;

/// Errors produced by group arithmetic, set algebra, solvers and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element `{element}` is not valid for group {group}")]
    InvalidElement { element: String, group: String },

    /// A free-group product left the bounded word universe.
    #[error("word of length {len} exceeds the maximum word length {max}")]
    LengthOverflow { len: usize, max: usize },

    /// A set operation would produce more elements than the configured cap.
    #[error("set size exceeds the cap of {cap} elements")]
    SizeOverflow { cap: usize },

    #[error("group {0} is infinite and cannot be enumerated")]
    NotEnumerable(String),

    #[error("sets belong to different groups ({0} vs {1})")]
    GroupMismatch(String, String),

    /// Ratios and theorem entry points require nonempty sets.
    #[error("empty set passed where a nonempty set is required: {0}")]
    EmptySet(&'static str),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A solver input exceeds its configured size limit.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
