use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("{what} exceeded its budget of {cap}")]
    BudgetExceeded { what: &'static str, cap: usize },

    #[error("word #{index} of the equation set is trivial in G*<x>")]
    TrivialWordInI { index: usize },

    #[error("value of {element} exceeds the cap {cap}; exact value was required")]
    CapTooSmall { element: String, cap: u64 },

    #[error("default weight {default} must exceed max length {max_on_f} on F")]
    DefaultTooSmall { default: u64, max_on_f: u64 },

    #[error("support weight {weight} of {element} exceeds the constant default {default}")]
    SupportExceedsDefault {
        element: String,
        weight: u64,
        default: u64,
    },

    #[error("no requested point of the output domain is computable")]
    EmptyDomain,

    #[error("table domain is missing {} required element(s): {}", missing.len(), missing.join(", "))]
    InsufficientDomain { missing: Vec<String> },

    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("conjugacy class of {element} did not stabilize at radius {radius}")]
    ClassNotStabilized { element: String, radius: usize },

    #[error("verification needs values outside the computable range: {0}")]
    DomainGap(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
