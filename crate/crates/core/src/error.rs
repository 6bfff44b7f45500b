use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("element {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("not a section: {0}")]
    NotASection(String),

    #[error("mismatched groups: {0}")]
    Mismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown catalog group `{0}`")]
    UnknownCatalog(String),

    #[error("{what} exceeds the budget of {bound}")]
    BudgetExceeded { what: String, bound: u64 },

    /// A computed quantity disagrees with a proven identity. Always a bug.
    #[error("theorem check failed (implementation bug): {0}")]
    TheoremViolation(String),
}

/// Coarse classification used for process exit codes and report status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCategory {
    Validation,
    TheoremCheck,
    Budget,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Validation => 1,
            ErrorCategory::TheoremCheck => 2,
            ErrorCategory::Budget => 3,
        }
    }
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::BudgetExceeded { .. } => ErrorCategory::Budget,
            Error::TheoremViolation(_) => ErrorCategory::TheoremCheck,
            _ => ErrorCategory::Validation,
        }
    }

    pub(crate) fn budget(what: impl Into<String>, bound: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            bound,
        }
    }
}
