use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("resource limit exceeded while {what} ({value})")]
    ResourceLimit { what: &'static str, value: u64 },

    /// A structural bound on solution counts was breached. Either the
    /// implementation is wrong or a counterexample was found.
    #[error("theorem violation at y = alpha^{y_exp}: {detail}")]
    TheoremViolation { y_exp: u64, detail: String },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
