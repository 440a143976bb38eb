use alloc::string::String;

/// Errors raised by the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("no primitive root of unity of order {order} in {field}")]
    RootUnavailable { order: u64, field: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("cannot split algebra over the current field: {0}")]
    Splitting(String),
    #[error("theorem instance violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
