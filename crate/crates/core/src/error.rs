use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A size or range exceeds what was built or configured.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// An input hits a pole of the formula (a division by zero).
    #[error("singular input: {0}")]
    Singular(String),
    /// A structural precondition of an identity is not met.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A function rule could not be evaluated at some prime power.
    #[error("evaluation error: {0}")]
    Evaluation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
