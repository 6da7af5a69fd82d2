use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("divergent index {0}")]
    Divergent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, MzvError>;
