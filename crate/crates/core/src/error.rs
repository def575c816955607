use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("irreducible gamma quotient: {0}")]
    IrreducibleGamma(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("nontriviality failure: {0}")]
    NontrivialityFailure(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("term budget exceeded: {0}")]
    TermBudget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
