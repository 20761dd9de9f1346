use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is zero to the available precision")]
    ZeroToPrecision,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("singular map: {0}")]
    SingularMap(String),
    #[error("refinement budget exceeded: {0}")]
    RefinementBudgetExceeded(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
