use dpz_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot parse Dynkin type `{0}`")]
    Parse(String),
    #[error(
        "configuration not realizable: no special (−1)-class pattern exists next to this chain"
    )]
    NotRealizable,
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, DynkinError>;
