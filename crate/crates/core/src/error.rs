use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("unknown curve label `{0}`")]
    UnknownLabel(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("support is not negative definite; the prescribed-pairing solution is not unique")]
    NotNegativeDefinite,
    #[error("internal error: singular system")]
    Singular,
}

pub type Result<T> = std::result::Result<T, CoreError>;
