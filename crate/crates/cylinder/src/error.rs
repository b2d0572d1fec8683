use dpz_core::{CoreError, Rational};
use dpz_fibration::FibrationError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error("ampleness assertion failed: {id} = {value}")]
    Ampleness { id: String, value: Rational },
    #[error("unsupported surface: {0}")]
    Unsupported(String),
    #[error(
        "Picard rank one: Amp(S) = ℚ_{{>0}}[−K], so take D a multiple of the −K-cylinder divisor"
    )]
    PicardRankOne,
    #[error("outside the scope of the construction: {0}")]
    OutOfScope(String),
    #[error("invalid ample input: {0}")]
    InvalidInput(String),
    #[error("self-verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Fibration(FibrationError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl From<FibrationError> for CylinderError {
    fn from(e: FibrationError) -> Self {
        match e {
            FibrationError::PicardRankOne => CylinderError::PicardRankOne,
            FibrationError::NoConstruction(m) | FibrationError::Unsupported(m) => {
                CylinderError::Unsupported(m)
            }
            other => CylinderError::Fibration(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CylinderError>;
