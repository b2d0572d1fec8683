use dpz_core::CoreError;
use dpz_dynkin::DynkinError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("degree mismatch: 8 − (α+β+β′+γ) = {lhs} but the section weights require {rhs}")]
    DegreeMismatch { lhs: i64, rhs: i64 },
    #[error("not a valid section weight: {0} < 2")]
    InvalidSectionWeight(i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a singular fiber of the allowed shapes: {0}")]
    NotAFiber(String),
    #[error("no construction: {0}")]
    NoConstruction(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(
        "Picard rank one: Amp(S) = ℚ_{{>0}}[−K], so take D a multiple of the −K-cylinder divisor"
    )]
    PicardRankOne,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
}

pub type Result<T> = std::result::Result<T, FibrationError>;
