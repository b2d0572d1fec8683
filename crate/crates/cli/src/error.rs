use dpz_core::CoreError;
use dpz_cylinder::CylinderError;
use dpz_dynkin::DynkinError;
use dpz_fibration::FibrationError;
use serde_json::{json, Value};
use thiserror::Error;

/// A failed command together with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ampleness assertion failed: {id} = {value}")]
    Ampleness { id: String, value: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Ampleness { .. } => 4,
            CliError::Unsupported(_) => 5,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Failed(_) => "verification",
            CliError::Validation(_) => "validation",
            CliError::Parse(_) => "parse",
            CliError::Ampleness { .. } => "ampleness",
            CliError::Unsupported(_) => "unsupported",
        };
        let mut v = json!({ "error": kind, "exit_code": self.code(), "message": self.to_string() });
        if let CliError::Ampleness { id, value } = self {
            v["id"] = json!(id);
            v["value"] = json!(value);
        }
        v
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DynkinError> for CliError {
    fn from(e: DynkinError) -> Self {
        match e {
            DynkinError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FibrationError> for CliError {
    fn from(e: FibrationError) -> Self {
        match e {
            FibrationError::NoConstruction(_)
            | FibrationError::Unsupported(_)
            | FibrationError::PicardRankOne => CliError::Unsupported(e.to_string()),
            FibrationError::Dynkin(d) => d.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CylinderError> for CliError {
    fn from(e: CylinderError) -> Self {
        match e {
            CylinderError::Ampleness { id, value } => CliError::Ampleness {
                id,
                value: value.to_string(),
            },
            CylinderError::Unsupported(_)
            | CylinderError::PicardRankOne
            | CylinderError::OutOfScope(_) => CliError::Unsupported(e.to_string()),
            CylinderError::VerificationFailed(m) => CliError::Failed(m),
            CylinderError::Fibration(f) => f.into(),
            CylinderError::Core(_) | CylinderError::InvalidInput(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}
