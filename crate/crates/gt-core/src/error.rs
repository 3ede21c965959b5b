use serde::Serialize;
use thiserror::Error;

use crate::planar::GenericityError;

/// Errors reported by the library.
#[derive(Debug, Clone, Error)]
pub enum GtError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator index {index} out of range 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("non-generic input: {0}")]
    Genericity(#[from] GenericityError),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("symbol undetectable: {0}")]
    UndetectableSymbol(String),

    #[error("inadmissible chord diagram: {0}")]
    Inadmissible(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl GtError {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        GtError::Parse { pos, msg: msg.into() }
    }

    /// Machine-readable form used by the CLI's JSON output.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Report<'a> {
            kind: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            detail: Option<serde_json::Value>,
        }
        let (kind, detail) = match self {
            GtError::Parse { pos, .. } => ("parse", Some(serde_json::json!({ "position": pos }))),
            GtError::IndexOutOfRange { .. } => ("parse", None),
            GtError::Genericity(g) => ("genericity", serde_json::to_value(g).ok()),
            GtError::Consistency(_) => ("consistency", None),
            GtError::TruncationMismatch { .. } => ("truncation", None),
            GtError::UndetectableSymbol(_) => ("symbol", None),
            GtError::Inadmissible(_) => ("inadmissible", None),
            GtError::Input(_) => ("input", None),
        };
        serde_json::to_value(Report { kind, message: self.to_string(), detail }).unwrap_or(serde_json::Value::Null)
    }
}

pub type Result<T> = std::result::Result<T, GtError>;
