use serde::{Deserialize, Serialize};
use serde_json::Value;
use sp4quat::Mat4;
use thiserror::Error;

/// One input matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub matrix: [[f64; 4]; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixDocument {
    pub fn new(matrix: Mat4, label: Option<String>) -> Self {
        Self {
            matrix: matrix.rows(),
            label,
        }
    }

    pub fn mat4(&self) -> Mat4 {
        Mat4::from_rows(self.matrix)
    }
}

/// A single document or a batch; reports are emitted in the same shape.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Single(MatrixDocument),
    Batch(Vec<MatrixDocument>),
}

impl Input {
    pub fn documents(&self) -> &[MatrixDocument] {
        match self {
            Input::Single(doc) => std::slice::from_ref(doc),
            Input::Batch(docs) => docs,
        }
    }

    pub fn is_batch(&self) -> bool {
        matches!(self, Input::Batch(_))
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a matrix document or an array of them")]
    Shape,
    #[error("document {index}: matrix has non-finite entries")]
    NonFinite { index: usize },
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let value: Value = serde_json::from_str(text)?;
    let input = match value {
        Value::Array(_) => Input::Batch(serde_json::from_value(value)?),
        Value::Object(_) => Input::Single(serde_json::from_value(value)?),
        _ => return Err(InputError::Shape),
    };
    for (index, doc) in input.documents().iter().enumerate() {
        if !doc.mat4().is_finite() {
            return Err(InputError::NonFinite { index });
        }
    }
    Ok(input)
}
