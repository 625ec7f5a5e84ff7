//! Embedding-model persistence as version-stamped JSON.

use std::fs;
use std::path::Path;

use kgrec_core::embed::ModelParts;
use kgrec_core::EmbeddingModel;
use serde::{Deserialize, Serialize};

use crate::error::{FileError, FileErrorKind};

pub const MODEL_FORMAT: &str = "kgrec-pvdm/1";

#[derive(Deserialize)]
struct Header {
    format: String,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: String,
    model: ModelParts,
}

pub fn model_to_json(model: &EmbeddingModel) -> String {
    let envelope = Envelope {
        format: MODEL_FORMAT.to_string(),
        model: model.to_parts(),
    };
    serde_json::to_string(&envelope).expect("model parts serialize")
}

pub fn model_from_json(text: &str, path: &Path) -> Result<EmbeddingModel, FileError> {
    let header: Header = serde_json::from_str(text).map_err(|e| FileError::at(path, e))?;
    if header.format != MODEL_FORMAT {
        return Err(FileError::at(
            path,
            FileErrorKind::Format {
                expected: MODEL_FORMAT.to_string(),
                found: header.format,
            },
        ));
    }
    let envelope: Envelope = serde_json::from_str(text).map_err(|e| FileError::at(path, e))?;
    EmbeddingModel::from_parts(envelope.model).map_err(|e| FileError::at(path, e))
}

pub fn save_model(model: &EmbeddingModel, path: &Path) -> Result<(), FileError> {
    fs::write(path, model_to_json(model)).map_err(|e| FileError::at(path, e))
}

pub fn load_model(path: &Path) -> Result<EmbeddingModel, FileError> {
    let text = fs::read_to_string(path).map_err(|e| FileError::at(path, e))?;
    model_from_json(&text, path)
}
