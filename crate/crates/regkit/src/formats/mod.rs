//! Readers and writers for the on-disk corpus formats.

pub mod overlap;
pub mod re_records;
pub mod scenes;

use regkit_core::scene::SceneError;
use regkit_core::TrialId;
use thiserror::Error;

pub use overlap::{parse_overlap, serialize_overlap, shared_trials, OverlapRow, Side};
pub use re_records::{parse_re_records, serialize_re_records, ParsedRecords, RecordError};
pub use scenes::{parse_scene_file, serialize_scenes};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("malformed document: {0}")]
    Shape(String),
    #[error("entry {index}: {message}")]
    Record { index: usize, message: String },
    #[error("scene {trial}: {message}")]
    Scene { trial: TrialId, message: String },
    #[error(transparent)]
    Invalid(#[from] SceneError),
}

/// Strings pass through; numbers and booleans are written out, since some
/// exports store binary attributes unquoted.
pub(crate) fn scalar(v: &serde_json::Value) -> Option<String> {
    use serde_json::Value as Json;
    match v {
        Json::String(s) => Some(s.clone()),
        Json::Number(n) => Some(n.to_string()),
        Json::Bool(b) => Some(if *b { "1" } else { "0" }.into()),
        _ => None,
    }
}
