//! File formats: scene manifests (`.manifest.json`), interaction traces
//! (`.trace.jsonl`) and committed composites (`.composite.json`).
//!
//! Composites are written canonically (sorted keys, floats at 6 significant
//! digits) so that replaying the same inputs yields identical bytes.

mod canonical;
mod manifest;
mod trace;

use thiserror::Error;

pub use canonical::{canonical_value, round_sig6, to_canonical_line, to_canonical_string};
pub use manifest::{load_manifest, save_manifest, DeclaredRelationship, Manifest};
pub use trace::{load_trace, save_trace};

use crate::compose::CompositeSpec;

pub const MANIFEST_EXT: &str = ".manifest.json";
pub const TRACE_EXT: &str = ".trace.jsonl";
pub const COMPOSITE_EXT: &str = ".composite.json";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    /// Malformed JSON or a field the format does not know. Line and column
    /// are 1-based; column 0 means end of input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Validation { path: String, message: String },
    #[error("line {line}: time goes backwards")]
    Order { line: usize },
}

impl LoadError {
    pub(crate) fn from_json(e: &serde_json::Error, line_offset: usize) -> Self {
        LoadError::Parse {
            line: e.line() + line_offset,
            column: e.column(),
            message: strip_position(&e.to_string()),
        }
    }

    pub(crate) fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        LoadError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

pub fn save_composite(spec: &CompositeSpec) -> String {
    to_canonical_string(spec)
}

/// A list of composites, as written by replay.
pub fn save_composites(specs: &[CompositeSpec]) -> String {
    to_canonical_string(&specs)
}

pub fn load_composite(text: &str) -> Result<CompositeSpec, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::from_json(&e, 0))
}

pub fn load_composites(text: &str) -> Result<Vec<CompositeSpec>, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::from_json(&e, 0))
}
