//! Instance files.
//!
//! An instance is a JSON document:
//!
//! ```json
//! {
//!   "version": 1,
//!   "beta": 100.0,
//!   "parties": [
//!     { "name": "P1", "candidates": [ { "utilities": [29.0, 4.0, 21.0] } ] }
//!   ],
//!   "metadata": { "source": "generate", "seed": 42 }
//! }
//! ```
//!
//! `utilities[j]` is what the supporters of party `j` get from the
//! candidate. Rendering is deterministic and floats round-trip exactly.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GameInstance, InstanceData, Party};

pub const FORMAT_VERSION: u32 = 1;

/// Optional provenance stored next to the instance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self == &Metadata::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub beta: f64,
    pub parties: Vec<Party>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

impl InstanceFile {
    pub fn new(g: &GameInstance, metadata: Metadata) -> Self {
        InstanceFile {
            version: FORMAT_VERSION,
            beta: g.beta(),
            parties: g.parties().to_vec(),
            metadata,
        }
    }

    pub fn into_instance(self, normalize: bool) -> Result<(GameInstance, Metadata)> {
        let g = GameInstance::validate(
            InstanceData {
                beta: self.beta,
                parties: self.parties,
            },
            normalize,
        )?;
        Ok((g, self.metadata))
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str, normalize: bool) -> Result<(GameInstance, Metadata)> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.version != FORMAT_VERSION {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!(
                "unsupported format version {} (expected {FORMAT_VERSION})",
                file.version
            ),
        });
    }
    file.into_instance(normalize)
}

/// Renders an instance as pretty-printed JSON with a trailing newline.
pub fn render_instance(g: &GameInstance, metadata: &Metadata) -> String {
    let mut out = serde_json::to_string_pretty(&InstanceFile::new(g, metadata.clone()))
        .expect("instance documents always serialise");
    out.push('\n');
    out
}

pub fn load(path: impl AsRef<Path>, normalize: bool) -> Result<(GameInstance, Metadata)> {
    let text = fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_instance(&text, normalize)
}

pub fn store(path: impl AsRef<Path>, g: &GameInstance, metadata: &Metadata) -> Result<()> {
    fs::write(path.as_ref(), render_instance(g, metadata))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}
