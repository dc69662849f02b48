//! Run manifests: enough provenance to reproduce any report.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use morfeval_core::config::EvalConfig;

use crate::formats::FormatError;

/// One input file with its content digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFile {
    /// Role of the file in the run ("vocab", "gold", ...).
    pub name: String,
    pub path: String,
    pub sha256: String,
}

/// Digest an input file for the manifest.
pub fn input_file(name: &str, path: &Path) -> Result<InputFile, FormatError> {
    let bytes = std::fs::read(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            FormatError::NotFound {
                path: path.to_path_buf(),
            }
        } else {
            FormatError::Io {
                path: path.to_path_buf(),
                source,
            }
        }
    })?;
    Ok(InputFile {
        name: name.to_string(),
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

/// The configuration that influenced the report body. Worker count is
/// deliberately absent: results are jobs-invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub eval: EvalConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_word_chars: Option<usize>,
}

/// Embedded in every report; two runs with equal manifests (timestamp
/// aside) produce identical report bodies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputFile>,
    pub config: ConfigSnapshot,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, inputs: Vec<InputFile>, config: ConfigSnapshot) -> Self {
        RunManifest {
            command: command.into(),
            inputs,
            config,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable() {
        let dir = tempfile::TempDir::new().unwrap();
        let path = dir.path().join("x.txt");
        std::fs::write(&path, "casa\n").unwrap();
        let a = input_file("vocab", &path).unwrap();
        let b = input_file("vocab", &path).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sha256.len(), 64);
    }

    #[test]
    fn missing_input_is_reported() {
        let err = input_file("vocab", Path::new("/no/such/file")).unwrap_err();
        assert!(err.to_string().starts_with("input not found: "));
    }
}
