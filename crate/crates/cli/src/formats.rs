//! Readers and writers for the on-disk dataset and vocabulary formats.
//!
//! - vocabulary: UTF-8, one token per line, line number - 1 = token id
//! - merges: optional `#`-prefixed header line, then `LEFT RIGHT` per line
//!   in merge-priority order
//! - morpheme inventory: JSON object with optional `prefixes` / `suffixes` /
//!   `stems` / `clitics` string arrays
//! - coherence dataset: headerless TSV `word<TAB>morpheme<TAB>type`
//! - accuracy dataset: JSON object `word -> pos tag -> [morphemes]`
//! - corpus: plain text, one sentence per line

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::Deserialize;
use thiserror::Error;

use morfeval_core::config::NormalizationConfig;
use morfeval_core::morphology::{CoherencePair, DatasetError, GoldSegmentations, MorphemeInventory, MorphemeType};
use morfeval_core::train::{MergeTable, MergeTableError};
use morfeval_core::vocab::{Vocabulary, VocabularyError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("input not found: {}", path.display())]
    NotFound { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: invalid UTF-8", path.display())]
    Encoding { path: PathBuf },
    #[error("{}: empty vocabulary file", path.display())]
    EmptyVocabulary { path: PathBuf },
    #[error("{}:{line}: duplicate token {token:?}", path.display())]
    DuplicateToken {
        path: PathBuf,
        line: usize,
        token: String,
    },
    #[error("{}:{line}: empty token line", path.display())]
    EmptyToken { path: PathBuf, line: usize },
    #[error("{}:{line}: token is the bare continuation marker", path.display())]
    MarkerOnlyToken { path: PathBuf, line: usize },
    #[error("{}:{row}: {message}", path.display())]
    Parse {
        path: PathBuf,
        row: usize,
        message: String,
    },
    #[error("{}:{row}: unknown morpheme type {tag:?}", path.display())]
    UnknownType {
        path: PathBuf,
        row: usize,
        tag: String,
    },
    #[error("{}:{row}: {source}", path.display())]
    Validation {
        path: PathBuf,
        row: usize,
        #[source]
        source: DatasetError,
    },
    #[error("{}: {message}", path.display())]
    InvalidData { path: PathBuf, message: String },
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    let bytes = fs::read(path).map_err(|source| {
        if source.kind() == ErrorKind::NotFound {
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
    String::from_utf8(bytes).map_err(|_| FormatError::Encoding {
        path: path.to_path_buf(),
    })
}

pub fn write_text(path: &Path, content: &str) -> Result<(), FormatError> {
    fs::write(path, content).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Split file content into lines, tolerating a final trailing newline.
fn content_lines(content: &str) -> Vec<&str> {
    let mut lines: Vec<&str> = content.split('\n').collect();
    if lines.last() == Some(&"") {
        lines.pop();
    }
    lines
}

/// Load a one-token-per-line vocabulary file. Lines are taken verbatim; no
/// normalization is applied to tokens.
pub fn load_vocabulary(path: &Path, cfg: &NormalizationConfig) -> Result<Vocabulary, FormatError> {
    let content = read_text(path)?;
    let lines = content_lines(&content);
    if lines.is_empty() {
        return Err(FormatError::EmptyVocabulary {
            path: path.to_path_buf(),
        });
    }
    Vocabulary::new(lines, cfg.marker()).map_err(|e| match e {
        VocabularyError::DuplicateToken { index, token } => FormatError::DuplicateToken {
            path: path.to_path_buf(),
            line: index + 1,
            token,
        },
        VocabularyError::EmptyToken { index } => FormatError::EmptyToken {
            path: path.to_path_buf(),
            line: index + 1,
        },
        VocabularyError::MarkerOnlyToken { index } => FormatError::MarkerOnlyToken {
            path: path.to_path_buf(),
            line: index + 1,
        },
        VocabularyError::Empty | VocabularyError::EmptyMarker => FormatError::InvalidData {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
    })
}

pub fn vocabulary_to_string(vocab: &Vocabulary) -> String {
    let mut out = String::new();
    for token in vocab.tokens() {
        out.push_str(token);
        out.push('\n');
    }
    out
}

pub fn save_vocabulary(path: &Path, vocab: &Vocabulary) -> Result<(), FormatError> {
    write_text(path, &vocabulary_to_string(vocab))
}

/// Load a merges file: `LEFT RIGHT` per line, optional `#` header line.
pub fn load_merges(path: &Path) -> Result<MergeTable, FormatError> {
    let content = read_text(path)?;
    let mut lines = content_lines(&content);
    let mut offset = 1usize;
    if lines.first().is_some_and(|l| l.starts_with('#')) {
        lines.remove(0);
        offset = 2;
    }
    let mut merges = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let row = i + offset;
        let mut parts = line.split(' ');
        let (Some(left), Some(right), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(FormatError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("expected \"LEFT RIGHT\", got {line:?}"),
            });
        };
        if left.is_empty() || right.is_empty() {
            return Err(FormatError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("expected \"LEFT RIGHT\", got {line:?}"),
            });
        }
        merges.push((left.to_string(), right.to_string()));
    }
    MergeTable::new(merges).map_err(|MergeTableError::DuplicatePair { index, left, right }| {
        FormatError::Parse {
            path: path.to_path_buf(),
            row: index + offset,
            message: format!("duplicate merge pair ({left:?}, {right:?})"),
        }
    })
}

pub fn merges_to_string(merges: &MergeTable) -> String {
    let mut out = String::from("#version: 0.2\n");
    for (left, right) in merges.iter() {
        out.push_str(left);
        out.push(' ');
        out.push_str(right);
        out.push('\n');
    }
    out
}

pub fn save_merges(path: &Path, merges: &MergeTable) -> Result<(), FormatError> {
    write_text(path, &merges_to_string(merges))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInventory {
    #[serde(default)]
    prefixes: Vec<String>,
    #[serde(default)]
    suffixes: Vec<String>,
    #[serde(default)]
    stems: Vec<String>,
    #[serde(default)]
    clitics: Vec<String>,
}

/// Load a morpheme inventory. Every section is optional; entries are
/// normalized on load.
pub fn load_inventory(
    path: &Path,
    cfg: &NormalizationConfig,
) -> Result<MorphemeInventory, FormatError> {
    let content = read_text(path)?;
    let raw: RawInventory =
        serde_json::from_str(&content).map_err(|e| FormatError::InvalidData {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    MorphemeInventory::new(raw.prefixes, raw.suffixes, raw.stems, raw.clitics, cfg).map_err(|e| {
        FormatError::InvalidData {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    })
}

/// Load the coherence dataset: headerless TSV rows
/// `word<TAB>morpheme<TAB>type`. Rows are normalized and position-validated;
/// the row number of any rejected line is reported.
pub fn load_coherence_pairs(
    path: &Path,
    cfg: &NormalizationConfig,
) -> Result<Vec<CoherencePair>, FormatError> {
    let content = read_text(path)?;
    let mut pairs = Vec::new();
    for (i, line) in content_lines(&content).iter().enumerate() {
        let row = i + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [word, morpheme, tag] = fields.as_slice() else {
            return Err(FormatError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("expected 3 tab-separated fields, got {}", fields.len()),
            });
        };
        let mtype: MorphemeType = tag.parse().map_err(|_| FormatError::UnknownType {
            path: path.to_path_buf(),
            row,
            tag: (*tag).to_string(),
        })?;
        let pair = CoherencePair::new(word, morpheme, mtype, cfg).map_err(|source| {
            FormatError::Validation {
                path: path.to_path_buf(),
                row,
                source,
            }
        })?;
        pairs.push(pair);
    }
    Ok(pairs)
}

/// Load the accuracy dataset, keeping words and readings in file order.
pub fn load_gold_segmentations(
    path: &Path,
    cfg: &NormalizationConfig,
) -> Result<GoldSegmentations, FormatError> {
    let content = read_text(path)?;
    let raw: IndexMap<String, IndexMap<String, Vec<String>>> = serde_json::from_str(&content)
        .map_err(|e| FormatError::InvalidData {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
    GoldSegmentations::new(
        raw.iter().map(|(word, readings)| {
            (
                word.as_str(),
                readings.iter().map(|(pos, morphemes)| {
                    (
                        pos.as_str(),
                        morphemes.iter().map(String::as_str).collect::<Vec<_>>(),
                    )
                }),
            )
        }),
        cfg,
    )
    .map_err(|e| FormatError::InvalidData {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Read a plain-text corpus; callers iterate over `.lines()`.
pub fn load_corpus(path: &Path) -> Result<String, FormatError> {
    read_text(path)
}

/// Read a word list: one word per line, blank lines skipped.
pub fn load_word_list(path: &Path) -> Result<Vec<String>, FormatError> {
    let content = read_text(path)?;
    Ok(content_lines(&content)
        .into_iter()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect())
}
