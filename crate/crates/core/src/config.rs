//! Shared configuration for normalization and evaluation.

use alloc::string::String;

use thiserror::Error;

/// Unicode normalization form applied to words before segmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum UnicodeForm {
    /// Canonical composition; Spanish accented vowels stay single code points.
    #[default]
    Nfc,
    /// Canonical decomposition.
    Nfd,
    /// Leave the input as-is.
    None,
}

/// How evaluated words and dataset entries are normalized, plus the token
/// conventions shared by every tokenizer in this crate.
///
/// The defaults (`lowercase`, NFC, `"##"`, `"[UNK]"`) match the conventions
/// of uncased BERT-style vocabularies. Vocabulary files themselves are never
/// normalized; normalization applies only to the words being segmented and
/// to gold dataset entries.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormalizationConfig {
    pub lowercase: bool,
    pub unicode_form: UnicodeForm,
    /// Prefix carried by tokens that continue a word rather than start it.
    pub continuation_marker: String,
    /// Token substituted for a whole word that cannot be segmented.
    pub unknown_token: String,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        Self {
            lowercase: true,
            unicode_form: UnicodeForm::Nfc,
            continuation_marker: String::from("##"),
            unknown_token: String::from("[UNK]"),
        }
    }
}

impl NormalizationConfig {
    pub fn marker(&self) -> &str {
        &self.continuation_marker
    }

    /// Check the marker/unknown-token invariants.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.continuation_marker.is_empty() {
            return Err(ConfigError::EmptyMarker);
        }
        if self.continuation_marker.chars().any(char::is_whitespace) {
            return Err(ConfigError::WhitespaceInMarker);
        }
        if self.unknown_token == self.continuation_marker {
            return Err(ConfigError::UnknownTokenIsMarker);
        }
        Ok(())
    }
}

/// Settings consumed by the metric and error-taxonomy evaluators.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalConfig {
    pub normalization: NormalizationConfig,
    /// Also accept the bare (unmarked) form when testing whether a suffix or
    /// clitic is a vocabulary member. Off by default: the vocabulary form of
    /// a word-final morpheme is the marked token.
    pub suffix_match_unmarked: bool,
    /// Require a recognized suffix/clitic token to end at the word boundary.
    /// When off, any token equal to the morpheme counts regardless of span.
    pub anchor_suffixes: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self::new(NormalizationConfig::default())
    }
}

impl EvalConfig {
    pub fn new(normalization: NormalizationConfig) -> Self {
        Self {
            normalization,
            suffix_match_unmarked: false,
            anchor_suffixes: true,
        }
    }

    pub fn marker(&self) -> &str {
        self.normalization.marker()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("continuation marker must be non-empty")]
    EmptyMarker,
    #[error("continuation marker must not contain whitespace")]
    WhitespaceInMarker,
    #[error("unknown token must differ from the continuation marker")]
    UnknownTokenIsMarker,
}
