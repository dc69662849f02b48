//! A word together with its tokenizer output.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::NormalizationConfig;

/// Tokenizer output for a single word. `word` holds the normalized form the
/// tokens were produced from; tokens are vocabulary surfaces, markers
/// included.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segmentation {
    pub word: String,
    pub tokens: Vec<String>,
    pub contains_unknown: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentationError {
    #[error("segmentation has no tokens")]
    NoTokens,
    #[error("token 0 {token:?} starts with the continuation marker")]
    MarkedInitialToken { token: String },
    #[error("token {index} {token:?} neither continues the word nor is the unknown token")]
    UnmarkedContinuation { index: usize, token: String },
    #[error("stripped tokens concatenate to {concat:?}, not {word:?}")]
    ConcatMismatch { word: String, concat: String },
}

impl Segmentation {
    /// Token surfaces with the continuation marker removed.
    pub fn stripped_tokens<'a>(&'a self, marker: &str) -> Vec<&'a str> {
        self.tokens
            .iter()
            .map(|t| t.strip_prefix(marker).unwrap_or(t))
            .collect()
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    /// Verify marker discipline and, for fully-known outputs, that the
    /// stripped tokens concatenate back to the word.
    pub fn check_invariants(&self, cfg: &NormalizationConfig) -> Result<(), SegmentationError> {
        let marker = cfg.marker();
        let Some(first) = self.tokens.first() else {
            return Err(SegmentationError::NoTokens);
        };
        if first.starts_with(marker) {
            return Err(SegmentationError::MarkedInitialToken {
                token: first.clone(),
            });
        }
        for (index, token) in self.tokens.iter().enumerate().skip(1) {
            if !token.starts_with(marker) && token != &cfg.unknown_token {
                return Err(SegmentationError::UnmarkedContinuation {
                    index,
                    token: token.clone(),
                });
            }
        }
        if !self.contains_unknown {
            let concat: String = self.stripped_tokens(marker).concat();
            if concat != self.word {
                return Err(SegmentationError::ConcatMismatch {
                    word: self.word.clone(),
                    concat,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn seg(word: &str, tokens: &[&str], unknown: bool) -> Segmentation {
        Segmentation {
            word: word.to_string(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            contains_unknown: unknown,
        }
    }

    #[test]
    fn stripping_removes_markers() {
        let s = seg("casas", &["cas", "##a", "##s"], false);
        assert_eq!(s.stripped_tokens("##"), ["cas", "a", "s"]);
    }

    #[test]
    fn invariants_hold_for_wellformed_output() {
        let cfg = NormalizationConfig::default();
        assert!(seg("casas", &["casa", "##s"], false)
            .check_invariants(&cfg)
            .is_ok());
        assert!(seg("ñu", &["[UNK]"], true).check_invariants(&cfg).is_ok());
    }

    #[test]
    fn invariants_catch_violations() {
        let cfg = NormalizationConfig::default();
        assert!(matches!(
            seg("casas", &["##casa", "##s"], false).check_invariants(&cfg),
            Err(SegmentationError::MarkedInitialToken { .. })
        ));
        assert!(matches!(
            seg("casas", &["casa", "s"], false).check_invariants(&cfg),
            Err(SegmentationError::UnmarkedContinuation { .. })
        ));
        assert!(matches!(
            seg("casas", &["casa", "##a"], false).check_invariants(&cfg),
            Err(SegmentationError::ConcatMismatch { .. })
        ));
        assert!(matches!(
            Segmentation {
                word: "x".to_string(),
                tokens: vec![],
                contains_unknown: false
            }
            .check_invariants(&cfg),
            Err(SegmentationError::NoTokens)
        ));
    }
}
