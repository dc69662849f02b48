//! Word normalization and corpus pre-tokenization.

use alloc::string::{String, ToString};

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::config::{NormalizationConfig, UnicodeForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("input is empty or whitespace-only")]
    EmptyInput,
}

/// Normalize a word: trim surrounding whitespace, lowercase (if configured),
/// and apply the configured Unicode normalization form.
///
/// Idempotent: normalizing an already-normalized word is a no-op.
pub fn normalize(word: &str, cfg: &NormalizationConfig) -> Result<String, NormalizeError> {
    let trimmed = word.trim();
    if trimmed.is_empty() {
        return Err(NormalizeError::EmptyInput);
    }
    let lowered = if cfg.lowercase {
        trimmed.to_lowercase()
    } else {
        trimmed.to_string()
    };
    Ok(match cfg.unicode_form {
        UnicodeForm::Nfc => lowered.nfc().collect(),
        UnicodeForm::Nfd => lowered.nfd().collect(),
        UnicodeForm::None => lowered,
    })
}

/// Split a normalized sentence into words: maximal runs of alphanumeric
/// characters, with every other non-whitespace character emitted as a
/// standalone single-character word.
pub fn split_words(sentence: &str) -> impl Iterator<Item = &str> {
    SplitWords {
        rest: sentence,
        offset: 0,
    }
}

struct SplitWords<'a> {
    rest: &'a str,
    offset: usize,
}

impl<'a> Iterator for SplitWords<'a> {
    type Item = &'a str;

    fn next(&mut self) -> Option<&'a str> {
        let mut chars = self.rest[self.offset..].char_indices();
        let (start, first) = chars.find(|(_, c)| !c.is_whitespace())?;
        let start = self.offset + start;
        if !first.is_alphanumeric() {
            let end = start + first.len_utf8();
            self.offset = end;
            return Some(&self.rest[start..end]);
        }
        let mut end = self.rest.len();
        for (i, c) in self.rest[start..].char_indices().skip(1) {
            if !c.is_alphanumeric() {
                end = start + i;
                break;
            }
        }
        self.offset = end;
        Some(&self.rest[start..end])
    }
}
