//! The vocabulary under evaluation: an ordered set of token strings.

use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use thiserror::Error;

/// An ordered subword vocabulary. The position of a token is its id, so a
/// vocabulary round-trips losslessly through the one-token-per-line file
/// format.
///
/// Tokens are stored exactly as supplied — the vocabulary file is ground
/// truth and is never normalized.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    tokens: Vec<String>,
    marker: String,
    by_surface: HashMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabularyError {
    #[error("vocabulary is empty")]
    Empty,
    #[error("duplicate token {token:?} at index {index}")]
    DuplicateToken { index: usize, token: String },
    #[error("empty token at index {index}")]
    EmptyToken { index: usize },
    #[error("token at index {index} consists solely of the continuation marker")]
    MarkerOnlyToken { index: usize },
    #[error("continuation marker must be non-empty")]
    EmptyMarker,
}

impl Vocabulary {
    /// Build a vocabulary from tokens in id order.
    pub fn new<I, S>(tokens: I, marker: &str) -> Result<Self, VocabularyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if marker.is_empty() {
            return Err(VocabularyError::EmptyMarker);
        }
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(VocabularyError::Empty);
        }
        let mut by_surface = HashMap::with_capacity(tokens.len());
        for (index, token) in tokens.iter().enumerate() {
            if token.is_empty() {
                return Err(VocabularyError::EmptyToken { index });
            }
            if token == marker {
                return Err(VocabularyError::MarkerOnlyToken { index });
            }
            if by_surface.insert(token.clone(), index as u32).is_some() {
                return Err(VocabularyError::DuplicateToken {
                    index,
                    token: token.clone(),
                });
            }
        }
        Ok(Self {
            tokens,
            marker: String::from(marker),
            by_surface,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.by_surface.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.by_surface.contains_key(token)
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    /// Tokens in id order.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn marker(&self) -> &str {
        &self.marker
    }

    /// True for tokens that may only continue a word.
    pub fn is_continuation(&self, token: &str) -> bool {
        token.starts_with(self.marker.as_str())
    }

    /// The token surface with any leading continuation marker removed.
    pub fn strip_marker<'a>(&self, token: &'a str) -> &'a str {
        token.strip_prefix(self.marker.as_str()).unwrap_or(token)
    }
}
