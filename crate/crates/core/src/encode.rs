//! Word segmentation: greedy longest-match encoding and merge-replay
//! encoding over a shared continuation-marker convention.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::{ConfigError, NormalizationConfig};
use crate::normalize::{normalize, NormalizeError};
use crate::segmentation::Segmentation;
use crate::train::MergeTable;
use crate::vocab::Vocabulary;

/// A configured word segmenter. Encoders are pure and shareable across
/// threads; batch helpers rely on that.
pub trait Encoder: Sync {
    /// Segment one word. The word is normalized first; the resulting
    /// `Segmentation` holds the normalized form.
    fn encode(&self, word: &str) -> Result<Segmentation, NormalizeError>;

    fn vocabulary(&self) -> &Vocabulary;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncoderBuildError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("merge {index}: token {token:?} is not in the vocabulary")]
    MergeSideMissing { index: usize, token: String },
    #[error("merge {index}: product {token:?} is not in the vocabulary")]
    MergeProductMissing { index: usize, token: String },
}

/// Error raised by [`tokenize_batch`], carrying the index of the offending
/// word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("word {index}: {source}")]
pub struct BatchError {
    pub index: usize,
    #[source]
    pub source: NormalizeError,
}

/// Encode a sequence of words, preserving order. Results are identical to
/// encoding each word on its own.
pub fn tokenize_batch<'a, E, I>(encoder: &E, words: I) -> Result<Vec<Segmentation>, BatchError>
where
    E: Encoder + ?Sized,
    I: IntoIterator<Item = &'a str>,
{
    words
        .into_iter()
        .enumerate()
        .map(|(index, word)| {
            encoder
                .encode(word)
                .map_err(|source| BatchError { index, source })
        })
        .collect()
}

fn unknown_segmentation(word: String, cfg: &NormalizationConfig) -> Segmentation {
    Segmentation {
        word,
        tokens: alloc::vec![cfg.unknown_token.clone()],
        contains_unknown: true,
    }
}

/// Greedy longest-match-first segmenter: at each position take the longest
/// vocabulary token (bare at the word start, marked after). A position with
/// no match turns the whole word into the unknown token.
#[derive(Debug, Clone)]
pub struct WordpieceEncoder {
    vocab: Vocabulary,
    cfg: NormalizationConfig,
    max_word_chars: Option<usize>,
}

impl WordpieceEncoder {
    pub fn new(vocab: Vocabulary, cfg: NormalizationConfig) -> Result<Self, EncoderBuildError> {
        cfg.validate()?;
        Ok(Self {
            vocab,
            cfg,
            max_word_chars: None,
        })
    }

    /// Limit the number of characters a word may have before it is mapped
    /// straight to the unknown token. Unlimited by default.
    pub fn with_max_word_chars(mut self, max: Option<usize>) -> Self {
        self.max_word_chars = max;
        self
    }
}

impl Encoder for WordpieceEncoder {
    fn encode(&self, word: &str) -> Result<Segmentation, NormalizeError> {
        let word = normalize(word, &self.cfg)?;
        if let Some(max) = self.max_word_chars {
            if word.chars().count() > max {
                return Ok(unknown_segmentation(word, &self.cfg));
            }
        }

        // Byte offsets of every char boundary, including the end.
        let mut boundaries: Vec<usize> = word.char_indices().map(|(i, _)| i).collect();
        boundaries.push(word.len());

        let marker = self.cfg.marker();
        let mut tokens: Vec<String> = Vec::new();
        let mut candidate = String::new();
        let mut pos = 0;
        while pos < boundaries.len() - 1 {
            let mut matched = None;
            for end in (pos + 1..boundaries.len()).rev() {
                let piece = &word[boundaries[pos]..boundaries[end]];
                let surface = if pos == 0 {
                    piece
                } else {
                    candidate.clear();
                    candidate.push_str(marker);
                    candidate.push_str(piece);
                    candidate.as_str()
                };
                if self.vocab.contains(surface) {
                    matched = Some((end, surface.to_string()));
                    break;
                }
            }
            match matched {
                Some((end, token)) => {
                    tokens.push(token);
                    pos = end;
                }
                None => return Ok(unknown_segmentation(word, &self.cfg)),
            }
        }
        Ok(Segmentation {
            word,
            tokens,
            contains_unknown: false,
        })
    }

    fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }
}

/// Merge-replay segmenter: the word is split into positional characters and
/// the merge rules are applied in table order, each rule in a single
/// left-to-right pass over all current adjacent occurrences.
#[derive(Debug, Clone)]
pub struct BpeEncoder {
    vocab: Vocabulary,
    cfg: NormalizationConfig,
    max_word_chars: Option<usize>,
    // (left id, right id, product id) per merge rule, in table order.
    rules: Vec<(u32, u32, u32)>,
}

impl BpeEncoder {
    /// Build the encoder, checking that every merge's sides and
    /// marker-adjusted product are vocabulary members.
    pub fn new(
        vocab: Vocabulary,
        merges: &MergeTable,
        cfg: NormalizationConfig,
    ) -> Result<Self, EncoderBuildError> {
        cfg.validate()?;
        let mut rules = Vec::with_capacity(merges.len());
        for (index, (left, right)) in merges.iter().enumerate() {
            let left_id = vocab.id(left).ok_or_else(|| {
                EncoderBuildError::MergeSideMissing {
                    index,
                    token: left.clone(),
                }
            })?;
            let right_id = vocab.id(right).ok_or_else(|| {
                EncoderBuildError::MergeSideMissing {
                    index,
                    token: right.clone(),
                }
            })?;
            let mut product = left.clone();
            product.push_str(vocab.strip_marker(right));
            let product_id = vocab.id(&product).ok_or(EncoderBuildError::MergeProductMissing {
                index,
                token: product,
            })?;
            rules.push((left_id, right_id, product_id));
        }
        Ok(Self {
            vocab,
            cfg,
            max_word_chars: None,
            rules,
        })
    }

    /// See [`WordpieceEncoder::with_max_word_chars`].
    pub fn with_max_word_chars(mut self, max: Option<usize>) -> Self {
        self.max_word_chars = max;
        self
    }
}

impl Encoder for BpeEncoder {
    fn encode(&self, word: &str) -> Result<Segmentation, NormalizeError> {
        let word = normalize(word, &self.cfg)?;
        if let Some(max) = self.max_word_chars {
            if word.chars().count() > max {
                return Ok(unknown_segmentation(word, &self.cfg));
            }
        }

        // Positional character symbols; any character not covered by the
        // vocabulary makes the whole word unknown.
        let marker = self.cfg.marker();
        let mut symbols: Vec<u32> = Vec::new();
        let mut buf = String::new();
        for (i, c) in word.chars().enumerate() {
            buf.clear();
            if i > 0 {
                buf.push_str(marker);
            }
            buf.push(c);
            match self.vocab.id(&buf) {
                Some(id) => symbols.push(id),
                None => return Ok(unknown_segmentation(word, &self.cfg)),
            }
        }

        for &(left, right, product) in &self.rules {
            if symbols.len() < 2 {
                break;
            }
            let mut merged = Vec::with_capacity(symbols.len());
            let mut i = 0;
            while i < symbols.len() {
                if i + 1 < symbols.len() && symbols[i] == left && symbols[i + 1] == right {
                    merged.push(product);
                    i += 2;
                } else {
                    merged.push(symbols[i]);
                    i += 1;
                }
            }
            symbols = merged;
        }

        let tokens = symbols
            .into_iter()
            .map(|id| self.vocab.token(id).expect("symbol ids come from the vocabulary").to_string())
            .collect();
        Ok(Segmentation {
            word,
            tokens,
            contains_unknown: false,
        })
    }

    fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }
}
