//! Subword tokenizer training, segmentation, and morphological quality
//! scoring.
//!
//! Everything here operates on in-memory data and is `no_std` (alloc
//! required): vocabularies, BPE and Wordpiece training and encoding, the
//! relevance / coherence / accuracy metrics, the segmentation-error
//! taxonomy, and vocabulary set-similarity fingerprinting. File formats,
//! parallel drivers, and the command-line interface live in the companion
//! `morfeval` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod config;
pub mod encode;
pub mod metrics;
pub mod morphology;
pub mod normalize;
pub mod segmentation;
pub mod taxonomy;
pub mod train;
pub mod vocab;

pub use config::{EvalConfig, NormalizationConfig, UnicodeForm};
pub use encode::{tokenize_batch, BpeEncoder, Encoder, WordpieceEncoder};
pub use morphology::{
    CoherencePair, GoldReading, GoldSegmentations, GoldWord, MorphemeInventory, MorphemeType,
};
pub use normalize::normalize;
pub use segmentation::Segmentation;
pub use train::{train_bpe, train_wordpiece, MergeTable, TrainerConfig};
pub use vocab::Vocabulary;
