//! Classification of mis-segmented words into four error types, plus
//! vocabulary fingerprinting by token-set similarity.
//!
//! The error decision tree runs structural checks before lexical ones:
//!
//! 1. a multi-morpheme word kept whole (under-segmentation);
//! 2. a single-morpheme word split up (over-segmentation);
//! 3. a gold morpheme whose positional vocabulary form is missing;
//! 4. every gold morpheme available, but not selected.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::EvalConfig;
use crate::encode::Encoder;
use crate::metrics::Prf;
use crate::morphology::{GoldReading, GoldSegmentations, GoldWord, MorphemeInventory};
use crate::segmentation::Segmentation;
use crate::vocab::Vocabulary;

/// The four segmentation error types, in decision order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ErrorType {
    /// A word with more than one morpheme left as a single token.
    UnderSegmentation,
    /// A single-morpheme word split into several tokens.
    OverSegmentation,
    /// A gold morpheme's vocabulary form is absent from the vocabulary.
    MorphemeAbsent,
    /// Every gold morpheme is in the vocabulary, but the tokenizer picked
    /// other subwords.
    MorphemeNotSelected,
}

impl ErrorType {
    pub const ALL: [ErrorType; 4] = [
        ErrorType::UnderSegmentation,
        ErrorType::OverSegmentation,
        ErrorType::MorphemeAbsent,
        ErrorType::MorphemeNotSelected,
    ];

    /// 1-based index used in report tables.
    pub fn index(self) -> usize {
        match self {
            ErrorType::UnderSegmentation => 1,
            ErrorType::OverSegmentation => 2,
            ErrorType::MorphemeAbsent => 3,
            ErrorType::MorphemeNotSelected => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ErrorType::UnderSegmentation => "under-segmentation",
            ErrorType::OverSegmentation => "over-segmentation",
            ErrorType::MorphemeAbsent => "morpheme absent",
            ErrorType::MorphemeNotSelected => "morpheme not selected",
        }
    }
}

/// Evidence for one classified error.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorRecord {
    pub word: String,
    /// The gold reading the classification was made against.
    pub gold_reading: GoldReading,
    pub output: Segmentation,
    pub error_type: ErrorType,
    /// Positional vocabulary forms of missing morphemes; non-empty exactly
    /// for morpheme-absent errors.
    pub missing_morphemes: BTreeSet<String>,
}

/// Outcome of classifying one word.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Correct,
    Error(ErrorRecord),
}

impl Verdict {
    pub fn is_correct(&self) -> bool {
        matches!(self, Verdict::Correct)
    }
}

/// Error counts by type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorProfile {
    pub under_segmentation: u64,
    pub over_segmentation: u64,
    pub morpheme_absent: u64,
    pub morpheme_not_selected: u64,
    pub total: u64,
}

impl ErrorProfile {
    pub fn record(&mut self, etype: ErrorType) {
        match etype {
            ErrorType::UnderSegmentation => self.under_segmentation += 1,
            ErrorType::OverSegmentation => self.over_segmentation += 1,
            ErrorType::MorphemeAbsent => self.morpheme_absent += 1,
            ErrorType::MorphemeNotSelected => self.morpheme_not_selected += 1,
        }
        self.total += 1;
    }

    pub fn count(&self, etype: ErrorType) -> u64 {
        match etype {
            ErrorType::UnderSegmentation => self.under_segmentation,
            ErrorType::OverSegmentation => self.over_segmentation,
            ErrorType::MorphemeAbsent => self.morpheme_absent,
            ErrorType::MorphemeNotSelected => self.morpheme_not_selected,
        }
    }

    pub fn merge(mut self, other: ErrorProfile) -> ErrorProfile {
        self.under_segmentation += other.under_segmentation;
        self.over_segmentation += other.over_segmentation;
        self.morpheme_absent += other.morpheme_absent;
        self.morpheme_not_selected += other.morpheme_not_selected;
        self.total += other.total;
        self
    }
}

/// The positional vocabulary form of a gold morpheme: bare word-initially,
/// marker-prefixed afterwards.
fn positional_form(index: usize, surface: &str, marker: &str) -> String {
    if index == 0 {
        surface.to_string()
    } else {
        let mut form = String::from(marker);
        form.push_str(surface);
        form
    }
}

/// The gold reading with the most positionally matching morphemes; ties go
/// to the earliest reading in dataset order.
fn best_reading<'a>(readings: &'a [GoldReading], stripped: &[&str]) -> &'a GoldReading {
    let mut best = &readings[0];
    let mut best_score = positional_matches(best, stripped);
    for reading in &readings[1..] {
        let score = positional_matches(reading, stripped);
        if score > best_score {
            best = reading;
            best_score = score;
        }
    }
    best
}

fn positional_matches(reading: &GoldReading, stripped: &[&str]) -> usize {
    reading
        .morphemes
        .iter()
        .zip(stripped)
        .filter(|(m, s)| m.as_str() == **s)
        .count()
}

/// Classify one gold word's output as correct or one of the four error
/// types. `output` must be the encoder output for the normalized word.
pub fn classify_error(
    gold: &GoldWord,
    output: &Segmentation,
    vocab: &Vocabulary,
    cfg: &EvalConfig,
) -> Verdict {
    let marker = cfg.marker();
    let stripped = output.stripped_tokens(marker);

    if !output.contains_unknown
        && gold.readings.iter().any(|r| {
            r.morphemes.len() == stripped.len()
                && r.morphemes.iter().zip(&stripped).all(|(m, s)| m == s)
        })
    {
        return Verdict::Correct;
    }

    let record = |etype: ErrorType, reading: &GoldReading, missing: BTreeSet<String>| {
        Verdict::Error(ErrorRecord {
            word: gold.word.clone(),
            gold_reading: reading.clone(),
            output: output.clone(),
            error_type: etype,
            missing_morphemes: missing,
        })
    };

    if output.contains_unknown {
        // Report the positional character forms the vocabulary lacks. With
        // an unlimited word length this set is never empty; a length-cutoff
        // unknown falls through to the structural rules instead.
        let mut missing = BTreeSet::new();
        for (i, c) in output.word.chars().enumerate() {
            let mut buf = [0u8; 4];
            let form = positional_form(i, c.encode_utf8(&mut buf), marker);
            if !vocab.contains(&form) {
                missing.insert(form);
            }
        }
        if !missing.is_empty() {
            let reading = best_reading(&gold.readings, &stripped);
            return record(ErrorType::MorphemeAbsent, reading, missing);
        }
    }

    if output.tokens.len() == 1 && gold.readings.iter().all(|r| r.morphemes.len() > 1) {
        let reading = best_reading(&gold.readings, &stripped);
        return record(ErrorType::UnderSegmentation, reading, BTreeSet::new());
    }

    if output.tokens.len() > 1 && gold.readings.iter().any(|r| r.morphemes.len() == 1) {
        let reading = gold
            .readings
            .iter()
            .find(|r| r.morphemes.len() == 1)
            .expect("guarded by the surrounding condition");
        return record(ErrorType::OverSegmentation, reading, BTreeSet::new());
    }

    let reading = best_reading(&gold.readings, &stripped);
    let mut missing = BTreeSet::new();
    for (i, morpheme) in reading.morphemes.iter().enumerate() {
        let form = positional_form(i, morpheme, marker);
        if !vocab.contains(&form) {
            missing.insert(form);
        }
    }
    if !missing.is_empty() {
        record(ErrorType::MorphemeAbsent, reading, missing)
    } else {
        record(ErrorType::MorphemeNotSelected, reading, BTreeSet::new())
    }
}

/// Full error analysis of a gold dataset under one encoder.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorAnalysis {
    pub n_words: usize,
    pub n_correct: usize,
    pub profile: ErrorProfile,
    pub records: Vec<ErrorRecord>,
}

impl ErrorAnalysis {
    /// Assemble the analysis from per-word verdicts in dataset order.
    pub fn from_verdicts(verdicts: Vec<Verdict>) -> Self {
        let n_words = verdicts.len();
        let mut n_correct = 0;
        let mut profile = ErrorProfile::default();
        let mut records = Vec::new();
        for verdict in verdicts {
            match verdict {
                Verdict::Correct => n_correct += 1,
                Verdict::Error(record) => {
                    profile.record(record.error_type);
                    records.push(record);
                }
            }
        }
        ErrorAnalysis {
            n_words,
            n_correct,
            profile,
            records,
        }
    }

    /// Errors implied by the accuracy count; always equals `profile.total`
    /// here because every incorrect word receives exactly one type.
    pub fn errors_expected(&self) -> u64 {
        (self.n_words - self.n_correct) as u64
    }

    pub fn partition_consistent(&self) -> bool {
        self.errors_expected() == self.profile.total
    }
}

/// Segment and classify every word of the gold dataset.
pub fn error_profile<E: Encoder + ?Sized>(
    encoder: &E,
    gold: &GoldSegmentations,
    cfg: &EvalConfig,
) -> ErrorAnalysis {
    let verdicts = gold
        .words()
        .iter()
        .map(|word| {
            let output = encoder
                .encode(&word.word)
                .expect("validated gold words are non-empty");
            classify_error(word, &output, encoder.vocabulary(), cfg)
        })
        .collect();
    ErrorAnalysis::from_verdicts(verdicts)
}

/// Which token set characterizes a vocabulary for fingerprinting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CharSetStrategy {
    /// Inventory prefixes present as bare tokens.
    InventoryPrefixes,
    /// Inventory suffixes present as marked tokens.
    InventorySuffixes,
    /// Every token without the continuation marker.
    AllWordInitial,
    /// Every token carrying the continuation marker.
    AllContinuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("strategy requires a morpheme inventory section that is missing or empty")]
    MissingInventory,
    #[error("cannot compare two empty token sets")]
    EmptyComparison,
}

/// Extract the characteristic token set used to fingerprint a vocabulary.
pub fn extract_characteristic_set(
    vocab: &Vocabulary,
    inventory: Option<&MorphemeInventory>,
    strategy: CharSetStrategy,
    cfg: &EvalConfig,
) -> Result<BTreeSet<String>, TaxonomyError> {
    let marker = cfg.marker();
    match strategy {
        CharSetStrategy::InventoryPrefixes => {
            let prefixes = inventory
                .map(|inv| inv.set(crate::morphology::MorphemeType::Prefix))
                .filter(|s| !s.is_empty())
                .ok_or(TaxonomyError::MissingInventory)?;
            Ok(prefixes
                .iter()
                .filter(|p| vocab.contains(p))
                .cloned()
                .collect())
        }
        CharSetStrategy::InventorySuffixes => {
            let suffixes = inventory
                .map(|inv| inv.set(crate::morphology::MorphemeType::Suffix))
                .filter(|s| !s.is_empty())
                .ok_or(TaxonomyError::MissingInventory)?;
            Ok(suffixes
                .iter()
                .map(|s| {
                    let mut marked = String::from(marker);
                    marked.push_str(s);
                    marked
                })
                .filter(|marked| vocab.contains(marked))
                .collect())
        }
        CharSetStrategy::AllWordInitial => Ok(vocab
            .tokens()
            .iter()
            .filter(|t| !vocab.is_continuation(t))
            .cloned()
            .collect()),
        CharSetStrategy::AllContinuation => Ok(vocab
            .tokens()
            .iter()
            .filter(|t| vocab.is_continuation(t))
            .cloned()
            .collect()),
    }
}

/// Set-similarity scores between two characteristic token sets.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimilarityReport {
    pub set_a_size: usize,
    pub set_b_size: usize,
    pub intersection_size: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Compare two token sets: precision over `a`, recall over `b`, harmonic F1.
/// Swapping the arguments swaps precision and recall.
pub fn compare_token_sets(
    a: &BTreeSet<String>,
    b: &BTreeSet<String>,
) -> Result<SimilarityReport, TaxonomyError> {
    if a.is_empty() && b.is_empty() {
        return Err(TaxonomyError::EmptyComparison);
    }
    let intersection = a.intersection(b).count();
    let prf = Prf::from_counts(intersection as u64, a.len() as u64, b.len() as u64);
    Ok(SimilarityReport {
        set_a_size: a.len(),
        set_b_size: b.len(),
        intersection_size: intersection,
        precision: prf.precision,
        recall: prf.recall,
        f1: prf.f1,
    })
}
