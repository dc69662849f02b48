//! Gold morphological data: inventories, word/morpheme pairs, and labeled
//! segmentations.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::NormalizationConfig;
use crate::normalize::{normalize, NormalizeError};

/// The four morpheme categories carried by every dataset row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum MorphemeType {
    Prefix,
    Suffix,
    Stem,
    Clitic,
}

impl MorphemeType {
    pub const ALL: [MorphemeType; 4] = [
        MorphemeType::Prefix,
        MorphemeType::Suffix,
        MorphemeType::Stem,
        MorphemeType::Clitic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MorphemeType::Prefix => "prefix",
            MorphemeType::Suffix => "suffix",
            MorphemeType::Stem => "stem",
            MorphemeType::Clitic => "clitic",
        }
    }

    /// Display label for report tables.
    pub fn plural_label(self) -> &'static str {
        match self {
            MorphemeType::Prefix => "Prefixes",
            MorphemeType::Suffix => "Suffixes",
            MorphemeType::Stem => "Stems",
            MorphemeType::Clitic => "Clitics",
        }
    }
}

impl core::str::FromStr for MorphemeType {
    type Err = UnknownMorphemeType;

    fn from_str(s: &str) -> Result<Self, UnknownMorphemeType> {
        match s {
            "prefix" => Ok(MorphemeType::Prefix),
            "suffix" => Ok(MorphemeType::Suffix),
            "stem" => Ok(MorphemeType::Stem),
            "clitic" => Ok(MorphemeType::Clitic),
            _ => Err(UnknownMorphemeType(String::from(s))),
        }
    }
}

impl core::fmt::Display for MorphemeType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown morpheme type {0:?}")]
pub struct UnknownMorphemeType(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("empty entry in {section}")]
    EmptyEntry { section: &'static str },
    #[error("{section} entry {entry:?} contains the continuation marker")]
    MarkerInEntry { section: &'static str, entry: String },
    #[error("morpheme {morpheme:?} does not occur in {word:?} at the position required by type {mtype}")]
    PositionMismatch {
        word: String,
        morpheme: String,
        mtype: MorphemeType,
    },
    #[error("word {word:?} has no readings")]
    NoReadings { word: String },
    #[error("reading {pos:?} of {word:?} is empty")]
    EmptyReading { word: String, pos: String },
    #[error("reading {pos:?} of {word:?} concatenates to {concat:?}, not the word itself")]
    ConcatMismatch {
        word: String,
        pos: String,
        concat: String,
    },
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// The morpheme lists a vocabulary is scored against for relevance, keyed by
/// type. The clitic section is optional and may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphemeInventory {
    prefixes: BTreeSet<String>,
    suffixes: BTreeSet<String>,
    stems: BTreeSet<String>,
    clitics: BTreeSet<String>,
}

impl MorphemeInventory {
    /// Build an inventory, normalizing every entry. Entries must be
    /// non-empty and marker-free; duplicates collapse silently.
    pub fn new<I, J, K, L, S>(
        prefixes: I,
        suffixes: J,
        stems: K,
        clitics: L,
        cfg: &NormalizationConfig,
    ) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = S>,
        K: IntoIterator<Item = S>,
        L: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        fn section<S: AsRef<str>>(
            entries: impl IntoIterator<Item = S>,
            name: &'static str,
            cfg: &NormalizationConfig,
        ) -> Result<BTreeSet<String>, DatasetError> {
            let mut out = BTreeSet::new();
            for entry in entries {
                let entry = normalize(entry.as_ref(), cfg)
                    .map_err(|_| DatasetError::EmptyEntry { section: name })?;
                if entry.contains(cfg.marker()) {
                    return Err(DatasetError::MarkerInEntry {
                        section: name,
                        entry,
                    });
                }
                out.insert(entry);
            }
            Ok(out)
        }

        Ok(Self {
            prefixes: section(prefixes, "prefixes", cfg)?,
            suffixes: section(suffixes, "suffixes", cfg)?,
            stems: section(stems, "stems", cfg)?,
            clitics: section(clitics, "clitics", cfg)?,
        })
    }

    pub fn set(&self, mtype: MorphemeType) -> &BTreeSet<String> {
        match mtype {
            MorphemeType::Prefix => &self.prefixes,
            MorphemeType::Suffix => &self.suffixes,
            MorphemeType::Stem => &self.stems,
            MorphemeType::Clitic => &self.clitics,
        }
    }

    /// Total entries across all sections.
    pub fn len(&self) -> usize {
        MorphemeType::ALL.iter().map(|t| self.set(*t).len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One coherence-dataset row: a word known to contain `morpheme` of the
/// given type at the position the type requires.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherencePair {
    word: String,
    morpheme: String,
    mtype: MorphemeType,
}

impl CoherencePair {
    /// Normalize and validate a row. Prefixes must be word-initial, suffixes
    /// and clitics word-final; stems may occur anywhere (they can follow a
    /// prefix).
    pub fn new(
        word: &str,
        morpheme: &str,
        mtype: MorphemeType,
        cfg: &NormalizationConfig,
    ) -> Result<Self, DatasetError> {
        let word = normalize(word, cfg)?;
        let morpheme = normalize(morpheme, cfg)?;
        if morpheme.contains(cfg.marker()) {
            return Err(DatasetError::MarkerInEntry {
                section: "coherence pairs",
                entry: morpheme,
            });
        }
        let positioned = match mtype {
            MorphemeType::Prefix => word.starts_with(morpheme.as_str()),
            MorphemeType::Suffix | MorphemeType::Clitic => word.ends_with(morpheme.as_str()),
            MorphemeType::Stem => word.contains(morpheme.as_str()),
        };
        if !positioned {
            return Err(DatasetError::PositionMismatch {
                word,
                morpheme,
                mtype,
            });
        }
        Ok(Self {
            word,
            morpheme,
            mtype,
        })
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn morpheme(&self) -> &str {
        &self.morpheme
    }

    pub fn mtype(&self) -> MorphemeType {
        self.mtype
    }
}

/// One accuracy-dataset reading: the morpheme sequence of a word under a
/// part-of-speech tag.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GoldReading {
    pub pos: String,
    pub morphemes: Vec<String>,
}

/// A word with its gold readings, in dataset order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GoldWord {
    pub word: String,
    pub readings: Vec<GoldReading>,
}

/// The accuracy dataset: words mapped to their labeled morpheme sequences,
/// one sequence per part-of-speech reading.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldSegmentations {
    words: Vec<GoldWord>,
}

impl GoldSegmentations {
    /// Normalize and validate the dataset: every reading must be non-empty
    /// and concatenate exactly to the normalized word. Part-of-speech tags
    /// are labels, not text, and are kept verbatim.
    pub fn new<I, R, S, M>(entries: I, cfg: &NormalizationConfig) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = (S, R)>,
        R: IntoIterator<Item = (S, M)>,
        M: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut words = Vec::new();
        for (word, readings) in entries {
            let word = normalize(word.as_ref(), cfg)?;
            let mut gold = GoldWord {
                word: word.clone(),
                readings: Vec::new(),
            };
            for (pos, morphemes) in readings {
                let pos = String::from(pos.as_ref());
                let mut normalized = Vec::new();
                for m in morphemes {
                    normalized.push(normalize(m.as_ref(), cfg).map_err(|_| {
                        DatasetError::EmptyReading {
                            word: word.clone(),
                            pos: pos.clone(),
                        }
                    })?);
                }
                if normalized.is_empty() {
                    return Err(DatasetError::EmptyReading { word, pos });
                }
                let concat: String = normalized.concat();
                if concat != word {
                    return Err(DatasetError::ConcatMismatch { word, pos, concat });
                }
                gold.readings.push(GoldReading {
                    pos,
                    morphemes: normalized,
                });
            }
            if gold.readings.is_empty() {
                return Err(DatasetError::NoReadings { word });
            }
            words.push(gold);
        }
        Ok(Self { words })
    }

    pub fn words(&self) -> &[GoldWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg() -> NormalizationConfig {
        NormalizationConfig::default()
    }

    #[test]
    fn inventory_deduplicates_and_normalizes() {
        let inv = MorphemeInventory::new(
            vec!["des", "re", "RE"],
            vec!["ción", "s"],
            vec!["cas", "pobl"],
            Vec::<&str>::new(),
            &cfg(),
        )
        .unwrap();
        assert_eq!(inv.set(MorphemeType::Prefix).len(), 2);
        assert_eq!(inv.set(MorphemeType::Suffix).len(), 2);
        assert!(inv.set(MorphemeType::Clitic).is_empty());
        assert!(inv.set(MorphemeType::Suffix).contains("ción"));
    }

    #[test]
    fn inventory_rejects_marker_entries() {
        let err = MorphemeInventory::new(
            vec!["##des"],
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, DatasetError::MarkerInEntry { .. }));
    }

    #[test]
    fn coherence_pair_accepts_word_final_suffix() {
        let pair = CoherencePair::new("fijación", "ción", MorphemeType::Suffix, &cfg()).unwrap();
        assert_eq!(pair.word(), "fijación");
        assert_eq!(pair.morpheme(), "ción");
    }

    #[test]
    fn coherence_pair_rejects_misplaced_prefix() {
        let err = CoherencePair::new("fijación", "re", MorphemeType::Prefix, &cfg()).unwrap_err();
        assert!(matches!(err, DatasetError::PositionMismatch { .. }));
    }

    #[test]
    fn coherence_pair_stem_may_sit_anywhere() {
        assert!(CoherencePair::new("remodelación", "model", MorphemeType::Stem, &cfg()).is_ok());
        assert!(CoherencePair::new("dilo", "lo", MorphemeType::Clitic, &cfg()).is_ok());
    }

    #[test]
    fn gold_segmentations_validate_concatenation() {
        let gold = GoldSegmentations::new(
            vec![("camiones", vec![("NOUN", vec!["camion", "es"])])],
            &cfg(),
        )
        .unwrap();
        assert_eq!(gold.len(), 1);
        assert_eq!(gold.words()[0].readings[0].pos, "NOUN");

        let err = GoldSegmentations::new(
            vec![("camiones", vec![("NOUN", vec!["cami", "es"])])],
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, DatasetError::ConcatMismatch { .. }));
    }

    #[test]
    fn gold_segmentations_reject_empty_readings() {
        let err = GoldSegmentations::new(
            vec![("casas", vec![("NOUN", Vec::<&str>::new())])],
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, DatasetError::EmptyReading { .. }));

        let err = GoldSegmentations::new(
            vec![("casas", Vec::<(&str, Vec<&str>)>::new())],
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, DatasetError::NoReadings { .. }));
    }

    #[test]
    fn morpheme_type_parses_labels() {
        assert_eq!("prefix".parse::<MorphemeType>(), Ok(MorphemeType::Prefix));
        assert_eq!("clitic".parse::<MorphemeType>(), Ok(MorphemeType::Clitic));
        assert!("root".parse::<MorphemeType>().is_err());
    }
}
