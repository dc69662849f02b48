//! The three morphological-quality criteria: relevance (vocabulary overlap
//! with a morpheme inventory), coherence (how consistently words sharing a
//! morpheme are segmented with a token equal to it), and accuracy (exact
//! match against labeled segmentations).
//!
//! All percentages are kept as exact integer counts internally and rounded
//! half-up to two decimals when the reports are built, so results are
//! bit-identical no matter how the work is sharded.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::config::EvalConfig;
use crate::encode::Encoder;
use crate::morphology::{
    CoherencePair, GoldReading, GoldSegmentations, GoldWord, MorphemeInventory, MorphemeType,
};
use crate::segmentation::Segmentation;
use crate::vocab::Vocabulary;

/// Round a non-negative value half-up to two decimals.
pub fn round2(value: f64) -> f64 {
    debug_assert!(value >= 0.0);
    ((value * 100.0) + 0.5) as i64 as f64 / 100.0
}

/// `100 * n / d` rounded to two decimals; zero when the denominator is zero.
pub fn percent(n: u64, d: u64) -> f64 {
    if d == 0 {
        0.0
    } else {
        round2(100.0 * n as f64 / d as f64)
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Precision / recall / F1 triple, in percent.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    /// Build from raw counts: `matched / predicted` and `matched / relevant`.
    /// F1 is the harmonic mean of the unrounded precision and recall.
    pub fn from_counts(matched: u64, predicted: u64, relevant: u64) -> Self {
        let p = if predicted == 0 {
            0.0
        } else {
            100.0 * matched as f64 / predicted as f64
        };
        let r = if relevant == 0 {
            0.0
        } else {
            100.0 * matched as f64 / relevant as f64
        };
        Prf {
            precision: round2(p),
            recall: round2(r),
            f1: round2(harmonic(p, r)),
        }
    }
}

/// Is the morpheme, in the vocabulary form its type requires, a member of
/// the vocabulary? Prefixes and stems use the bare surface; suffixes and
/// clitics the marked form (plus the bare form when
/// `suffix_match_unmarked` is set).
pub fn morpheme_in_vocabulary(
    morpheme: &str,
    mtype: MorphemeType,
    vocab: &Vocabulary,
    cfg: &EvalConfig,
) -> bool {
    match mtype {
        MorphemeType::Prefix | MorphemeType::Stem => vocab.contains(morpheme),
        MorphemeType::Suffix | MorphemeType::Clitic => {
            let mut marked = String::from(cfg.marker());
            marked.push_str(morpheme);
            vocab.contains(&marked) || (cfg.suffix_match_unmarked && vocab.contains(morpheme))
        }
    }
}

/// Relevance results for one morpheme type.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelevanceRow {
    pub morpheme_type: MorphemeType,
    pub inventory_size: usize,
    pub matched_count: usize,
    /// Inventory morphemes found in the vocabulary, sorted.
    pub matched: BTreeSet<String>,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Morphological relevance of a vocabulary against a morpheme inventory.
/// Precision divides by the full vocabulary size, recall by the inventory
/// section size.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelevanceReport {
    pub vocab_size: usize,
    pub rows: Vec<RelevanceRow>,
    /// Types whose inventory section was empty and therefore not evaluated.
    pub skipped: Vec<MorphemeType>,
}

/// Score every non-empty inventory section against the vocabulary.
pub fn eval_relevance(
    vocab: &Vocabulary,
    inventory: &MorphemeInventory,
    cfg: &EvalConfig,
) -> RelevanceReport {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for mtype in MorphemeType::ALL {
        let section = inventory.set(mtype);
        if section.is_empty() {
            skipped.push(mtype);
            continue;
        }
        let matched: BTreeSet<String> = section
            .iter()
            .filter(|m| morpheme_in_vocabulary(m, mtype, vocab, cfg))
            .cloned()
            .collect();
        let prf = Prf::from_counts(
            matched.len() as u64,
            vocab.len() as u64,
            section.len() as u64,
        );
        rows.push(RelevanceRow {
            morpheme_type: mtype,
            inventory_size: section.len(),
            matched_count: matched.len(),
            matched,
            precision: prf.precision,
            recall: prf.recall,
            f1: prf.f1,
        });
    }
    RelevanceReport {
        vocab_size: vocab.len(),
        rows,
        skipped,
    }
}

/// Outcome of scoring one coherence pair against a segmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CoherenceOutcome {
    /// The word was not segmented at all.
    SingleToken,
    /// Some token equals the morpheme at the position its type requires.
    Recognized,
    /// Segmented, but no token corresponds to the morpheme.
    NotRecognized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("word contains the unknown token; pair excluded from coherence")]
pub struct UnknownInWord;

/// Classify one pair. The segmentation must be the encoder output for
/// `pair.word()`; unknown-containing outputs are rejected so callers can
/// tally them separately.
pub fn classify_pair(
    seg: &Segmentation,
    pair: &CoherencePair,
    cfg: &EvalConfig,
) -> Result<CoherenceOutcome, UnknownInWord> {
    if seg.contains_unknown {
        return Err(UnknownInWord);
    }
    debug_assert_eq!(seg.word, pair.word());
    if seg.tokens.len() == 1 {
        return Ok(CoherenceOutcome::SingleToken);
    }
    let word_chars = seg.word.chars().count();
    let morpheme_chars = pair.morpheme().chars().count();
    let mut start = 0;
    for surface in seg.stripped_tokens(cfg.marker()) {
        let len = surface.chars().count();
        if surface == pair.morpheme() {
            let anchored = match pair.mtype() {
                MorphemeType::Prefix => start == 0,
                MorphemeType::Suffix | MorphemeType::Clitic => {
                    !cfg.anchor_suffixes || start + morpheme_chars == word_chars
                }
                MorphemeType::Stem => true,
            };
            if anchored {
                return Ok(CoherenceOutcome::Recognized);
            }
        }
        start += len;
    }
    Ok(CoherenceOutcome::NotRecognized)
}

/// Raw outcome counts for one morpheme type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CoherenceCounts {
    pub single_token: u64,
    pub recognized: u64,
    pub not_recognized: u64,
    pub excluded_unknown: u64,
}

impl CoherenceCounts {
    /// Pairs that received one of the three outcomes.
    pub fn classified(&self) -> u64 {
        self.single_token + self.recognized + self.not_recognized
    }

    fn absorb(&mut self, other: &CoherenceCounts) {
        self.single_token += other.single_token;
        self.recognized += other.recognized;
        self.not_recognized += other.not_recognized;
        self.excluded_unknown += other.excluded_unknown;
    }
}

/// Order-insensitive accumulator over coherence pairs. Disjoint accumulators
/// merge into the same totals any sharding would produce.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoherenceAccum {
    per_type: [CoherenceCounts; 4],
}

impl CoherenceAccum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Encode the pair's word and record the outcome.
    pub fn observe<E: Encoder + ?Sized>(
        &mut self,
        encoder: &E,
        pair: &CoherencePair,
        cfg: &EvalConfig,
    ) {
        let seg = encoder
            .encode(pair.word())
            .expect("validated pair words are non-empty");
        self.record(pair, &seg, cfg);
    }

    /// Record the outcome for an already-computed segmentation.
    pub fn record(&mut self, pair: &CoherencePair, seg: &Segmentation, cfg: &EvalConfig) {
        let counts = &mut self.per_type[pair.mtype() as usize];
        match classify_pair(seg, pair, cfg) {
            Ok(CoherenceOutcome::SingleToken) => counts.single_token += 1,
            Ok(CoherenceOutcome::Recognized) => counts.recognized += 1,
            Ok(CoherenceOutcome::NotRecognized) => counts.not_recognized += 1,
            Err(UnknownInWord) => counts.excluded_unknown += 1,
        }
    }

    pub fn merge(mut self, other: CoherenceAccum) -> CoherenceAccum {
        for (mine, theirs) in self.per_type.iter_mut().zip(other.per_type.iter()) {
            mine.absorb(theirs);
        }
        self
    }

    pub fn counts(&self, mtype: MorphemeType) -> &CoherenceCounts {
        &self.per_type[mtype as usize]
    }

    pub fn into_report(self) -> CoherenceReport {
        let mut rows = Vec::new();
        let mut totals = CoherenceCounts::default();
        for mtype in MorphemeType::ALL {
            let counts = self.per_type[mtype as usize];
            totals.absorb(&counts);
            if counts.classified() + counts.excluded_unknown > 0 {
                rows.push(CoherenceRow {
                    morpheme_type: Some(mtype),
                    stats: CoherenceStats::from_counts(&counts),
                });
            }
        }
        CoherenceReport {
            rows,
            totals: CoherenceRow {
                morpheme_type: None,
                stats: CoherenceStats::from_counts(&totals),
            },
        }
    }
}

/// Counts plus derived percentages for one report row. The three
/// percentages are taken over the classified pairs and sum to 100 within
/// rounding.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherenceStats {
    /// Pairs classified into one of the three outcomes.
    pub n_pairs: u64,
    pub single_token: u64,
    pub recognized: u64,
    pub not_recognized: u64,
    /// Pairs whose word segments to the unknown token, excluded from the
    /// percentages.
    pub excluded_unknown: u64,
    pub pct_single_token: f64,
    pub pct_recognized: f64,
    pub pct_not_recognized: f64,
}

impl CoherenceStats {
    pub fn from_counts(counts: &CoherenceCounts) -> Self {
        let n = counts.classified();
        CoherenceStats {
            n_pairs: n,
            single_token: counts.single_token,
            recognized: counts.recognized,
            not_recognized: counts.not_recognized,
            excluded_unknown: counts.excluded_unknown,
            pct_single_token: percent(counts.single_token, n),
            pct_recognized: percent(counts.recognized, n),
            pct_not_recognized: percent(counts.not_recognized, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherenceRow {
    /// `None` on the totals row.
    pub morpheme_type: Option<MorphemeType>,
    pub stats: CoherenceStats,
}

/// Morphological coherence per type plus a pair-count-weighted totals row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherenceReport {
    pub rows: Vec<CoherenceRow>,
    pub totals: CoherenceRow,
}

/// Segment every pair's word and tally the three coherence measures per
/// morpheme type.
pub fn eval_coherence<E: Encoder + ?Sized>(
    encoder: &E,
    pairs: &[CoherencePair],
    cfg: &EvalConfig,
) -> CoherenceReport {
    let mut accum = CoherenceAccum::new();
    for pair in pairs {
        accum.observe(encoder, pair, cfg);
    }
    accum.into_report()
}

/// Per-word accuracy evidence.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WordResult {
    pub word: String,
    pub output: Segmentation,
    /// The first gold reading the stripped output matches, if any.
    pub matched: Option<GoldReading>,
}

impl WordResult {
    /// Tokens contributed to the mean; unknown-containing outputs count as
    /// a single token.
    pub fn effective_tokens(&self) -> u64 {
        if self.output.contains_unknown {
            1
        } else {
            self.output.tokens.len() as u64
        }
    }

    pub fn is_correct(&self) -> bool {
        self.matched.is_some()
    }
}

/// Segment one gold word and look for a matching reading.
pub fn accuracy_word_result<E: Encoder + ?Sized>(
    encoder: &E,
    gold: &GoldWord,
    cfg: &EvalConfig,
) -> WordResult {
    let output = encoder
        .encode(&gold.word)
        .expect("validated gold words are non-empty");
    let matched = if output.contains_unknown {
        None
    } else {
        let stripped = output.stripped_tokens(cfg.marker());
        gold.readings
            .iter()
            .find(|reading| {
                reading.morphemes.len() == stripped.len()
                    && reading.morphemes.iter().zip(&stripped).all(|(m, s)| m == s)
            })
            .cloned()
    };
    WordResult {
        word: gold.word.clone(),
        output,
        matched,
    }
}

/// Morphological accuracy: the share of words whose stripped token sequence
/// equals one of their gold readings.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AccuracyReport {
    pub n_words: usize,
    pub n_correct: usize,
    pub accuracy: f64,
    pub mean_tokens_per_word: f64,
    pub per_word: Vec<WordResult>,
}

impl AccuracyReport {
    pub fn from_results(per_word: Vec<WordResult>) -> Self {
        let n_words = per_word.len();
        let n_correct = per_word.iter().filter(|r| r.is_correct()).count();
        let token_sum: u64 = per_word.iter().map(WordResult::effective_tokens).sum();
        let mean = if n_words == 0 {
            0.0
        } else {
            round2(token_sum as f64 / n_words as f64)
        };
        AccuracyReport {
            n_words,
            n_correct,
            accuracy: percent(n_correct as u64, n_words as u64),
            mean_tokens_per_word: mean,
            per_word,
        }
    }
}

/// Segment every gold word and score exact-match accuracy.
pub fn eval_accuracy<E: Encoder + ?Sized>(
    encoder: &E,
    gold: &GoldSegmentations,
    cfg: &EvalConfig,
) -> AccuracyReport {
    let results = gold
        .words()
        .iter()
        .map(|word| accuracy_word_result(encoder, word, cfg))
        .collect();
    AccuracyReport::from_results(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NormalizationConfig;
    use crate::encode::WordpieceEncoder;
    use alloc::string::ToString;
    use alloc::vec;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn vocab(tokens: &[&str]) -> Vocabulary {
        Vocabulary::new(tokens.iter().copied(), "##").unwrap()
    }

    fn wordpiece(tokens: &[&str]) -> WordpieceEncoder {
        WordpieceEncoder::new(vocab(tokens), NormalizationConfig::default()).unwrap()
    }

    fn seg(word: &str, tokens: &[&str], unknown: bool) -> Segmentation {
        Segmentation {
            word: word.to_string(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            contains_unknown: unknown,
        }
    }

    fn pair(word: &str, morpheme: &str, mtype: MorphemeType) -> CoherencePair {
        CoherencePair::new(word, morpheme, mtype, &NormalizationConfig::default()).unwrap()
    }

    #[allow(clippy::type_complexity)]
    fn gold(entries: &[(&str, &[(&str, &[&str])])]) -> GoldSegmentations {
        GoldSegmentations::new(
            entries.iter().map(|(w, rs)| {
                (
                    *w,
                    rs.iter()
                        .map(|(pos, ms)| (*pos, ms.to_vec()))
                        .collect::<Vec<_>>(),
                )
            }),
            &NormalizationConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn rounding_is_half_up_to_two_decimals() {
        assert_eq!(round2(66.666_666), 66.67);
        assert_eq!(round2(0.375), 0.38);
        assert_eq!(round2(0.0), 0.0);
        assert_eq!(percent(2, 3), 66.67);
        assert_eq!(percent(1, 0), 0.0);
    }

    #[test]
    fn membership_uses_positional_forms() {
        let v = vocab(&["des", "##ción", "pobla", "población"]);
        let c = cfg();
        assert!(morpheme_in_vocabulary("ción", MorphemeType::Suffix, &v, &c));
        assert!(morpheme_in_vocabulary("des", MorphemeType::Prefix, &v, &c));
        assert!(!morpheme_in_vocabulary("pobl", MorphemeType::Stem, &v, &c));
        assert!(!morpheme_in_vocabulary("des", MorphemeType::Suffix, &v, &c));
    }

    #[test]
    fn membership_unmarked_flag_accepts_bare_suffixes() {
        let v = vocab(&["ción"]);
        let mut c = cfg();
        assert!(!morpheme_in_vocabulary("ción", MorphemeType::Suffix, &v, &c));
        c.suffix_match_unmarked = true;
        assert!(morpheme_in_vocabulary("ción", MorphemeType::Suffix, &v, &c));
    }

    #[test]
    fn relevance_toy_vocabulary() {
        let v = vocab(&["casa", "##s", "des", "##ción", "re", "pobla", "##x", "cas"]);
        let inv = MorphemeInventory::new(
            vec!["des", "re"],
            vec!["ción", "s"],
            vec!["cas", "pobl"],
            Vec::<&str>::new(),
            &NormalizationConfig::default(),
        )
        .unwrap();
        let report = eval_relevance(&v, &inv, &cfg());
        assert_eq!(report.vocab_size, 8);
        assert_eq!(report.skipped, vec![MorphemeType::Clitic]);

        let by_type =
            |t: MorphemeType| report.rows.iter().find(|r| r.morpheme_type == t).unwrap();
        let prefixes = by_type(MorphemeType::Prefix);
        assert_eq!(
            (prefixes.precision, prefixes.recall, prefixes.f1),
            (25.00, 100.00, 40.00)
        );
        let suffixes = by_type(MorphemeType::Suffix);
        assert_eq!(
            (suffixes.precision, suffixes.recall, suffixes.f1),
            (25.00, 100.00, 40.00)
        );
        let stems = by_type(MorphemeType::Stem);
        assert_eq!(
            (stems.precision, stems.recall, stems.f1),
            (12.50, 50.00, 20.00)
        );
        assert!(stems.matched.contains("cas"));
        assert_eq!(stems.matched_count, 1);
    }

    #[test]
    fn relevance_identity_vocabulary() {
        let v = vocab(&["des", "re"]);
        let inv = MorphemeInventory::new(
            vec!["des", "re"],
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            &NormalizationConfig::default(),
        )
        .unwrap();
        let report = eval_relevance(&v, &inv, &cfg());
        let row = &report.rows[0];
        assert_eq!((row.precision, row.recall, row.f1), (100.00, 100.00, 100.00));
    }

    #[test]
    fn relevance_unmatched_token_lowers_precision_only() {
        let inv = MorphemeInventory::new(
            vec!["des", "re"],
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            Vec::<&str>::new(),
            &NormalizationConfig::default(),
        )
        .unwrap();
        let small = eval_relevance(&vocab(&["des", "re"]), &inv, &cfg());
        let padded = eval_relevance(&vocab(&["des", "re", "zzz"]), &inv, &cfg());
        assert!(padded.rows[0].precision < small.rows[0].precision);
        assert_eq!(padded.rows[0].recall, small.rows[0].recall);
    }

    #[test]
    fn classify_pair_anchors_by_type() {
        let s = seg("casas", &["casa", "##s"], false);
        assert_eq!(
            classify_pair(&s, &pair("casas", "s", MorphemeType::Suffix), &cfg()),
            Ok(CoherenceOutcome::Recognized)
        );
        assert_eq!(
            classify_pair(&s, &pair("casas", "cas", MorphemeType::Stem), &cfg()),
            Ok(CoherenceOutcome::NotRecognized)
        );
        assert_eq!(
            classify_pair(
                &seg("casas", &["casas"], false),
                &pair("casas", "s", MorphemeType::Suffix),
                &cfg()
            ),
            Ok(CoherenceOutcome::SingleToken)
        );
    }

    #[test]
    fn classify_pair_suffix_anchoring_flag() {
        // "sos" ends in "s", but the emitted "s" token sits at the word
        // start. Anchored scoring rejects it; unanchored accepts it.
        let s = seg("sos", &["s", "##os"], false);
        let p = pair("sos", "s", MorphemeType::Suffix);
        assert_eq!(
            classify_pair(&s, &p, &cfg()),
            Ok(CoherenceOutcome::NotRecognized)
        );
        let mut unanchored = cfg();
        unanchored.anchor_suffixes = false;
        assert_eq!(
            classify_pair(&s, &p, &unanchored),
            Ok(CoherenceOutcome::Recognized)
        );
    }

    #[test]
    fn classify_pair_stem_matches_any_span() {
        let s = seg("sano", &["sa", "##no"], false);
        let p = pair("sano", "sa", MorphemeType::Stem);
        assert_eq!(classify_pair(&s, &p, &cfg()), Ok(CoherenceOutcome::Recognized));
    }

    #[test]
    fn classify_pair_prefix_must_start_word() {
        let s = seg("rere", &["re", "##re"], false);
        let p = pair("rere", "re", MorphemeType::Prefix);
        assert_eq!(classify_pair(&s, &p, &cfg()), Ok(CoherenceOutcome::Recognized));
    }

    #[test]
    fn classify_pair_excludes_unknown() {
        let s = seg("ñañas", &["[UNK]"], true);
        let p = pair("ñañas", "s", MorphemeType::Suffix);
        assert_eq!(classify_pair(&s, &p, &cfg()), Err(UnknownInWord));
    }

    #[test]
    fn coherence_counts_by_hand() {
        // Four stem pairs: outcomes S, R, R, N -> 25 / 50 / 25.
        let c = cfg();
        let mut accum = CoherenceAccum::new();
        let records = [
            (
                seg("casa", &["casa"], false),
                pair("casa", "cas", MorphemeType::Stem),
            ),
            (
                seg("casas", &["cas", "##as"], false),
                pair("casas", "cas", MorphemeType::Stem),
            ),
            (
                seg("cascos", &["cas", "##cos"], false),
                pair("cascos", "cas", MorphemeType::Stem),
            ),
            (
                seg("caseta", &["case", "##ta"], false),
                pair("caseta", "cas", MorphemeType::Stem),
            ),
        ];
        for (s, p) in &records {
            accum.record(p, s, &c);
        }
        let report = accum.into_report();
        let row = &report.rows[0];
        assert_eq!(row.morpheme_type, Some(MorphemeType::Stem));
        assert_eq!(row.stats.n_pairs, 4);
        assert_eq!(
            (
                row.stats.pct_single_token,
                row.stats.pct_recognized,
                row.stats.pct_not_recognized
            ),
            (25.00, 50.00, 25.00)
        );
    }

    #[test]
    fn coherence_never_splitting_encoder_is_all_single() {
        let enc = wordpiece(&["[UNK]", "casas", "perros"]);
        let pairs = vec![
            pair("casas", "s", MorphemeType::Suffix),
            pair("perros", "s", MorphemeType::Suffix),
        ];
        let report = eval_coherence(&enc, &pairs, &cfg());
        assert_eq!(report.rows[0].stats.pct_single_token, 100.00);
        assert_eq!(report.totals.stats.n_pairs, 2);
    }

    #[test]
    fn coherence_totals_weight_by_pair_count() {
        let c = cfg();
        let mut accum = CoherenceAccum::new();
        accum.record(
            &pair("casas", "s", MorphemeType::Suffix),
            &seg("casas", &["casa", "##s"], false),
            &c,
        );
        accum.record(
            &pair("redo", "re", MorphemeType::Prefix),
            &seg("redo", &["redo"], false),
            &c,
        );
        accum.record(
            &pair("ñus", "s", MorphemeType::Suffix),
            &seg("ñus", &["[UNK]"], true),
            &c,
        );
        let report = accum.into_report();
        assert_eq!(report.totals.stats.n_pairs, 2);
        assert_eq!(report.totals.stats.excluded_unknown, 1);
        assert_eq!(report.totals.stats.pct_single_token, 50.00);
        assert_eq!(report.totals.stats.pct_recognized, 50.00);
    }

    #[test]
    fn coherence_accum_merge_matches_sequential() {
        let c = cfg();
        let pairs = [
            (seg("casas", &["casa", "##s"], false), pair("casas", "s", MorphemeType::Suffix)),
            (seg("redo", &["redo"], false), pair("redo", "re", MorphemeType::Prefix)),
            (seg("dilo", &["di", "##lo"], false), pair("dilo", "lo", MorphemeType::Clitic)),
        ];
        let mut all = CoherenceAccum::new();
        for (s, p) in &pairs {
            all.record(p, s, &c);
        }
        let mut left = CoherenceAccum::new();
        left.record(&pairs[0].1, &pairs[0].0, &c);
        let mut right = CoherenceAccum::new();
        right.record(&pairs[1].1, &pairs[1].0, &c);
        right.record(&pairs[2].1, &pairs[2].0, &c);
        assert_eq!(left.merge(right), all);
    }

    #[test]
    fn accuracy_element_wise_comparison() {
        let g = gold(&[("casas", &[("NOUN", &["cas", "a", "s"])])]);

        let report = eval_accuracy(&wordpiece(&["[UNK]", "casa", "##s"]), &g, &cfg());
        assert_eq!(report.n_correct, 0);
        assert_eq!(report.accuracy, 0.0);

        let report = eval_accuracy(&wordpiece(&["[UNK]", "cas", "##a", "##s"]), &g, &cfg());
        assert_eq!(report.n_correct, 1);
        assert_eq!(report.accuracy, 100.00);
        assert_eq!(report.per_word[0].matched.as_ref().unwrap().pos, "NOUN");
    }

    #[test]
    fn accuracy_any_reading_counts() {
        let g = gold(&[("bajo", &[("ADP", &["bajo"]), ("ADJ", &["baj", "o"])])]);
        let report = eval_accuracy(&wordpiece(&["[UNK]", "baj", "##o"]), &g, &cfg());
        assert_eq!(report.n_correct, 1);
        assert_eq!(report.per_word[0].matched.as_ref().unwrap().pos, "ADJ");
    }

    #[test]
    fn accuracy_unknown_counts_as_one_incorrect_token() {
        let g = gold(&[
            ("ñus", &[("NOUN", &["ñu", "s"])]),
            ("sol", &[("NOUN", &["sol"])]),
        ]);
        let report = eval_accuracy(&wordpiece(&["[UNK]", "sol"]), &g, &cfg());
        assert_eq!(report.n_words, 2);
        assert_eq!(report.n_correct, 1);
        assert_eq!(report.accuracy, 50.00);
        assert_eq!(report.mean_tokens_per_word, 1.00);
    }

    #[test]
    fn mean_tokens_per_word_averages_output_lengths() {
        let g = gold(&[
            ("casas", &[("NOUN", &["cas", "a", "s"])]),
            ("sol", &[("NOUN", &["sol"])]),
        ]);
        let report = eval_accuracy(&wordpiece(&["[UNK]", "cas", "##a", "##s", "sol"]), &g, &cfg());
        // (3 + 1) / 2
        assert_eq!(report.mean_tokens_per_word, 2.00);
    }

    #[test]
    fn f1_sits_between_precision_and_recall() {
        let prf = Prf::from_counts(2, 8, 2);
        assert!(prf.f1 >= prf.precision.min(prf.recall));
        assert!(prf.f1 <= prf.precision.max(prf.recall));
    }
}
