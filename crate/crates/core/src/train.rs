//! Greedy agglomerative vocabulary training.
//!
//! Both trainers share one loop: split every distinct corpus word into
//! positional character symbols, repeatedly pick the best adjacent pair,
//! merge it everywhere, and add the merged token to the vocabulary. They
//! differ only in how "best" is scored: raw pair frequency, or pair
//! frequency divided by the product of the part frequencies.
//!
//! Pair statistics are maintained incrementally — only words containing the
//! merged pair are touched per round — which keeps training roughly linear
//! in corpus size instead of quadratic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use thiserror::Error;

use crate::config::{ConfigError, NormalizationConfig};
use crate::normalize::{normalize, split_words};
use crate::vocab::{Vocabulary, VocabularyError};

/// Training settings. `special_tokens` occupy the first vocabulary ids.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainerConfig {
    pub target_vocab_size: usize,
    /// Pairs seen fewer times than this are never merged.
    pub min_pair_frequency: u64,
    pub normalization: NormalizationConfig,
    pub special_tokens: Vec<String>,
}

impl TrainerConfig {
    pub fn new(target_vocab_size: usize) -> Self {
        let normalization = NormalizationConfig::default();
        let special_tokens = alloc::vec![normalization.unknown_token.clone()];
        Self {
            target_vocab_size,
            min_pair_frequency: 2,
            normalization,
            special_tokens,
        }
    }
}

/// The ordered merge rules learned by BPE training, highest priority first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeTable {
    merges: Vec<(String, String)>,
}

impl MergeTable {
    pub fn new(merges: Vec<(String, String)>) -> Result<Self, MergeTableError> {
        let mut seen = HashSet::with_capacity(merges.len());
        for (index, pair) in merges.iter().enumerate() {
            if !seen.insert(pair.clone()) {
                return Err(MergeTableError::DuplicatePair {
                    index,
                    left: pair.0.clone(),
                    right: pair.1.clone(),
                });
            }
        }
        Ok(Self { merges })
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, String)> {
        self.merges.iter()
    }

    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeTableError {
    #[error("duplicate merge pair ({left:?}, {right:?}) at index {index}")]
    DuplicatePair {
        index: usize,
        left: String,
        right: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrainError {
    #[error("corpus contains no words after normalization")]
    EmptyCorpus,
    #[error("target vocabulary size {target} cannot hold the {required} alphabet and special tokens")]
    VocabTooSmall { target: usize, required: usize },
    #[error("duplicate special token {token:?}")]
    DuplicateSpecial { token: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Vocabulary(#[from] VocabularyError),
}

/// Train a byte-pair-encoding vocabulary: merges are chosen by descending
/// pair frequency with a lexicographic tie-break on the pair surfaces.
pub fn train_bpe<I, S>(corpus: I, cfg: &TrainerConfig) -> Result<(Vocabulary, MergeTable), TrainError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    Trainer::run(corpus, cfg, Objective::Frequency)
}

/// Train a Wordpiece vocabulary: merges maximize
/// `freq(pair) / (freq(left) * freq(right))`, same tie-break. Only the
/// vocabulary is returned; greedy longest-match encoding needs no merge
/// table.
pub fn train_wordpiece<I, S>(corpus: I, cfg: &TrainerConfig) -> Result<Vocabulary, TrainError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    Trainer::run(corpus, cfg, Objective::Likelihood).map(|(vocab, _)| vocab)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Frequency,
    Likelihood,
}

type Pair = (u32, u32);

struct TrainWord {
    syms: Vec<u32>,
    count: u64,
}

struct Trainer {
    tokens: Vec<String>,
    by_token: HashMap<String, u32>,
    words: Vec<TrainWord>,
    pair_counts: HashMap<Pair, u64>,
    pair_words: HashMap<Pair, HashSet<usize>>,
    sym_counts: Vec<u64>,
    merges: Vec<(String, String)>,
    merged: HashSet<Pair>,
}

impl Trainer {
    fn run<I, S>(
        corpus: I,
        cfg: &TrainerConfig,
        objective: Objective,
    ) -> Result<(Vocabulary, MergeTable), TrainError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        cfg.normalization.validate()?;
        let min_frequency = cfg.min_pair_frequency.max(1);
        let marker = cfg.normalization.marker();

        // Distinct words with counts; BTreeMap keeps the setup deterministic.
        let mut word_counts: BTreeMap<String, u64> = BTreeMap::new();
        for sentence in corpus {
            let sentence = sentence.as_ref();
            if sentence.trim().is_empty() {
                continue;
            }
            let normalized = normalize(sentence, &cfg.normalization)
                .expect("non-blank sentence normalizes");
            for word in split_words(&normalized) {
                *word_counts.entry(word.to_string()).or_insert(0) += 1;
            }
        }
        if word_counts.is_empty() {
            return Err(TrainError::EmptyCorpus);
        }

        let mut trainer = Self {
            tokens: Vec::new(),
            by_token: HashMap::new(),
            words: Vec::new(),
            pair_counts: HashMap::new(),
            pair_words: HashMap::new(),
            sym_counts: Vec::new(),
            merges: Vec::new(),
            merged: HashSet::new(),
        };

        for special in &cfg.special_tokens {
            if trainer.by_token.contains_key(special) {
                return Err(TrainError::DuplicateSpecial {
                    token: special.clone(),
                });
            }
            trainer.push_token(special.clone());
        }

        // Alphabet: word-initial characters bare, continuations marked.
        let mut alphabet: BTreeSet<String> = BTreeSet::new();
        for word in word_counts.keys() {
            for (i, c) in word.chars().enumerate() {
                let mut sym = String::new();
                if i > 0 {
                    sym.push_str(marker);
                }
                sym.push(c);
                alphabet.insert(sym);
            }
        }
        for sym in &alphabet {
            trainer.intern(sym);
        }

        let required = trainer.tokens.len();
        if cfg.target_vocab_size <= required {
            return Err(TrainError::VocabTooSmall {
                target: cfg.target_vocab_size,
                required,
            });
        }

        for (word, count) in &word_counts {
            let syms: Vec<u32> = word
                .chars()
                .enumerate()
                .map(|(i, c)| {
                    let mut sym = String::new();
                    if i > 0 {
                        sym.push_str(marker);
                    }
                    sym.push(c);
                    trainer.by_token[&sym]
                })
                .collect();
            trainer.words.push(TrainWord {
                syms,
                count: *count,
            });
        }

        for wi in 0..trainer.words.len() {
            trainer.add_word_stats(wi);
        }

        while trainer.tokens.len() < cfg.target_vocab_size {
            let Some(pair) = trainer.select(objective, min_frequency) else {
                break;
            };
            trainer.apply_merge(pair, marker);
        }

        let merges = trainer
            .merges
            .iter()
            .map(|(l, r)| (l.clone(), r.clone()))
            .collect();
        let vocab = Vocabulary::new(trainer.tokens, marker)?;
        let merges = MergeTable::new(merges).expect("selection never repeats a pair");
        Ok((vocab, merges))
    }

    fn push_token(&mut self, token: String) -> u32 {
        let id = self.tokens.len() as u32;
        self.by_token.insert(token.clone(), id);
        self.tokens.push(token);
        self.sym_counts.push(0);
        id
    }

    fn intern(&mut self, token: &str) -> u32 {
        match self.by_token.get(token) {
            Some(&id) => id,
            None => self.push_token(token.to_string()),
        }
    }

    fn add_word_stats(&mut self, wi: usize) {
        let count = self.words[wi].count;
        let syms = &self.words[wi].syms;
        for &s in syms {
            self.sym_counts[s as usize] += count;
        }
        for win in syms.windows(2) {
            let pair = (win[0], win[1]);
            *self.pair_counts.entry(pair).or_insert(0) += count;
            self.pair_words.entry(pair).or_default().insert(wi);
        }
    }

    fn remove_word_stats(&mut self, wi: usize, syms: &[u32]) {
        let count = self.words[wi].count;
        for &s in syms {
            self.sym_counts[s as usize] -= count;
        }
        for win in syms.windows(2) {
            let pair = (win[0], win[1]);
            if let Some(c) = self.pair_counts.get_mut(&pair) {
                *c -= count;
                if *c == 0 {
                    self.pair_counts.remove(&pair);
                }
            }
            if let Some(set) = self.pair_words.get_mut(&pair) {
                set.remove(&wi);
                if set.is_empty() {
                    self.pair_words.remove(&pair);
                }
            }
        }
    }

    /// Pick the best mergeable pair, or `None` when training is saturated.
    /// The comparison is a total order, so the result does not depend on
    /// hash-map iteration order.
    fn select(&self, objective: Objective, min_frequency: u64) -> Option<Pair> {
        let mut best: Option<(Pair, u64)> = None;
        for (&pair, &count) in &self.pair_counts {
            if count < min_frequency || self.merged.contains(&pair) {
                continue;
            }
            let Some((best_pair, best_count)) = best else {
                best = Some((pair, count));
                continue;
            };
            if self.beats(objective, (pair, count), (best_pair, best_count)) {
                best = Some((pair, count));
            }
        }
        best.map(|(pair, _)| pair)
    }

    fn beats(&self, objective: Objective, a: (Pair, u64), b: (Pair, u64)) -> bool {
        use core::cmp::Ordering;
        let key = match objective {
            Objective::Frequency => a.1.cmp(&b.1),
            Objective::Likelihood => {
                // score(p) = count / (freq(left) * freq(right)), compared
                // exactly by cross-multiplication.
                let denom = |p: Pair| {
                    self.sym_counts[p.0 as usize] as u128 * self.sym_counts[p.1 as usize] as u128
                };
                let lhs = a.1 as u128 * denom(b.0);
                let rhs = b.1 as u128 * denom(a.0);
                lhs.cmp(&rhs)
            }
        };
        match key {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.pair_surfaces(a.0) < self.pair_surfaces(b.0),
        }
    }

    fn pair_surfaces(&self, pair: Pair) -> (&str, &str) {
        (
            self.tokens[pair.0 as usize].as_str(),
            self.tokens[pair.1 as usize].as_str(),
        )
    }

    fn apply_merge(&mut self, pair: Pair, marker: &str) {
        let (left, right) = pair;
        let left_str = self.tokens[left as usize].clone();
        let right_str = self.tokens[right as usize].clone();
        let mut product = left_str.clone();
        product.push_str(right_str.strip_prefix(marker).unwrap_or(&right_str));
        let product_id = self.intern(&product);

        self.merges.push((left_str, right_str));
        self.merged.insert(pair);

        let affected = self.pair_words.remove(&pair).unwrap_or_default();
        for wi in affected {
            let old = core::mem::take(&mut self.words[wi].syms);
            self.remove_word_stats(wi, &old);

            let mut merged = Vec::with_capacity(old.len());
            let mut i = 0;
            while i < old.len() {
                if i + 1 < old.len() && old[i] == left && old[i + 1] == right {
                    merged.push(product_id);
                    i += 2;
                } else {
                    merged.push(old[i]);
                    i += 1;
                }
            }
            self.words[wi].syms = merged;
            self.add_word_stats(wi);
        }
        debug_assert!(!self.pair_counts.contains_key(&pair));
    }
}
