//! Parallel evaluation drivers. Each one folds integer counts with the
//! accumulators from `morfeval-core`, so reports are bit-identical to the
//! sequential path for any worker count.

use rayon::prelude::*;

use morfeval_core::config::EvalConfig;
use morfeval_core::encode::{BatchError, Encoder};
use morfeval_core::metrics::{accuracy_word_result, AccuracyReport, CoherenceAccum, CoherenceReport};
use morfeval_core::morphology::{CoherencePair, GoldSegmentations};
use morfeval_core::segmentation::Segmentation;
use morfeval_core::taxonomy::{classify_error, ErrorAnalysis};

const CHUNK: usize = 4096;

/// Run `f` on a pool with the requested number of threads; `None` uses all
/// cores.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()?;
            Ok(pool.install(f))
        }
    }
}

/// Parallel [`morfeval_core::encode::tokenize_batch`]; output order matches
/// input order and the first failing word (by index) wins error reporting.
pub fn tokenize_batch<E: Encoder + ?Sized>(
    encoder: &E,
    words: &[String],
) -> Result<Vec<Segmentation>, BatchError> {
    let results: Vec<Result<Segmentation, BatchError>> = words
        .par_iter()
        .enumerate()
        .map(|(index, word)| {
            encoder
                .encode(word)
                .map_err(|source| BatchError { index, source })
        })
        .collect();
    let mut out = Vec::with_capacity(results.len());
    for result in results {
        out.push(result?);
    }
    Ok(out)
}

/// Parallel coherence evaluation; counts merge commutatively.
pub fn eval_coherence<E: Encoder + ?Sized>(
    encoder: &E,
    pairs: &[CoherencePair],
    cfg: &EvalConfig,
) -> CoherenceReport {
    pairs
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut accum = CoherenceAccum::new();
            for pair in chunk {
                accum.observe(encoder, pair, cfg);
            }
            accum
        })
        .reduce(CoherenceAccum::new, CoherenceAccum::merge)
        .into_report()
}

/// Parallel accuracy evaluation; per-word records keep dataset order.
pub fn eval_accuracy<E: Encoder + ?Sized>(
    encoder: &E,
    gold: &GoldSegmentations,
    cfg: &EvalConfig,
) -> AccuracyReport {
    let results = gold
        .words()
        .par_iter()
        .map(|word| accuracy_word_result(encoder, word, cfg))
        .collect();
    AccuracyReport::from_results(results)
}

/// Parallel error classification; records keep dataset order.
pub fn error_profile<E: Encoder + ?Sized>(
    encoder: &E,
    gold: &GoldSegmentations,
    cfg: &EvalConfig,
) -> ErrorAnalysis {
    let verdicts = gold
        .words()
        .par_iter()
        .map(|word| {
            let output = encoder
                .encode(&word.word)
                .expect("validated gold words are non-empty");
            classify_error(word, &output, encoder.vocabulary(), cfg)
        })
        .collect();
    ErrorAnalysis::from_verdicts(verdicts)
}
