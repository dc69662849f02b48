//! Report envelopes and rendering. JSON is the canonical format and
//! round-trips losslessly; the table renderer mirrors the column layouts of
//! the metric definitions; CSV carries the same rows for spreadsheets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use morfeval_core::metrics::{AccuracyReport, CoherenceReport, CoherenceRow, RelevanceReport};
use morfeval_core::morphology::MorphemeType;
use morfeval_core::taxonomy::{CharSetStrategy, ErrorAnalysis, ErrorProfile, ErrorRecord, ErrorType, SimilarityReport};

use crate::manifest::RunManifest;

/// Error analysis plus the bookkeeping that lets a reader check the
/// partition: every gold word is either correct or carries exactly one
/// error type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorAnalysisBody {
    pub n_words: usize,
    pub n_correct: usize,
    /// `n_words - n_correct`; compare against `profile.total`.
    pub errors_expected: u64,
    pub partition_consistent: bool,
    pub profile: ErrorProfile,
    pub records: Vec<ErrorRecord>,
}

impl From<ErrorAnalysis> for ErrorAnalysisBody {
    fn from(analysis: ErrorAnalysis) -> Self {
        ErrorAnalysisBody {
            n_words: analysis.n_words,
            n_correct: analysis.n_correct,
            errors_expected: analysis.errors_expected(),
            partition_consistent: analysis.partition_consistent(),
            profile: analysis.profile,
            records: analysis.records,
        }
    }
}

/// Token-set similarity between two vocabularies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityBody {
    pub strategy: CharSetStrategy,
    pub vocab_a: String,
    pub vocab_b: String,
    pub report: SimilarityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Relevance(RelevanceReport),
    Coherence(CoherenceReport),
    Accuracy(AccuracyReport),
    Errors(ErrorAnalysisBody),
    Similarity(SimilarityBody),
}

/// A rendered result: the body plus the manifest that reproduces it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub body: ReportBody,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Json,
    Table,
    Csv,
}

pub fn render(report: &Report, format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => {
            let mut json =
                serde_json::to_string_pretty(report).expect("reports always serialize");
            json.push('\n');
            json
        }
        RenderFormat::Table => render_table(&report.body),
        RenderFormat::Csv => render_csv(&report.body),
    }
}

fn type_label(mtype: Option<MorphemeType>) -> &'static str {
    match mtype {
        Some(t) => t.plural_label(),
        None => "Totals",
    }
}

fn render_table(body: &ReportBody) -> String {
    let mut out = String::new();
    match body {
        ReportBody::Relevance(report) => {
            let _ = writeln!(
                out,
                "{:<10} {:>9} {:>8} {:>14} {:>11} {:>8}",
                "Type", "Inventory", "Matched", "Precision (%)", "Recall (%)", "F1 (%)"
            );
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "{:<10} {:>9} {:>8} {:>14.2} {:>11.2} {:>8.2}",
                    row.morpheme_type.plural_label(),
                    row.inventory_size,
                    row.matched_count,
                    row.precision,
                    row.recall,
                    row.f1
                );
            }
            let _ = writeln!(out, "Vocabulary size: {}", report.vocab_size);
            if !report.skipped.is_empty() {
                let skipped: Vec<&str> =
                    report.skipped.iter().map(|t| t.plural_label()).collect();
                let _ = writeln!(out, "Skipped (empty inventory): {}", skipped.join(", "));
            }
        }
        ReportBody::Coherence(report) => {
            let _ = writeln!(
                out,
                "{:<10} {:>9} {:>9} {:>17} {:>15} {:>19}",
                "Type", "Pairs", "Excluded", "Single token (%)", "Recognized (%)", "Not recognized (%)"
            );
            let mut write_row = |row: &CoherenceRow| {
                let _ = writeln!(
                    out,
                    "{:<10} {:>9} {:>9} {:>17.2} {:>15.2} {:>19.2}",
                    type_label(row.morpheme_type),
                    row.stats.n_pairs,
                    row.stats.excluded_unknown,
                    row.stats.pct_single_token,
                    row.stats.pct_recognized,
                    row.stats.pct_not_recognized
                );
            };
            for row in &report.rows {
                write_row(row);
            }
            write_row(&report.totals);
        }
        ReportBody::Accuracy(report) => {
            let _ = writeln!(
                out,
                "{:>7} {:>8} {:>13} {:>24}",
                "Words", "Correct", "Accuracy (%)", "Mean of tokens per word"
            );
            let _ = writeln!(
                out,
                "{:>7} {:>8} {:>13.2} {:>24.2}",
                report.n_words, report.n_correct, report.accuracy, report.mean_tokens_per_word
            );
        }
        ReportBody::Errors(body) => {
            let _ = writeln!(
                out,
                "{:>8} {:>8} {:>8} {:>8} {:>8}",
                "Type 1", "Type 2", "Type 3", "Type 4", "Total"
            );
            let _ = writeln!(
                out,
                "{:>8} {:>8} {:>8} {:>8} {:>8}",
                body.profile.under_segmentation,
                body.profile.over_segmentation,
                body.profile.morpheme_absent,
                body.profile.morpheme_not_selected,
                body.profile.total
            );
            for etype in ErrorType::ALL {
                let _ = writeln!(out, "Type {}: {}", etype.index(), etype.label());
            }
            let _ = writeln!(
                out,
                "Words: {}  Correct: {}  Errors expected: {}",
                body.n_words, body.n_correct, body.errors_expected
            );
            if !body.partition_consistent {
                let _ = writeln!(out, "WARNING: error counts do not partition the gold words");
            }
        }
        ReportBody::Similarity(body) => {
            let _ = writeln!(
                out,
                "{:>7} {:>7} {:>12} {:>14} {:>11} {:>8}",
                "Set A", "Set B", "Intersection", "Precision (%)", "Recall (%)", "F1 (%)"
            );
            let report = &body.report;
            let _ = writeln!(
                out,
                "{:>7} {:>7} {:>12} {:>14.2} {:>11.2} {:>8.2}",
                report.set_a_size,
                report.set_b_size,
                report.intersection_size,
                report.precision,
                report.recall,
                report.f1
            );
        }
    }
    out
}

fn render_csv(body: &ReportBody) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    match body {
        ReportBody::Relevance(report) => {
            writer
                .write_record([
                    "type",
                    "inventory_size",
                    "matched",
                    "vocab_size",
                    "precision_pct",
                    "recall_pct",
                    "f1_pct",
                ])
                .unwrap();
            for row in &report.rows {
                writer
                    .write_record([
                        row.morpheme_type.label().to_string(),
                        row.inventory_size.to_string(),
                        row.matched_count.to_string(),
                        report.vocab_size.to_string(),
                        format!("{:.2}", row.precision),
                        format!("{:.2}", row.recall),
                        format!("{:.2}", row.f1),
                    ])
                    .unwrap();
            }
        }
        ReportBody::Coherence(report) => {
            writer
                .write_record([
                    "type",
                    "n_pairs",
                    "excluded_unknown",
                    "single_token",
                    "recognized",
                    "not_recognized",
                    "pct_single_token",
                    "pct_recognized",
                    "pct_not_recognized",
                ])
                .unwrap();
            for row in report.rows.iter().chain([&report.totals]) {
                let label = match row.morpheme_type {
                    Some(t) => t.label(),
                    None => "totals",
                };
                writer
                    .write_record([
                        label.to_string(),
                        row.stats.n_pairs.to_string(),
                        row.stats.excluded_unknown.to_string(),
                        row.stats.single_token.to_string(),
                        row.stats.recognized.to_string(),
                        row.stats.not_recognized.to_string(),
                        format!("{:.2}", row.stats.pct_single_token),
                        format!("{:.2}", row.stats.pct_recognized),
                        format!("{:.2}", row.stats.pct_not_recognized),
                    ])
                    .unwrap();
            }
        }
        ReportBody::Accuracy(report) => {
            writer
                .write_record(["n_words", "n_correct", "accuracy_pct", "mean_tokens_per_word"])
                .unwrap();
            writer
                .write_record([
                    report.n_words.to_string(),
                    report.n_correct.to_string(),
                    format!("{:.2}", report.accuracy),
                    format!("{:.2}", report.mean_tokens_per_word),
                ])
                .unwrap();
        }
        ReportBody::Errors(body) => {
            writer
                .write_record([
                    "under_segmentation",
                    "over_segmentation",
                    "morpheme_absent",
                    "morpheme_not_selected",
                    "total",
                    "n_words",
                    "n_correct",
                ])
                .unwrap();
            writer
                .write_record([
                    body.profile.under_segmentation.to_string(),
                    body.profile.over_segmentation.to_string(),
                    body.profile.morpheme_absent.to_string(),
                    body.profile.morpheme_not_selected.to_string(),
                    body.profile.total.to_string(),
                    body.n_words.to_string(),
                    body.n_correct.to_string(),
                ])
                .unwrap();
        }
        ReportBody::Similarity(body) => {
            writer
                .write_record([
                    "strategy",
                    "set_a_size",
                    "set_b_size",
                    "intersection_size",
                    "precision_pct",
                    "recall_pct",
                    "f1_pct",
                ])
                .unwrap();
            writer
                .write_record([
                    format!("{:?}", body.strategy),
                    body.report.set_a_size.to_string(),
                    body.report.set_b_size.to_string(),
                    body.report.intersection_size.to_string(),
                    format!("{:.2}", body.report.precision),
                    format!("{:.2}", body.report.recall),
                    format!("{:.2}", body.report.f1),
                ])
                .unwrap();
        }
    }
    String::from_utf8(writer.into_inner().unwrap()).unwrap()
}

/// Qualitative examples view: one error per line with the gold reading, the
/// tokenizer output, and any missing vocabulary forms.
pub fn render_error_examples(records: &[ErrorRecord]) -> String {
    let mut out = String::from("word\terror_type\tgold\toutput\tmissing\n");
    for record in records {
        let missing: Vec<&str> = record.missing_morphemes.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            record.word,
            record.error_type.label(),
            record.gold_reading.morphemes.join(" "),
            record.output.tokens.join(" "),
            missing.join(" ")
        );
    }
    out
}
