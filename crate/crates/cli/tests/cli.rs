//! End-to-end tests of the `morfeval` binary: exit codes, file outputs, and
//! report rendering.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn morfeval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morfeval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn body(output: &Output) -> serde_json::Value {
    let report: serde_json::Value = serde_json::from_str(&stdout(output)).unwrap();
    report["body"].clone()
}

#[test]
fn eval_relevance_reproduces_toy_scores() {
    let out = morfeval(&[
        "eval-relevance",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--inventory",
        fixture("toy_inventory.json").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = body(&out);
    assert_eq!(body["kind"], "relevance");
    assert_eq!(body["vocab_size"], 8);
    let rows = body["rows"].as_array().unwrap();
    let prefix = rows
        .iter()
        .find(|r| r["morpheme_type"] == "prefix")
        .unwrap();
    assert_eq!(prefix["precision"], 25.0);
    assert_eq!(prefix["recall"], 100.0);
    assert_eq!(prefix["f1"], 40.0);
    let stems = rows.iter().find(|r| r["morpheme_type"] == "stem").unwrap();
    assert_eq!(stems["precision"], 12.5);
    assert_eq!(stems["recall"], 50.0);
    assert_eq!(stems["f1"], 20.0);
}

#[test]
fn eval_relevance_table_has_percent_headers() {
    let out = morfeval(&[
        "eval-relevance",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--inventory",
        fixture("toy_inventory.json").to_str().unwrap(),
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    let table = stdout(&out);
    assert!(table.contains("Precision (%)"));
    assert!(table.contains("Recall (%)"));
    assert!(table.contains("F1 (%)"));
    assert!(table.contains("Prefixes"));
}

#[test]
fn tokenize_single_word() {
    let out = morfeval(&[
        "tokenize",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "wordpiece",
        "--word",
        "Casas",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let seg: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(seg["word"], "casas");
    assert_eq!(seg["tokens"][0], "casa");
    assert_eq!(seg["tokens"][1], "##s");
    assert_eq!(seg["contains_unknown"], false);
}

#[test]
fn tokenize_without_vocab_is_a_usage_error() {
    let out = morfeval(&["tokenize", "--word", "casas"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tokenize_requires_exactly_one_input() {
    let out = morfeval(&[
        "tokenize",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "wordpiece",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bpe_without_merges_is_a_usage_error() {
    let out = morfeval(&[
        "tokenize",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "bpe",
        "--word",
        "casas",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--merges"));
}

#[test]
fn missing_input_file_exits_one_with_diagnostic() {
    let out = morfeval(&[
        "eval-relevance",
        "--vocab",
        "/nonexistent/vocab.txt",
        "--inventory",
        fixture("toy_inventory.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("input not found: /nonexistent/vocab.txt"));
}

#[test]
fn invalid_dataset_row_exits_one_with_row_number() {
    let dir = TempDir::new().unwrap();
    let pairs = dir.path().join("pairs.tsv");
    std::fs::write(&pairs, "fijación\tre\tprefix\n").unwrap();
    let out = morfeval(&[
        "eval-coherence",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "wordpiece",
        "--pairs",
        pairs.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("pairs.tsv:1"), "stderr: {err}");
}

#[test]
fn train_is_deterministic_and_usable() {
    let dir = TempDir::new().unwrap();
    let vocab1 = dir.path().join("v1.txt");
    let merges1 = dir.path().join("m1.txt");
    let vocab2 = dir.path().join("v2.txt");
    let merges2 = dir.path().join("m2.txt");

    for (v, m) in [(&vocab1, &merges1), (&vocab2, &merges2)] {
        let out = morfeval(&[
            "train",
            "--algo",
            "bpe",
            "--corpus",
            fixture("toy_corpus.txt").to_str().unwrap(),
            "--vocab-size",
            "64",
            "--min-frequency",
            "1",
            "--out-vocab",
            v.to_str().unwrap(),
            "--out-merges",
            m.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    assert_eq!(
        std::fs::read(&vocab1).unwrap(),
        std::fs::read(&vocab2).unwrap()
    );
    assert_eq!(
        std::fs::read(&merges1).unwrap(),
        std::fs::read(&merges2).unwrap()
    );

    let out = morfeval(&[
        "tokenize",
        "--vocab",
        vocab1.to_str().unwrap(),
        "--algo",
        "bpe",
        "--merges",
        merges1.to_str().unwrap(),
        "--word",
        "casas",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let seg: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(seg["contains_unknown"], false);
}

#[test]
fn wordpiece_train_rejects_merges_flag() {
    let dir = TempDir::new().unwrap();
    let out = morfeval(&[
        "train",
        "--algo",
        "wordpiece",
        "--corpus",
        fixture("toy_corpus.txt").to_str().unwrap(),
        "--vocab-size",
        "64",
        "--out-vocab",
        dir.path().join("v.txt").to_str().unwrap(),
        "--out-merges",
        dir.path().join("m.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_accuracy_report_roundtrips_through_report_subcommand() {
    let dir = TempDir::new().unwrap();
    let report_path = dir.path().join("report.json");
    let out = morfeval(&[
        "eval-accuracy",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "wordpiece",
        "--gold",
        fixture("toy_accuracy.json").to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let original = std::fs::read_to_string(&report_path).unwrap();
    let rerendered = morfeval(&[
        "report",
        "--input",
        report_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(rerendered.status.success());
    assert_eq!(stdout(&rerendered), original);

    let table = morfeval(&[
        "report",
        "--input",
        report_path.to_str().unwrap(),
        "--format",
        "table",
    ]);
    assert!(stdout(&table).contains("Mean of tokens per word"));

    let csv = morfeval(&[
        "report",
        "--input",
        report_path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(stdout(&csv).starts_with("n_words,n_correct,accuracy_pct,mean_tokens_per_word"));
}

#[test]
fn coherence_results_are_jobs_invariant() {
    let run = |jobs: &str| {
        let out = morfeval(&[
            "eval-coherence",
            "--vocab",
            fixture("toy_vocab.txt").to_str().unwrap(),
            "--algo",
            "wordpiece",
            "--pairs",
            fixture("toy_coherence.tsv").to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        body(&out)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn classify_errors_writes_examples_file() {
    let dir = TempDir::new().unwrap();
    let examples = dir.path().join("examples.tsv");
    let out = morfeval(&[
        "classify-errors",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--algo",
        "wordpiece",
        "--gold",
        fixture("toy_accuracy.json").to_str().unwrap(),
        "--examples",
        examples.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = body(&out);
    assert_eq!(body["kind"], "errors");
    assert_eq!(body["partition_consistent"], true);
    let total = body["profile"]["total"].as_u64().unwrap();
    let correct = body["n_correct"].as_u64().unwrap();
    assert_eq!(total + correct, body["n_words"].as_u64().unwrap());

    let examples = std::fs::read_to_string(&examples).unwrap();
    assert!(examples.starts_with("word\terror_type\tgold\toutput\tmissing\n"));
    assert_eq!(examples.lines().count() as u64, total + 1);
}

#[test]
fn compare_vocabs_identity_scores_one_hundred() {
    let out = morfeval(&[
        "compare-vocabs",
        "--vocab-a",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--vocab-b",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--strategy",
        "inventory-prefixes",
        "--inventory",
        fixture("toy_inventory.json").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = body(&out);
    assert_eq!(body["kind"], "similarity");
    assert_eq!(body["report"]["precision"], 100.0);
    assert_eq!(body["report"]["recall"], 100.0);
    assert_eq!(body["report"]["f1"], 100.0);
}

#[test]
fn compare_vocabs_inventory_strategy_requires_inventory() {
    let out = morfeval(&[
        "compare-vocabs",
        "--vocab-a",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--vocab-b",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--strategy",
        "inventory-prefixes",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_embed_input_digests() {
    let out = morfeval(&[
        "eval-relevance",
        "--vocab",
        fixture("toy_vocab.txt").to_str().unwrap(),
        "--inventory",
        fixture("toy_inventory.json").to_str().unwrap(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let inputs = report["manifest"]["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    for input in inputs {
        assert_eq!(input["sha256"].as_str().unwrap().len(), 64);
    }
    assert_eq!(report["manifest"]["command"], "eval-relevance");
}
