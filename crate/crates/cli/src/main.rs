use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{ArgAction, ArgGroup, Args, Parser, Subcommand, ValueEnum};

use morfeval::formats;
use morfeval::manifest::{input_file, ConfigSnapshot, InputFile, RunManifest};
use morfeval::parallel;
use morfeval::report::{self, ErrorAnalysisBody, RenderFormat, ReportBody, SimilarityBody};
use morfeval_core::config::{EvalConfig, NormalizationConfig, UnicodeForm};
use morfeval_core::encode::{BpeEncoder, Encoder, WordpieceEncoder};
use morfeval_core::metrics::eval_relevance;
use morfeval_core::taxonomy::{compare_token_sets, extract_characteristic_set, CharSetStrategy};
use morfeval_core::train::{train_bpe, train_wordpiece, TrainerConfig};

#[derive(Parser)]
#[command(
    name = "morfeval",
    version,
    about = "Train subword tokenizers and evaluate vocabularies against gold morphology"
)]
struct Cli {
    #[command(flatten)]
    globals: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Continuation marker carried by non-initial subword tokens
    #[arg(long, global = true, default_value = "##")]
    marker: String,
    /// Lowercase words before segmentation
    #[arg(long, global = true, value_name = "BOOL", default_value_t = true, action = ArgAction::Set)]
    lowercase: bool,
    /// Unicode normalization applied to words
    #[arg(long, global = true, value_enum, default_value_t = UnicodeFormArg::Nfc)]
    unicode_form: UnicodeFormArg,
    /// Token standing in for unsegmentable words
    #[arg(long, global = true, default_value = "[UNK]")]
    unknown_token: String,
    /// Accept bare (unmarked) suffix and clitic forms as vocabulary members
    #[arg(long, global = true)]
    suffix_match_unmarked: bool,
    /// Require recognized suffix/clitic tokens to end at the word boundary
    #[arg(long, global = true, value_name = "BOOL", default_value_t = true, action = ArgAction::Set)]
    anchor_suffixes: bool,
    /// Worker threads (default: all cores; results are jobs-invariant)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Map words longer than this many characters to the unknown token
    #[arg(long, global = true)]
    max_word_chars: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnicodeFormArg {
    Nfc,
    Nfd,
    None,
}

impl From<UnicodeFormArg> for UnicodeForm {
    fn from(arg: UnicodeFormArg) -> Self {
        match arg {
            UnicodeFormArg::Nfc => UnicodeForm::Nfc,
            UnicodeFormArg::Nfd => UnicodeForm::Nfd,
            UnicodeFormArg::None => UnicodeForm::None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Bpe,
    Wordpiece,
}

impl AlgoArg {
    fn label(self) -> &'static str {
        match self {
            AlgoArg::Bpe => "bpe",
            AlgoArg::Wordpiece => "wordpiece",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Table,
    Csv,
}

impl From<FormatArg> for RenderFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => RenderFormat::Json,
            FormatArg::Table => RenderFormat::Table,
            FormatArg::Csv => RenderFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    InventoryPrefixes,
    InventorySuffixes,
    AllWordInitial,
    AllContinuation,
}

impl From<StrategyArg> for CharSetStrategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::InventoryPrefixes => CharSetStrategy::InventoryPrefixes,
            StrategyArg::InventorySuffixes => CharSetStrategy::InventorySuffixes,
            StrategyArg::AllWordInitial => CharSetStrategy::AllWordInitial,
            StrategyArg::AllContinuation => CharSetStrategy::AllContinuation,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train a vocabulary from a plain-text corpus (one sentence per line)
    Train {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        vocab_size: usize,
        /// Pairs below this frequency are never merged
        #[arg(long, default_value_t = 2)]
        min_frequency: u64,
        #[arg(long)]
        out_vocab: PathBuf,
        /// Merge rules output (BPE only)
        #[arg(long)]
        out_merges: Option<PathBuf>,
    },
    /// Segment one word or a word-per-line file
    #[command(group(ArgGroup::new("input").required(true).args(["word", "words"])))]
    Tokenize {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        merges: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        words: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score vocabulary overlap with a morpheme inventory
    EvalRelevance {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long)]
        inventory: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score segmentation consistency over word/morpheme pairs
    EvalCoherence {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        merges: Option<PathBuf>,
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score exact-match accuracy against labeled segmentations
    EvalAccuracy {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        merges: Option<PathBuf>,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every mis-segmented gold word into the four error types
    ClassifyErrors {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        merges: Option<PathBuf>,
        #[arg(long)]
        gold: PathBuf,
        /// Also write a word-per-line examples file (word, gold, output)
        #[arg(long)]
        examples: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the characteristic token sets of two vocabularies
    CompareVocabs {
        #[arg(long)]
        vocab_a: PathBuf,
        #[arg(long)]
        vocab_b: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Morpheme inventory (required by the inventory-* strategies)
        #[arg(long)]
        inventory: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render a JSON report as a table, CSV, or JSON
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Errors that are the caller's fault: wrong flags, not bad data.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(message.into()))
}

impl GlobalOpts {
    fn normalization(&self) -> Result<NormalizationConfig> {
        let cfg = NormalizationConfig {
            lowercase: self.lowercase,
            unicode_form: self.unicode_form.into(),
            continuation_marker: self.marker.clone(),
            unknown_token: self.unknown_token.clone(),
        };
        cfg.validate().map_err(|e| usage(e.to_string()))?;
        Ok(cfg)
    }

    fn eval(&self) -> Result<EvalConfig> {
        let mut cfg = EvalConfig::new(self.normalization()?);
        cfg.suffix_match_unmarked = self.suffix_match_unmarked;
        cfg.anchor_suffixes = self.anchor_suffixes;
        Ok(cfg)
    }

    fn snapshot(&self, algorithm: Option<AlgoArg>) -> Result<ConfigSnapshot> {
        Ok(ConfigSnapshot {
            eval: self.eval()?,
            algorithm: algorithm.map(|a| a.label().to_string()),
            max_word_chars: self.max_word_chars,
        })
    }
}

/// Reject empty path values up front; clap cannot tell `--vocab ""` apart
/// from a real path.
fn require_path(flag: &str, path: &Path) -> Result<()> {
    if path.as_os_str().is_empty() {
        return Err(usage(format!("{flag} requires a non-empty path")));
    }
    Ok(())
}

fn build_encoder(
    algo: AlgoArg,
    vocab_path: &Path,
    merges_path: Option<&PathBuf>,
    norm: &NormalizationConfig,
    max_word_chars: Option<usize>,
) -> Result<Box<dyn Encoder>> {
    require_path("--vocab", vocab_path)?;
    if let Some(merges) = merges_path {
        require_path("--merges", merges)?;
    }
    let vocab = formats::load_vocabulary(vocab_path, norm)?;
    match algo {
        AlgoArg::Bpe => {
            let merges_path =
                merges_path.ok_or_else(|| usage("--merges is required with --algo bpe"))?;
            let merges = formats::load_merges(merges_path)?;
            let encoder = BpeEncoder::new(vocab, &merges, norm.clone())?
                .with_max_word_chars(max_word_chars);
            Ok(Box::new(encoder))
        }
        AlgoArg::Wordpiece => {
            let encoder =
                WordpieceEncoder::new(vocab, norm.clone())?.with_max_word_chars(max_word_chars);
            Ok(Box::new(encoder))
        }
    }
}

fn encoder_inputs(
    vocab: &Path,
    merges: Option<&PathBuf>,
    rest: &[(&str, &Path)],
) -> Result<Vec<InputFile>> {
    let mut inputs = vec![input_file("vocab", vocab)?];
    if let Some(merges) = merges {
        inputs.push(input_file("merges", merges)?);
    }
    for (name, path) in rest {
        inputs.push(input_file(name, path)?);
    }
    Ok(inputs)
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => formats::write_text(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_report(report: &report::Report, format: FormatArg, out: Option<&PathBuf>) -> Result<()> {
    emit(out, &report::render(report, format.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let globals = cli.globals.clone();
    match cli.command {
        Command::Train {
            algo,
            corpus,
            vocab_size,
            min_frequency,
            out_vocab,
            out_merges,
        } => {
            let norm = globals.normalization()?;
            let cfg = TrainerConfig {
                target_vocab_size: vocab_size,
                min_pair_frequency: min_frequency,
                normalization: norm.clone(),
                special_tokens: vec![norm.unknown_token.clone()],
            };
            let text = formats::load_corpus(&corpus)?;
            match algo {
                AlgoArg::Bpe => {
                    let out_merges = out_merges
                        .ok_or_else(|| usage("--out-merges is required with --algo bpe"))?;
                    let (vocab, merges) = train_bpe(text.lines(), &cfg)?;
                    formats::save_vocabulary(&out_vocab, &vocab)?;
                    formats::save_merges(&out_merges, &merges)?;
                    println!(
                        "trained {} tokens, {} merges -> {}, {}",
                        vocab.len(),
                        merges.len(),
                        out_vocab.display(),
                        out_merges.display()
                    );
                }
                AlgoArg::Wordpiece => {
                    if out_merges.is_some() {
                        return Err(usage("--out-merges only applies to --algo bpe"));
                    }
                    let vocab = train_wordpiece(text.lines(), &cfg)?;
                    formats::save_vocabulary(&out_vocab, &vocab)?;
                    println!("trained {} tokens -> {}", vocab.len(), out_vocab.display());
                }
            }
            Ok(())
        }
        Command::Tokenize {
            vocab,
            algo,
            merges,
            word,
            words,
            out,
        } => {
            let norm = globals.normalization()?;
            let encoder =
                build_encoder(algo, &vocab, merges.as_ref(), &norm, globals.max_word_chars)?;
            let list: Vec<String> = match (word, words) {
                (Some(word), None) => vec![word],
                (None, Some(path)) => formats::load_word_list(&path)?,
                _ => unreachable!("clap group enforces exactly one input"),
            };
            let segmentations = parallel::with_jobs(globals.jobs, || {
                parallel::tokenize_batch(&*encoder, &list)
            })??;
            let mut rendered = String::new();
            for seg in &segmentations {
                rendered.push_str(&serde_json::to_string(seg)?);
                rendered.push('\n');
            }
            emit(out.as_ref(), &rendered)
        }
        Command::EvalRelevance {
            vocab,
            inventory,
            format,
            out,
        } => {
            let eval = globals.eval()?;
            require_path("--vocab", &vocab)?;
            require_path("--inventory", &inventory)?;
            let vocabulary = formats::load_vocabulary(&vocab, &eval.normalization)?;
            let inv = formats::load_inventory(&inventory, &eval.normalization)?;
            let body = eval_relevance(&vocabulary, &inv, &eval);
            let manifest = RunManifest::new(
                "eval-relevance",
                vec![
                    input_file("vocab", &vocab)?,
                    input_file("inventory", &inventory)?,
                ],
                globals.snapshot(None)?,
            );
            emit_report(
                &report::Report {
                    manifest,
                    body: ReportBody::Relevance(body),
                },
                format,
                out.as_ref(),
            )
        }
        Command::EvalCoherence {
            vocab,
            algo,
            merges,
            pairs,
            format,
            out,
        } => {
            let eval = globals.eval()?;
            let encoder = build_encoder(
                algo,
                &vocab,
                merges.as_ref(),
                &eval.normalization,
                globals.max_word_chars,
            )?;
            let dataset = formats::load_coherence_pairs(&pairs, &eval.normalization)?;
            let body = parallel::with_jobs(globals.jobs, || {
                parallel::eval_coherence(&*encoder, &dataset, &eval)
            })?;
            let manifest = RunManifest::new(
                "eval-coherence",
                encoder_inputs(&vocab, merges.as_ref(), &[("pairs", &pairs)])?,
                globals.snapshot(Some(algo))?,
            );
            emit_report(
                &report::Report {
                    manifest,
                    body: ReportBody::Coherence(body),
                },
                format,
                out.as_ref(),
            )
        }
        Command::EvalAccuracy {
            vocab,
            algo,
            merges,
            gold,
            format,
            out,
        } => {
            let eval = globals.eval()?;
            let encoder = build_encoder(
                algo,
                &vocab,
                merges.as_ref(),
                &eval.normalization,
                globals.max_word_chars,
            )?;
            let dataset = formats::load_gold_segmentations(&gold, &eval.normalization)?;
            let body = parallel::with_jobs(globals.jobs, || {
                parallel::eval_accuracy(&*encoder, &dataset, &eval)
            })?;
            let manifest = RunManifest::new(
                "eval-accuracy",
                encoder_inputs(&vocab, merges.as_ref(), &[("gold", &gold)])?,
                globals.snapshot(Some(algo))?,
            );
            emit_report(
                &report::Report {
                    manifest,
                    body: ReportBody::Accuracy(body),
                },
                format,
                out.as_ref(),
            )
        }
        Command::ClassifyErrors {
            vocab,
            algo,
            merges,
            gold,
            examples,
            format,
            out,
        } => {
            let eval = globals.eval()?;
            let encoder = build_encoder(
                algo,
                &vocab,
                merges.as_ref(),
                &eval.normalization,
                globals.max_word_chars,
            )?;
            let dataset = formats::load_gold_segmentations(&gold, &eval.normalization)?;
            let analysis = parallel::with_jobs(globals.jobs, || {
                parallel::error_profile(&*encoder, &dataset, &eval)
            })?;
            let body = ErrorAnalysisBody::from(analysis);
            if let Some(examples) = examples {
                formats::write_text(&examples, &report::render_error_examples(&body.records))?;
            }
            let manifest = RunManifest::new(
                "classify-errors",
                encoder_inputs(&vocab, merges.as_ref(), &[("gold", &gold)])?,
                globals.snapshot(Some(algo))?,
            );
            emit_report(
                &report::Report {
                    manifest,
                    body: ReportBody::Errors(body),
                },
                format,
                out.as_ref(),
            )
        }
        Command::CompareVocabs {
            vocab_a,
            vocab_b,
            strategy,
            inventory,
            format,
            out,
        } => {
            let eval = globals.eval()?;
            let a = formats::load_vocabulary(&vocab_a, &eval.normalization)?;
            let b = formats::load_vocabulary(&vocab_b, &eval.normalization)?;
            let inv = inventory
                .as_ref()
                .map(|path| formats::load_inventory(path, &eval.normalization))
                .transpose()?;
            let strategy: CharSetStrategy = strategy.into();
            let set_a = extract_characteristic_set(&a, inv.as_ref(), strategy, &eval)?;
            let set_b = extract_characteristic_set(&b, inv.as_ref(), strategy, &eval)?;
            let body = SimilarityBody {
                strategy,
                vocab_a: vocab_a.display().to_string(),
                vocab_b: vocab_b.display().to_string(),
                report: compare_token_sets(&set_a, &set_b)?,
            };
            let mut inputs = vec![
                input_file("vocab_a", &vocab_a)?,
                input_file("vocab_b", &vocab_b)?,
            ];
            if let Some(path) = inventory.as_ref() {
                inputs.push(input_file("inventory", path)?);
            }
            let manifest =
                RunManifest::new("compare-vocabs", inputs, globals.snapshot(None)?);
            emit_report(
                &report::Report {
                    manifest,
                    body: ReportBody::Similarity(body),
                },
                format,
                out.as_ref(),
            )
        }
        Command::Report { input, format, out } => {
            let text = formats::read_text(&input)?;
            let parsed: report::Report = serde_json::from_str(&text).map_err(|e| {
                anyhow::anyhow!("{}: not a valid report: {e}", input.display())
            })?;
            emit_report(&parsed, format, out.as_ref())
        }
    }
}
