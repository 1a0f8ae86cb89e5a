use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use romanlab::{Scheme, WordCountMode};

#[derive(Debug, Parser)]
#[command(
    name = "romanlab",
    version,
    about = "Romanization, transliteration and tokenizer diagnostics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Romanize text line by line.
    Romanize(RomanizeArgs),
    /// Same as `romanize`, defaulting to per-script scheme dispatch.
    Transliterate(RomanizeArgs),
    /// Map transliterated text back to the source script.
    Invert(InvertArgs),
    /// Train a byte-pair-encoding vocabulary, one document per line.
    #[command(name = "tokenizer-train")]
    TokenizerTrain(TrainArgs),
    /// Print the tokens of each input line.
    Encode(EncodeArgs),
    /// Tokens per word over a corpus.
    Fertility(FertilityArgs),
    /// Share of unique tokens that merge after romanization.
    Collapse(CollapseArgs),
    /// Fertility and collapse across vocabulary sizes, as CSV.
    Sweep(SweepArgs),
    /// Throughput of the streaming pipeline on a synthetic corpus.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Input files read in order; standard input when absent.
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RomanizeArgs {
    /// uroman, uconv-auto, iso9, iso15919, pinyin, hepburn or adegn.
    #[arg(long)]
    pub scheme: Option<Scheme>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
    /// Treat input as JSON lines and romanize this string field.
    #[arg(long, value_name = "FIELD")]
    pub json_field: Option<String>,
    /// Write the run summary as JSON here.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long, value_parser = ["iso9"])]
    pub scheme: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, default_value_t = 50_048)]
    pub vocab_size: usize,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub split_ws: bool,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub byte_fallback: bool,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub split_digits: bool,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub dummy_prefix: bool,
    #[arg(long, default_value_t = 0.9999)]
    pub coverage: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub vocab: PathBuf,
    /// Print token ids instead of token strings.
    #[arg(long)]
    pub ids: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Args)]
pub struct FertilityArgs {
    #[arg(long)]
    pub vocab: PathBuf,
    /// whitespace or character.
    #[arg(long)]
    pub word_mode: WordCountMode,
    /// Report to compare against; adds the relative change.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Count words in this file instead of the input, e.g. the native text
    /// of a romanized corpus.
    #[arg(long)]
    pub words_from: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    /// Vocabulary whose observed tokens on `--corpus` are measured.
    #[arg(long, requires = "corpus", conflicts_with = "tokens")]
    pub vocab: Option<PathBuf>,
    #[arg(long, requires = "vocab")]
    pub corpus: Option<PathBuf>,
    /// One token per line, used as the observed set directly.
    #[arg(long, required_unless_present = "vocab")]
    pub tokens: Option<PathBuf>,
    #[arg(long, default_value = "uroman")]
    pub scheme: Scheme,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = romanlab::tokenlab::DEFAULT_SWEEP_SIZES)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub native: PathBuf,
    /// Romanized form of `--native`, line-aligned; derived with `--scheme`
    /// when absent.
    #[arg(long)]
    pub romanized: Option<PathBuf>,
    #[arg(long, default_value = "uroman")]
    pub scheme: Scheme,
    #[arg(long, default_value = "whitespace")]
    pub word_mode: WordCountMode,
    /// Row label; defaults to the native file stem.
    #[arg(long)]
    pub language: Option<String>,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub split_ws: bool,
    #[arg(long, default_value_t = 0.9999)]
    pub coverage: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
    #[arg(long, default_value_t = 10_000)]
    pub docs: usize,
    #[arg(long, default_value = "uroman")]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
