use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use romanlab::pipeline::{
    romanize_document, stream_romanize_with, sweep_vocab_sizes, synthetic_corpus, write_sweep_csv, PipelineConfig,
    RecordFormat, SweepConfig,
};
use romanlab::tokenlab::{fertility_with_word_count, observed_tokens};
use romanlab::{
    count_words, fertility, relative_fertility_change, token_collapse, train_bpe, Engines, FertilityReport, Romanizer,
    Scheme, SchemeId, TrainConfig, Vocabulary,
};

use crate::args::*;

/// Failure of a well-formed invocation.
#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Engine(#[from] romanlab::EngineError),
    #[error(transparent)]
    Pipeline(#[from] romanlab::pipeline::PipelineError),
    #[error(transparent)]
    Tokenlab(#[from] romanlab::TokenlabError),
    #[error("{0}")]
    Other(String),
}

type Result<T> = std::result::Result<T, DataError>;

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(io::Error) -> DataError {
    let path = path.as_ref().display().to_string();
    move |source| DataError::Io { path, source }
}

fn open_out(out: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Input lines from files in order, or standard input.
fn read_lines(inputs: &[PathBuf]) -> Result<Vec<String>> {
    if inputs.is_empty() {
        return io::stdin()
            .lock()
            .lines()
            .collect::<io::Result<_>>()
            .map_err(io_err("<stdin>"));
    }
    let mut lines = Vec::new();
    for path in inputs {
        let f = File::open(path).map_err(io_err(path))?;
        for line in BufReader::new(f).lines() {
            lines.push(line.map_err(io_err(path))?);
        }
    }
    Ok(lines)
}

fn read_file_lines(path: &Path) -> Result<Vec<String>> {
    read_lines(std::slice::from_ref(&path.to_path_buf()))
}

fn write_json(out: Option<&PathBuf>, value: &serde_json::Value) -> Result<()> {
    let mut w = open_out(out)?;
    let text = serde_json::to_string_pretty(value).map_err(|e| DataError::Other(e.to_string()))?;
    writeln!(w, "{text}")
        .and_then(|_| w.flush())
        .map_err(io_err("<output>"))
}

pub fn run(command: Command) -> Result<()> {
    let engines = Engines::from_env()?;
    match command {
        Command::Romanize(a) => romanize(&engines, a, Scheme::Uroman),
        Command::Transliterate(a) => romanize(&engines, a, Scheme::UconvAuto),
        Command::Invert(a) => invert(&engines, a),
        Command::TokenizerTrain(a) => tokenizer_train(a),
        Command::Encode(a) => encode(a),
        Command::Fertility(a) => fertility_cmd(a),
        Command::Collapse(a) => collapse(&engines, a),
        Command::Sweep(a) => sweep(&engines, a),
        Command::Bench(a) => bench(&engines, a),
    }
}

fn romanize(engines: &Engines, a: RomanizeArgs, default: Scheme) -> Result<()> {
    let scheme = a.scheme.unwrap_or(default);
    let config = PipelineConfig {
        input_paths: a.inputs.inputs,
        output_path: a.out,
        worker_count: a.workers as usize,
        record_format: match a.json_field {
            Some(field) => RecordFormat::JsonLines { field },
            None => RecordFormat::PlainLines,
        },
        stats_path: a.stats,
        ..PipelineConfig::new(scheme)
    };
    let summary = stream_romanize_with(&config, &engines.bind(scheme))?;
    for i in &summary.malformed_indices {
        eprintln!(
            "warning: record {i} is not a JSON object with a string {:?} field",
            field_name(&config)
        );
    }
    Ok(())
}

fn field_name(config: &PipelineConfig) -> &str {
    match &config.record_format {
        RecordFormat::JsonLines { field } => field,
        RecordFormat::PlainLines => "",
    }
}

fn invert(engines: &Engines, a: InvertArgs) -> Result<()> {
    debug_assert_eq!(a.scheme, "iso9");
    let lines = read_lines(&a.inputs.inputs)?;
    let mut w = open_out(a.out.as_ref())?;
    for (i, line) in lines.iter().enumerate() {
        let out = engines
            .registry()
            .invert(SchemeId::Iso9, line)
            .map_err(|e| DataError::Other(format!("line {}: {e}", i + 1)))?;
        writeln!(w, "{out}").map_err(io_err("<output>"))?;
    }
    w.flush().map_err(io_err("<output>"))
}

fn tokenizer_train(a: TrainArgs) -> Result<()> {
    let corpus = read_lines(&a.inputs.inputs)?;
    let config = TrainConfig {
        vocab_size: a.vocab_size,
        split_by_whitespace: a.split_ws,
        byte_fallback: a.byte_fallback,
        character_coverage: a.coverage,
        split_by_number: a.split_digits,
        add_dummy_prefix: a.dummy_prefix,
    };
    let vocab = train_bpe(&corpus, &config)?;
    vocab.save(&a.out).map_err(io_err(&a.out))?;
    eprintln!("{} tokens, {} merges", vocab.len(), vocab.merges().len());
    Ok(())
}

fn encode(a: EncodeArgs) -> Result<()> {
    let vocab = Vocabulary::load(&a.vocab)?;
    let lines = read_lines(&a.inputs.inputs)?;
    let mut w = open_out(a.out.as_ref())?;
    for line in &lines {
        let text = if a.ids {
            vocab
                .encode(line)
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        } else {
            vocab.encode_pieces(line).join(" ")
        };
        writeln!(w, "{text}").map_err(io_err("<output>"))?;
    }
    w.flush().map_err(io_err("<output>"))
}

fn fertility_cmd(a: FertilityArgs) -> Result<()> {
    let vocab = Vocabulary::load(&a.vocab)?;
    let corpus = read_lines(&a.inputs.inputs)?;
    let report = match &a.words_from {
        Some(path) => {
            let words = read_file_lines(path)?.iter().map(|d| count_words(d, a.word_mode)).sum();
            fertility_with_word_count(&vocab, &corpus, words, a.word_mode)?
        }
        None => fertility(&vocab, &corpus, a.word_mode)?,
    };
    let mut value = serde_json::to_value(report).map_err(|e| DataError::Other(e.to_string()))?;
    if let Some(path) = &a.baseline {
        let src = std::fs::read_to_string(path).map_err(io_err(path))?;
        let baseline: FertilityReport =
            serde_json::from_str(&src).map_err(|e| DataError::Other(format!("{}: {e}", path.display())))?;
        let change = relative_fertility_change(&report, &baseline)?;
        value["baseline"] = serde_json::to_value(baseline).map_err(|e| DataError::Other(e.to_string()))?;
        value["relative_fertility_change"] = change.into();
    }
    write_json(a.out.as_ref(), &value)
}

fn collapse(engines: &Engines, a: CollapseArgs) -> Result<()> {
    let tokens: Vec<String> = match (&a.vocab, &a.corpus, &a.tokens) {
        (Some(vocab), Some(corpus), _) => {
            let vocab = Vocabulary::load(vocab)?;
            observed_tokens(&vocab, read_file_lines(corpus)?).into_iter().collect()
        }
        (_, _, Some(path)) => read_file_lines(path)?,
        _ => {
            return Err(DataError::Other(
                "either --vocab with --corpus, or --tokens, is required".into(),
            ))
        }
    };
    let romanizer = engines.bind(a.scheme);
    let report = token_collapse(&tokens, |t| romanizer.romanize(t))?;
    write_json(
        a.out.as_ref(),
        &serde_json::to_value(report).map_err(|e| DataError::Other(e.to_string()))?,
    )
}

fn sweep(engines: &Engines, a: SweepArgs) -> Result<()> {
    let native = read_file_lines(&a.native)?;
    let romanizer = engines.bind(a.scheme);
    let romanized = match &a.romanized {
        Some(path) => read_file_lines(path)?,
        None => native.iter().map(|d| romanize_document(&romanizer, d).0).collect(),
    };
    let language = a.language.unwrap_or_else(|| {
        a.native
            .file_stem()
            .map_or_else(|| "corpus".into(), |s| s.to_string_lossy().into_owned())
    });
    let config = SweepConfig {
        language,
        sizes: a.sizes,
        mode: a.word_mode,
        train: TrainConfig {
            split_by_whitespace: a.split_ws,
            character_coverage: a.coverage,
            ..TrainConfig::default()
        },
    };
    let outcome = sweep_vocab_sizes(&native, &romanized, &config, &romanizer)?;
    for (size, reason) in &outcome.failures {
        eprintln!("warning: size {size}: {reason}");
    }
    if outcome.measurements.is_empty() {
        return Err(DataError::Other("no sweep row could be computed".into()));
    }
    let mut w = open_out(a.out.as_ref())?;
    write_sweep_csv(&outcome.rows(), &mut w)?;
    w.flush().map_err(io_err("<output>"))
}

fn bench(engines: &Engines, a: BenchArgs) -> Result<()> {
    let corpus = synthetic_corpus(a.seed, a.docs).join("\n");
    let summary = romanlab::pipeline::stream_romanize_io(
        corpus.as_bytes(),
        io::sink(),
        &engines.bind(a.scheme),
        &RecordFormat::PlainLines,
        a.workers as usize,
        4096,
    )?;
    let mut value = serde_json::to_value(&summary).map_err(|e| DataError::Other(e.to_string()))?;
    value["workers"] = a.workers.into();
    value["scheme"] = a.scheme.to_string().into();
    write_json(None, &value)
}
