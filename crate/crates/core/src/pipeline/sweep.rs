use std::io::Write;

use serde::Serialize;

use super::PipelineError;
use crate::romanizer::Romanizer;
use crate::tokenlab::{
    fertility, fertility_with_word_count, observed_tokens, relative_fertility_change, token_collapse, train_bpe,
    CollapseReport, FertilityReport, TokenlabError, TrainConfig, Vocabulary, WordCountMode,
};

pub const SWEEP_CSV_HEADER: [&str; 6] = [
    "language",
    "vocab_size",
    "fertility_native",
    "fertility_romanized",
    "rel_fertility_change",
    "collapse_loss",
];

/// One `(language, V)` measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub language: String,
    pub vocab_size: usize,
    pub fertility_native: f64,
    pub fertility_romanized: f64,
    pub rel_fertility_change: f64,
    pub collapse_loss: f64,
}

/// A row plus the exact reports it was derived from.
#[derive(Debug, Clone)]
pub struct SweepMeasurement {
    pub row: SweepRow,
    pub native: FertilityReport,
    pub romanized: FertilityReport,
    pub collapse: CollapseReport,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub language: String,
    pub sizes: Vec<usize>,
    pub mode: WordCountMode,
    /// `vocab_size` is ignored; the sweep trains to the largest size.
    pub train: TrainConfig,
}

#[derive(Debug)]
pub struct SweepOutcome {
    /// Sorted by vocabulary size.
    pub measurements: Vec<SweepMeasurement>,
    /// Sizes whose row could not be computed, with the reason.
    pub failures: Vec<(usize, String)>,
    /// Vocabularies at the largest trainable size; smaller ones are their
    /// truncations.
    pub native_vocab: Vocabulary,
    pub romanized_vocab: Vocabulary,
}

impl SweepOutcome {
    pub fn rows(&self) -> Vec<SweepRow> {
        self.measurements.iter().map(|m| m.row.clone()).collect()
    }
}

/// Trains to `size`, or to the largest size the corpus supports when `size`
/// is out of reach.
fn train_capped(corpus: &[String], config: &TrainConfig, size: usize) -> Result<Vocabulary, TokenlabError> {
    let config = TrainConfig {
        vocab_size: size,
        ..config.clone()
    };
    match train_bpe(corpus, &config) {
        Err(TokenlabError::VocabUnreachable { achievable, .. }) => train_bpe(
            corpus,
            &TrainConfig {
                vocab_size: achievable,
                ..config
            },
        ),
        Err(TokenlabError::VocabTooSmall { minimum, .. }) => train_bpe(
            corpus,
            &TrainConfig {
                vocab_size: minimum,
                ..config
            },
        ),
        other => other,
    }
}

/// Metrics for one size from the two full vocabularies.
#[allow(clippy::too_many_arguments)]
pub fn measure(
    language: &str,
    size: usize,
    native_vocab: &Vocabulary,
    romanized_vocab: &Vocabulary,
    native: &[String],
    romanized: &[String],
    mode: WordCountMode,
    romanizer: &dyn Romanizer,
) -> Result<SweepMeasurement, TokenlabError> {
    let nv = native_vocab.truncate(size)?;
    let rv = romanized_vocab.truncate(size)?;
    let native_report = fertility(&nv, native, mode)?;
    let romanized_report = fertility_with_word_count(&rv, romanized, native_report.word_count, mode)?;
    let change = relative_fertility_change(&romanized_report, &native_report)?;
    let collapse = token_collapse(observed_tokens(&nv, native), |t| romanizer.romanize(t))?;
    Ok(SweepMeasurement {
        row: SweepRow {
            language: language.to_string(),
            vocab_size: size,
            fertility_native: native_report.fertility_f64(),
            fertility_romanized: romanized_report.fertility_f64(),
            rel_fertility_change: change,
            collapse_loss: collapse.loss_f64(),
        },
        native: native_report,
        romanized: romanized_report,
        collapse,
    })
}

/// Fertility and collapse across vocabulary sizes. Each corpus is trained
/// once at the largest size; smaller vocabularies truncate its merge list.
pub fn sweep_vocab_sizes(
    native: &[String],
    romanized: &[String],
    config: &SweepConfig,
    romanizer: &dyn Romanizer,
) -> Result<SweepOutcome, PipelineError> {
    let mut sizes = config.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let Some(&max) = sizes.last() else {
        return Err(PipelineError::EmptySweep);
    };
    if native.len() != romanized.len() {
        return Err(PipelineError::InvalidConfig(format!(
            "native corpus has {} documents, romanized corpus has {}",
            native.len(),
            romanized.len()
        )));
    }
    let native_vocab = train_capped(native, &config.train, max)?;
    let romanized_vocab = train_capped(romanized, &config.train, max)?;
    let mut measurements = Vec::new();
    let mut failures = Vec::new();
    for size in sizes {
        match measure(
            &config.language,
            size,
            &native_vocab,
            &romanized_vocab,
            native,
            romanized,
            config.mode,
            romanizer,
        ) {
            Ok(m) => measurements.push(m),
            Err(e) => failures.push((size, e.to_string())),
        }
    }
    Ok(SweepOutcome {
        measurements,
        failures,
        native_vocab,
        romanized_vocab,
    })
}

/// Writes rows as CSV with the fixed header.
pub fn write_sweep_csv(rows: &[SweepRow], writer: impl Write) -> Result<(), PipelineError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    let csv_err = |e: csv::Error| PipelineError::Csv(e.to_string());
    w.write_record(SWEEP_CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|source| PipelineError::Io {
        path: "<csv>".into(),
        source,
    })
}
