use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::PipelineError;
use crate::romanizer::{BoundScheme, Romanizer, Scheme};
use crate::ucd::{normalize, NormalizationForm};

/// How documents are framed in the input and output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordFormat {
    /// One document per line.
    PlainLines,
    /// One JSON object per line; the named string field is romanized.
    JsonLines { field: String },
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Read in order; empty means standard input.
    pub input_paths: Vec<PathBuf>,
    /// `None` means standard output.
    pub output_path: Option<PathBuf>,
    pub scheme: Scheme,
    pub worker_count: usize,
    pub record_format: RecordFormat,
    /// Where to write the summary as JSON.
    pub stats_path: Option<PathBuf>,
    /// Documents handed to the worker pool at once.
    pub batch_size: usize,
}

impl PipelineConfig {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            input_paths: Vec::new(),
            output_path: None,
            scheme,
            worker_count: 1,
            record_format: RecordFormat::PlainLines,
            stats_path: None,
            batch_size: 4096,
        }
    }
}

/// Completion summary. Character counts are over NFKC-normalized text.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub documents: u64,
    pub chars_in: u64,
    pub chars_out: u64,
    /// Input characters that produced output or passed through.
    pub chars_passed: u64,
    /// Input characters with no mapping in any tier.
    pub chars_dropped: u64,
    pub malformed_records: u64,
    /// 0-based indices of the first malformed records.
    pub malformed_indices: Vec<u64>,
    pub wall_time_secs: f64,
    pub chars_per_sec: f64,
    pub docs_per_sec: f64,
}

const MAX_REPORTED_MALFORMED: usize = 100;

impl Summary {
    fn absorb(&mut self, doc: &DocStats) {
        self.documents += 1;
        self.chars_in += doc.chars_in;
        self.chars_out += doc.chars_out;
        self.chars_passed += doc.chars_passed;
        self.chars_dropped += doc.chars_dropped;
    }

    fn finish(&mut self, started: Instant) {
        let secs = started.elapsed().as_secs_f64();
        self.wall_time_secs = secs;
        if secs > 0.0 {
            self.chars_per_sec = self.chars_in as f64 / secs;
            self.docs_per_sec = self.documents as f64 / secs;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DocStats {
    pub chars_in: u64,
    pub chars_out: u64,
    pub chars_passed: u64,
    pub chars_dropped: u64,
}

/// Romanizes one document and accounts for every input character.
pub fn romanize_document(scheme: &BoundScheme<'_>, text: &str) -> (String, DocStats) {
    match scheme.scheme() {
        Scheme::Uroman => {
            let r = scheme.uroman().spans(text);
            let out = r.output();
            let passed = r
                .spans
                .iter()
                .filter(|s| !s.dropped)
                .map(|s| s.input.len() as u64)
                .sum();
            let stats = DocStats {
                chars_in: r.normalized.chars().count() as u64,
                chars_out: out.chars().count() as u64,
                chars_passed: passed,
                chars_dropped: r.dropped() as u64,
            };
            (out, stats)
        }
        _ => {
            let chars_in = normalize(text, NormalizationForm::Nfkc).chars().count() as u64;
            let out = scheme.romanize(text);
            let stats = DocStats {
                chars_in,
                chars_out: out.chars().count() as u64,
                chars_passed: chars_in,
                chars_dropped: 0,
            };
            (out, stats)
        }
    }
}

enum Outcome {
    Doc(String, DocStats),
    Malformed(String),
}

fn process_record(scheme: &BoundScheme<'_>, format: &RecordFormat, line: &str) -> Outcome {
    match format {
        RecordFormat::PlainLines => {
            let (out, stats) = romanize_document(scheme, line);
            Outcome::Doc(out, stats)
        }
        RecordFormat::JsonLines { field } => {
            let Ok(serde_json::Value::Object(mut obj)) = serde_json::from_str::<serde_json::Value>(line) else {
                return Outcome::Malformed(line.to_string());
            };
            let Some(serde_json::Value::String(text)) = obj.get(field) else {
                return Outcome::Malformed(line.to_string());
            };
            let (out, stats) = romanize_document(scheme, text);
            obj.insert(field.clone(), serde_json::Value::String(out));
            match serde_json::to_string(&obj) {
                Ok(s) => Outcome::Doc(s, stats),
                Err(_) => Outcome::Malformed(line.to_string()),
            }
        }
    }
}

/// Romanizes records from `reader` into `writer` on `workers` threads.
/// Output order is input order. Malformed JSON records are written back
/// unchanged and counted.
pub fn stream_romanize_io(
    reader: impl BufRead,
    writer: impl Write,
    scheme: &BoundScheme<'_>,
    format: &RecordFormat,
    workers: usize,
    batch_size: usize,
) -> Result<Summary, PipelineError> {
    stream_lines(reader.lines(), writer, scheme, format, workers, batch_size)
}

fn stream_lines(
    mut lines: impl Iterator<Item = std::io::Result<String>>,
    mut writer: impl Write,
    scheme: &BoundScheme<'_>,
    format: &RecordFormat,
    workers: usize,
    batch_size: usize,
) -> Result<Summary, PipelineError> {
    if workers == 0 {
        return Err(PipelineError::InvalidConfig("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| PipelineError::InvalidConfig(e.to_string()))?;
    let started = Instant::now();
    let mut summary = Summary::default();
    let mut index = 0u64;
    let batch_size = batch_size.max(1);
    loop {
        let mut batch = Vec::with_capacity(batch_size);
        for line in lines.by_ref().take(batch_size) {
            batch.push(line.map_err(|source| PipelineError::Io {
                path: "<input>".into(),
                source,
            })?);
        }
        if batch.is_empty() {
            break;
        }
        let results: Vec<Outcome> = pool.install(|| {
            batch
                .par_iter()
                .map(|line| process_record(scheme, format, line))
                .collect()
        });
        for outcome in results {
            let text = match outcome {
                Outcome::Doc(text, stats) => {
                    summary.absorb(&stats);
                    text
                }
                Outcome::Malformed(text) => {
                    summary.malformed_records += 1;
                    if summary.malformed_indices.len() < MAX_REPORTED_MALFORMED {
                        summary.malformed_indices.push(index);
                    }
                    text
                }
            };
            index += 1;
            writer
                .write_all(text.as_bytes())
                .and_then(|_| writer.write_all(b"\n"))
                .map_err(|source| PipelineError::Io {
                    path: "<output>".into(),
                    source,
                })?;
        }
    }
    writer.flush().map_err(|source| PipelineError::Io {
        path: "<output>".into(),
        source,
    })?;
    summary.finish(started);
    Ok(summary)
}

/// Runs the configured pipeline over files or standard streams.
pub fn stream_romanize(config: &PipelineConfig) -> Result<Summary, PipelineError> {
    stream_romanize_with(config, &BoundScheme::bundled(config.scheme))
}

/// As [`stream_romanize`], with explicit engines; `config.scheme` is ignored.
pub fn stream_romanize_with(config: &PipelineConfig, scheme: &BoundScheme<'_>) -> Result<Summary, PipelineError> {
    let io_err = |path: &PathBuf| {
        let path = path.display().to_string();
        move |source| PipelineError::Io { path, source }
    };
    let lines: Box<dyn Iterator<Item = std::io::Result<String>>> = if config.input_paths.is_empty() {
        Box::new(BufReader::new(std::io::stdin()).lines())
    } else {
        let mut readers = Vec::with_capacity(config.input_paths.len());
        for path in &config.input_paths {
            readers.push(BufReader::new(File::open(path).map_err(io_err(path))?));
        }
        Box::new(readers.into_iter().flat_map(|r| r.lines()))
    };
    let writer: Box<dyn Write> = match &config.output_path {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err(path))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    let summary = stream_lines(
        lines,
        writer,
        scheme,
        &config.record_format,
        config.worker_count,
        config.batch_size,
    )?;
    if let Some(path) = &config.stats_path {
        let json = serde_json::to_string_pretty(&summary).unwrap_or_default();
        std::fs::write(path, json + "\n").map_err(io_err(path))?;
    }
    Ok(summary)
}
