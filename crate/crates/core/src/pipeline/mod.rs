//! Parallel streaming romanization and vocabulary-size sweeps.

mod stream;
mod sweep;
mod synthetic;

pub use stream::{
    romanize_document, stream_romanize, stream_romanize_io, stream_romanize_with, DocStats, PipelineConfig,
    RecordFormat, Summary,
};
pub use sweep::{
    measure, sweep_vocab_sizes, write_sweep_csv, SweepConfig, SweepMeasurement, SweepOutcome, SweepRow,
    SWEEP_CSV_HEADER,
};
pub use synthetic::synthetic_corpus;

use crate::tokenlab::TokenlabError;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Tokenlab(#[from] TokenlabError),
    #[error("empty sweep")]
    EmptySweep,
    #[error("csv: {0}")]
    Csv(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::romanizer::{BoundScheme, Scheme};

    #[test]
    fn order_preserved_across_workers() {
        let corpus = synthetic_corpus(7, 300).join("\n");
        let scheme = BoundScheme::bundled(Scheme::Uroman);
        let run = |workers| {
            let mut out = Vec::new();
            let s = stream_romanize_io(
                corpus.as_bytes(),
                &mut out,
                &scheme,
                &RecordFormat::PlainLines,
                workers,
                17,
            )
            .unwrap();
            (String::from_utf8(out).unwrap(), s)
        };
        let (a, sa) = run(1);
        let (b, sb) = run(4);
        assert_eq!(a, b);
        assert_eq!(sa.documents, 300);
        assert_eq!(sa.chars_in, sb.chars_in);
        assert_eq!(sa.chars_in, sa.chars_passed + sa.chars_dropped);
        assert!(sa.chars_dropped > 0, "emoji are dropped");
    }

    #[test]
    fn malformed_json_passes_through() {
        let input = "{\"text\":\"Москва\",\"id\":1}\nnot json\n{\"id\":2}\n";
        let scheme = BoundScheme::bundled(Scheme::Uroman);
        let mut out = Vec::new();
        let fmt = RecordFormat::JsonLines { field: "text".into() };
        let s = stream_romanize_io(input.as_bytes(), &mut out, &scheme, &fmt, 2, 2).unwrap();
        let out = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines, ["{\"text\":\"Moskva\",\"id\":1}", "not json", "{\"id\":2}"]);
        assert_eq!(s.documents, 1);
        assert_eq!(s.malformed_records, 2);
        assert_eq!(s.malformed_indices, [1, 2]);
    }

    #[test]
    fn zero_workers_rejected() {
        let scheme = BoundScheme::bundled(Scheme::Uroman);
        let r = stream_romanize_io("a".as_bytes(), Vec::new(), &scheme, &RecordFormat::PlainLines, 0, 1);
        assert!(matches!(r, Err(PipelineError::InvalidConfig(_))));
    }

    #[test]
    fn empty_sweep_rejected() {
        let cfg = SweepConfig {
            language: "x".into(),
            sizes: vec![],
            mode: crate::tokenlab::WordCountMode::Whitespace,
            train: Default::default(),
        };
        let r = sweep_vocab_sizes(&["a".into()], &["a".into()], &cfg, &Scheme::Uroman);
        assert!(matches!(r, Err(PipelineError::EmptySweep)));
    }

    #[test]
    fn sweep_rows_sorted_and_written() {
        let native: Vec<String> = ["Привет мир", "мир труд май", "Москва столица"]
            .map(String::from)
            .to_vec();
        let scheme = BoundScheme::bundled(Scheme::Uroman);
        let romanized: Vec<String> = native.iter().map(|d| romanize_document(&scheme, d).0).collect();
        let cfg = SweepConfig {
            language: "ru".into(),
            sizes: vec![300, 280],
            mode: crate::tokenlab::WordCountMode::Whitespace,
            train: crate::tokenlab::TrainConfig {
                character_coverage: 1.0,
                ..Default::default()
            },
        };
        let out = sweep_vocab_sizes(&native, &romanized, &cfg, &Scheme::Uroman).unwrap();
        let rows = out.rows();
        assert_eq!(rows.iter().map(|r| r.vocab_size).collect::<Vec<_>>(), [280, 300]);
        let mut csv = Vec::new();
        write_sweep_csv(&rows, &mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.starts_with(&(SWEEP_CSV_HEADER.join(",") + "\n")));
        assert_eq!(csv.lines().count(), 3);
    }
}
