use romanlab::pipeline::{
    romanize_document, stream_romanize, stream_romanize_io, sweep_vocab_sizes, synthetic_corpus, write_sweep_csv,
    PipelineConfig, RecordFormat, SweepConfig,
};
use romanlab::tokenlab::observed_tokens;
use romanlab::{
    fertility, relative_fertility_change, token_collapse, train_bpe, BoundScheme, Romanizer, Scheme, TrainConfig,
    WordCountMode,
};

fn run(input: &str, scheme: Scheme, workers: usize) -> (String, romanlab::pipeline::Summary) {
    let mut out = Vec::new();
    let s = stream_romanize_io(
        input.as_bytes(),
        &mut out,
        &BoundScheme::bundled(scheme),
        &RecordFormat::PlainLines,
        workers,
        64,
    )
    .unwrap();
    (String::from_utf8(out).unwrap(), s)
}

#[test]
fn single_document() {
    let (out, s) = run("人人生而自由平等。\n", Scheme::Uroman, 2);
    assert_eq!(out, "renrenshengerziyoupingdeng.\n");
    assert_eq!(s.documents, 1);
    assert_eq!(s.chars_in, 9);
    let (out, s) = run("", Scheme::Uroman, 2);
    assert_eq!(out, "");
    assert_eq!(s.documents, 0);
}

#[test]
fn worker_count_does_not_change_bytes() {
    let corpus = synthetic_corpus(42, 2000).join("\n");
    for scheme in [Scheme::Uroman, Scheme::UconvAuto] {
        let (a, sa) = run(&corpus, scheme, 1);
        for workers in [3, 8] {
            let (b, sb) = run(&corpus, scheme, workers);
            assert_eq!(a, b);
            assert_eq!(
                (sa.chars_in, sa.chars_out, sa.chars_dropped),
                (sb.chars_in, sb.chars_out, sb.chars_dropped)
            );
        }
        assert_eq!(sa.chars_in, sa.chars_passed + sa.chars_dropped);
    }
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    std::fs::write(&a, "{\"id\":1,\"body\":\"Москва\"}\n{bad\n").unwrap();
    std::fs::write(&b, "{\"id\":3,\"body\":\"東京\"}").unwrap();
    let out = dir.path().join("out.jsonl");
    let stats = dir.path().join("stats.json");
    let config = PipelineConfig {
        input_paths: vec![a, b],
        output_path: Some(out.clone()),
        worker_count: 4,
        record_format: RecordFormat::JsonLines { field: "body".into() },
        stats_path: Some(stats.clone()),
        ..PipelineConfig::new(Scheme::Uroman)
    };
    let s = stream_romanize(&config).unwrap();
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        "{\"id\":1,\"body\":\"Moskva\"}\n{bad\n{\"id\":3,\"body\":\"dongjing\"}\n"
    );
    assert_eq!((s.documents, s.malformed_records), (2, 1));
    assert_eq!(s.malformed_indices, [1]);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(stats).unwrap()).unwrap();
    assert_eq!(json["documents"], 2);

    let missing = PipelineConfig {
        input_paths: vec![dir.path().join("nope.txt")],
        ..PipelineConfig::new(Scheme::Uroman)
    };
    assert!(stream_romanize(&missing).is_err());
}

#[test]
fn sweep_row_matches_stepwise_recomputation() {
    let native: Vec<String> = synthetic_corpus(1, 40);
    let bound = BoundScheme::bundled(Scheme::Uroman);
    let romanized: Vec<String> = native.iter().map(|d| romanize_document(&bound, d).0).collect();
    let train = TrainConfig {
        character_coverage: 1.0,
        ..TrainConfig::default()
    };
    let config = SweepConfig {
        language: "mix".into(),
        sizes: vec![400],
        mode: WordCountMode::Whitespace,
        train: train.clone(),
    };
    let outcome = sweep_vocab_sizes(&native, &romanized, &config, &Scheme::Uroman).unwrap();
    assert!(outcome.failures.is_empty(), "{:?}", outcome.failures);
    let row = &outcome.rows()[0];

    let at = TrainConfig {
        vocab_size: 400,
        ..train
    };
    let nv = train_bpe(&native, &at).unwrap();
    let rv = train_bpe(&romanized, &at).unwrap();
    let fn_ = fertility(&nv, &native, WordCountMode::Whitespace).unwrap();
    let fr = fertility(&rv, &romanized, WordCountMode::Whitespace).unwrap();
    let fr = romanlab::FertilityReport::new(fr.token_count, fn_.word_count, fr.word_count_mode).unwrap();
    let change = relative_fertility_change(&fr, &fn_).unwrap();
    let collapse = token_collapse(observed_tokens(&nv, &native), |t| Scheme::Uroman.romanize(t)).unwrap();

    assert_eq!(row.vocab_size, 400);
    assert_eq!(row.fertility_native, fn_.fertility_f64());
    assert_eq!(row.fertility_romanized, fr.fertility_f64());
    assert_eq!(row.rel_fertility_change, change);
    assert_eq!(row.collapse_loss, collapse.loss_f64());
}

#[test]
fn sweep_rows_reproduce_from_stored_vocabularies() {
    let native = synthetic_corpus(2, 60);
    let bound = BoundScheme::bundled(Scheme::Uroman);
    let romanized: Vec<String> = native.iter().map(|d| romanize_document(&bound, d).0).collect();
    let config = SweepConfig {
        language: "mix".into(),
        sizes: vec![100_000, 350, 400],
        mode: WordCountMode::Whitespace,
        train: TrainConfig {
            character_coverage: 1.0,
            ..TrainConfig::default()
        },
    };
    let outcome = sweep_vocab_sizes(&native, &romanized, &config, &Scheme::Uroman).unwrap();
    let rows = outcome.rows();
    assert_eq!(rows.iter().map(|r| r.vocab_size).collect::<Vec<_>>(), [350, 400]);
    // the corpus cannot support the largest size; that row fails alone
    assert_eq!(outcome.failures.len(), 1);
    assert_eq!(outcome.failures[0].0, 100_000);
    for w in rows.windows(2) {
        assert!(w[1].fertility_native <= w[0].fertility_native);
    }
    let dir = tempfile::tempdir().unwrap();
    let nv_path = dir.path().join("native.json");
    let rv_path = dir.path().join("romanized.json");
    outcome.native_vocab.save(&nv_path).unwrap();
    outcome.romanized_vocab.save(&rv_path).unwrap();
    let nv = romanlab::Vocabulary::load(&nv_path).unwrap();
    let rv = romanlab::Vocabulary::load(&rv_path).unwrap();
    for row in &rows {
        let m = romanlab::pipeline::measure(
            "mix",
            row.vocab_size,
            &nv,
            &rv,
            &native,
            &romanized,
            WordCountMode::Whitespace,
            &Scheme::Uroman,
        )
        .unwrap();
        assert_eq!(&m.row, row);
    }
    let mut csv = Vec::new();
    write_sweep_csv(&rows, &mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "language,vocab_size,fertility_native,fertility_romanized,rel_fertility_change,collapse_loss"
    );
    assert_eq!(lines.count(), 2);
}
