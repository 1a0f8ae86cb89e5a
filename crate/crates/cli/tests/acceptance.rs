//! One line per acceptance criterion; exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use common::{naive_encode, naive_word_count, REFERENCE_SENTENCES, RUSSIAN};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use romanlab::pipeline::{
    measure, stream_romanize_io, sweep_vocab_sizes, synthetic_corpus, write_sweep_csv, RecordFormat, SweepConfig,
    SWEEP_CSV_HEADER,
};
use romanlab::{
    apply_ruleset, fertility, invert_iso9, relative_fertility_change, token_collapse, train_bpe, uroman, BoundScheme,
    Romanizer, Scheme, SchemeId, SchemeRegistry, TokenlabError, TrainConfig, Uroman, Vocabulary, WordCountMode,
};

/// Wall-clock bound for the golden criteria.
const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const ISO9_CASES: usize = 10_000;
const FERTILITY_CORPORA: usize = 120;
const COLLAPSE_SETS: usize = 120;
const MONOTONE_CORPORA: usize = 60;
const PIPELINE_DOCS: usize = 10_000;
/// Size at which the two fixture corpora are compared.
const FIXTURE_V: usize = 800;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_romanlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn romanlab");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn goldens(scheme: &str, pick: fn(&(&'static str, &'static str, &'static str)) -> &'static str) -> Outcome {
    let input: String = REFERENCE_SENTENCES.iter().map(|r| format!("{}\n", r.0)).collect();
    let started = Instant::now();
    let (code, out, err) = cli(&["romanize", "--scheme", scheme], &input);
    let elapsed = started.elapsed();
    check(code == 0, || format!("exit {code}: {err}"))?;
    let got: Vec<&str> = out.lines().collect();
    let mut exact = 0;
    for (row, line) in REFERENCE_SENTENCES.iter().zip(&got) {
        if *line == pick(row) {
            exact += 1;
        } else {
            return Err(format!("{:?}: got {line:?}, want {:?}", row.0, pick(row)));
        }
    }
    check(got.len() == 5, || format!("{} output lines", got.len()))?;
    check(elapsed < GOLDEN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{exact}/5 exact in {:.0} ms", elapsed.as_secs_f64() * 1e3))
}

fn criterion_1() -> Outcome {
    goldens("uroman", |r| r.1)
}

fn criterion_2() -> Outcome {
    goldens("uconv-auto", |r| r.2)
}

fn criterion_3() -> Outcome {
    let (code, out, err) = cli(&["romanize", "--scheme", "iso9"], "Чайковский\n");
    check(code == 0 && out == "Čajkovskij\n", || {
        format!("iso9 gave {out:?} (exit {code}) {err}")
    })?;
    let (code, back, err) = cli(&["invert", "--scheme", "iso9"], &out);
    check(code == 0 && back == "Чайковский\n", || {
        format!("invert gave {back:?} (exit {code}) {err}")
    })?;
    let (_, transcribed, _) = cli(&["romanize", "--scheme", "uroman"], "Чайковский\n");
    check(transcribed != out, || "transcription equals transliteration".into())?;
    Ok(format!(
        "Чайковский -> Čajkovskij -> Чайковский; uroman gives {}",
        transcribed.trim()
    ))
}

fn criterion_4() -> Outcome {
    let iso9 = SchemeRegistry::bundled().get(SchemeId::Iso9).unwrap();
    let alphabet: Vec<char> = RUSSIAN.chars().chain([' ', '.']).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let started = Instant::now();
    let mut failures = 0;
    let mut first = None;
    for _ in 0..ISO9_CASES {
        let len = rng.gen_range(0..32);
        let x: String = (0..len).map(|_| *alphabet.choose(&mut rng).unwrap()).collect();
        let ok = invert_iso9(&apply_ruleset(iso9, &x)).is_ok_and(|y| y == x);
        if !ok {
            failures += 1;
            first.get_or_insert(x);
        }
    }
    check(failures == 0, || format!("{failures} failures, first {first:?}"))?;
    Ok(format!(
        "{ISO9_CASES} strings, 0 failures in {:.2} s",
        started.elapsed().as_secs_f64()
    ))
}

fn train_reachable(corpus: &[String], config: TrainConfig) -> Vocabulary {
    match train_bpe(corpus, &config) {
        Err(TokenlabError::VocabUnreachable { achievable, .. }) => train_bpe(
            corpus,
            &TrainConfig {
                vocab_size: achievable,
                ..config
            },
        )
        .unwrap(),
        Err(TokenlabError::VocabTooSmall { minimum, .. }) => train_bpe(
            corpus,
            &TrainConfig {
                vocab_size: minimum,
                ..config
            },
        )
        .unwrap(),
        other => other.unwrap(),
    }
}

fn random_doc(rng: &mut ChaCha8Rng, alphabet: &[char]) -> String {
    let len = rng.gen_range(1..40);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.18) {
                ' '
            } else {
                *alphabet.choose(rng).unwrap()
            }
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphabet = ['a', 'b', 'n', 'о', 'д', 'ж', '人', '生', '。', '7'];
    let mut compared = 0;
    for round in 0..FERTILITY_CORPORA {
        let corpus: Vec<String> = (0..rng.gen_range(1..6))
            .map(|_| random_doc(&mut rng, &alphabet))
            .collect();
        let vocab = train_reachable(
            &corpus,
            TrainConfig {
                vocab_size: 256 + rng.gen_range(8..40),
                character_coverage: if rng.gen_bool(0.5) { 1.0 } else { 0.9 },
                split_by_whitespace: rng.gen_bool(0.7),
                ..TrainConfig::default()
            },
        );
        let test: Vec<String> = (0..3).map(|_| random_doc(&mut rng, &alphabet)).collect();
        for mode in [WordCountMode::Whitespace, WordCountMode::Character] {
            let tokens: u64 = test.iter().map(|d| naive_encode(&vocab, d).len() as u64).sum();
            let words: u64 = test
                .iter()
                .map(|d| naive_word_count(d, mode == WordCountMode::Character))
                .sum();
            let r = fertility(&vocab, &test, mode).map_err(|e| format!("round {round}: {e}"))?;
            check(r.fertility() == Ratio::new(tokens, words), || {
                format!(
                    "round {round}: {}/{} vs oracle {tokens}/{words}",
                    r.token_count, r.word_count
                )
            })?;
            compared += 1;
        }
    }
    let hello = ["hello world"; 2];
    let v = train_bpe(
        hello,
        &TrainConfig {
            vocab_size: 256 + 8 + 10,
            character_coverage: 1.0,
            ..TrainConfig::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let r = fertility(&v, ["hello world"], WordCountMode::Whitespace).map_err(|e| e.to_string())?;
    check(r.fertility() == Ratio::from_integer(1), || {
        format!("hello world fertility {}", r.fertility())
    })?;
    let change = relative_fertility_change(&r, &r).map_err(|e| e.to_string())?;
    check(change == 0.0, || format!("self change {change}"))?;
    Ok(format!(
        "{compared} exact rational matches; whole-word fertility 1, self change 0"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pool = [
        '人', '仁', '任', '生', '声', '是', '市', '事', '十', '时', 'е', 'ё', 'ш', 'щ', 'ь', 'a', '▁',
    ];
    let mut checked = 0;
    for round in 0..COLLAPSE_SETS {
        let tokens: Vec<String> = (0..rng.gen_range(1..16))
            .map(|_| {
                (0..rng.gen_range(1..4))
                    .map(|_| *pool.choose(&mut rng).unwrap())
                    .collect()
            })
            .collect();
        for scheme in [Scheme::Uroman, Scheme::UconvAuto] {
            let domain: BTreeSet<String> = tokens
                .iter()
                .map(|t| t.replace('▁', ""))
                .filter(|t| !t.is_empty())
                .collect();
            let image: BTreeSet<String> = domain.iter().map(|t| scheme.romanize(t)).collect();
            let r = match token_collapse(&tokens, |t| scheme.romanize(t)) {
                Ok(r) => r,
                Err(_) if domain.is_empty() => continue,
                Err(e) => return Err(format!("round {round}: {e}")),
            };
            let want = Ratio::from_integer(1) - Ratio::new(image.len() as u64, domain.len() as u64);
            check(r.loss() == want, || {
                format!("round {round} {scheme}: loss {} vs {want}", r.loss())
            })?;
            let grouped: u64 = r.collision_groups.iter().map(|g| g.originals.len() as u64 - 1).sum();
            check(grouped == r.unique_orig - r.unique_romanized, || {
                format!(
                    "round {round} {scheme}: groups {grouped} vs {}",
                    r.unique_orig - r.unique_romanized
                )
            })?;
            checked += 1;
        }
    }
    let readings = Uroman::bundled().readings();
    let mut seen = std::collections::HashMap::new();
    let mut witness = None;
    for (c, _) in readings.iter() {
        let r = uroman(&c.to_string());
        if let Some(&prev) = seen.get(&r) {
            witness = Some((prev, c, r));
            break;
        }
        seen.insert(r, c);
    }
    let (a, b, r) = witness.ok_or("no Han pair shares a romanization")?;
    let pair = token_collapse([a.to_string(), b.to_string()], uroman).map_err(|e| e.to_string())?;
    check(pair.loss_f64() > 0.0, || "witness pair has zero loss".into())?;
    Ok(format!(
        "{checked} sets exact; witness {a} / {b} -> {r} (loss {})",
        pair.loss_f64()
    ))
}

fn fixture(name: &str) -> Vec<String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alphabet = ['a', 'b', 'c', 'о', 'н', 'и', '人', '自', '1'];
    let mut violations = 0;
    let mut steps = 0;
    for _ in 0..MONOTONE_CORPORA {
        let corpus: Vec<String> = (0..rng.gen_range(2..8))
            .map(|_| random_doc(&mut rng, &alphabet))
            .collect();
        let romanized: Vec<String> = corpus.iter().map(|d| uroman(d)).collect();
        let full = train_reachable(
            &corpus,
            TrainConfig {
                vocab_size: 100_000,
                character_coverage: 1.0,
                ..TrainConfig::default()
            },
        );
        let config = SweepConfig {
            language: "rand".into(),
            sizes: (full.base_size()..=full.len()).collect(),
            mode: WordCountMode::Whitespace,
            train: TrainConfig {
                character_coverage: 1.0,
                ..TrainConfig::default()
            },
        };
        let outcome = sweep_vocab_sizes(&corpus, &romanized, &config, &Scheme::Uroman).map_err(|e| e.to_string())?;
        let fert: Vec<Ratio<u64>> = outcome.measurements.iter().map(|m| m.native.fertility()).collect();
        for w in fert.windows(2) {
            steps += 1;
            if w[1] > w[0] {
                violations += 1;
            }
        }
    }
    check(violations == 0, || format!("{violations} increases over {steps} steps"))?;

    let mut loss = Vec::new();
    for (name, mode) in [
        ("ru.txt", WordCountMode::Whitespace),
        ("zh.txt", WordCountMode::Character),
    ] {
        let native = fixture(name);
        let romanized: Vec<String> = native.iter().map(|d| uroman(d)).collect();
        let config = SweepConfig {
            language: name.into(),
            sizes: vec![FIXTURE_V],
            mode,
            train: TrainConfig::default(),
        };
        let outcome = sweep_vocab_sizes(&native, &romanized, &config, &Scheme::Uroman).map_err(|e| e.to_string())?;
        let row = outcome
            .measurements
            .first()
            .ok_or_else(|| format!("{name}: {:?}", outcome.failures))?;
        loss.push(row.row.collapse_loss);
    }
    check(loss[1] > loss[0], || {
        format!("zh loss {} not above ru loss {}", loss[1], loss[0])
    })?;
    Ok(format!(
        "0 violations over {steps} truncation steps in {MONOTONE_CORPORA} corpora; collapse at V={FIXTURE_V}: zh {:.4} > ru {:.4}",
        loss[1], loss[0]
    ))
}

fn criterion_8() -> Outcome {
    let corpus = synthetic_corpus(8, PIPELINE_DOCS).join("\n");
    let scheme = BoundScheme::bundled(Scheme::Uroman);
    let mut reference: Option<Vec<u8>> = None;
    let mut dropped = 0;
    for workers in [1, 4, 16] {
        let mut out = Vec::new();
        let s = stream_romanize_io(
            corpus.as_bytes(),
            &mut out,
            &scheme,
            &RecordFormat::PlainLines,
            workers,
            1024,
        )
        .map_err(|e| e.to_string())?;
        check(s.documents == PIPELINE_DOCS as u64, || {
            format!("{} documents", s.documents)
        })?;
        check(s.chars_in == s.chars_passed + s.chars_dropped, || {
            format!("{} != {} + {}", s.chars_in, s.chars_passed, s.chars_dropped)
        })?;
        dropped = s.chars_dropped;
        match &reference {
            None => reference = Some(out),
            Some(r) => check(*r == out, || format!("{workers} workers differ from 1"))?,
        }
    }
    Ok(format!(
        "{PIPELINE_DOCS} docs byte-identical for 1/4/16 workers; accounting balances ({dropped} dropped)"
    ))
}

fn criterion_9() -> Outcome {
    let native = fixture("ru.txt");
    let romanized: Vec<String> = native.iter().map(|d| uroman(d)).collect();
    let config = SweepConfig {
        language: "ru".into(),
        sizes: vec![500, FIXTURE_V],
        mode: WordCountMode::Whitespace,
        train: TrainConfig::default(),
    };
    let outcome = sweep_vocab_sizes(&native, &romanized, &config, &Scheme::Uroman).map_err(|e| e.to_string())?;
    let rows = outcome.rows();
    let mut csv = Vec::new();
    write_sweep_csv(&rows, &mut csv).map_err(|e| e.to_string())?;
    let csv = String::from_utf8(csv).unwrap();
    let header = csv.lines().next().unwrap_or_default();
    check(header == SWEEP_CSV_HEADER.join(","), || format!("header {header:?}"))?;
    for row in &rows {
        let again = measure(
            "ru",
            row.vocab_size,
            &outcome.native_vocab,
            &outcome.romanized_vocab,
            &native,
            &romanized,
            WordCountMode::Whitespace,
            &Scheme::Uroman,
        )
        .map_err(|e| e.to_string())?;
        check(again.row == *row, || format!("row {} not reproducible", row.vocab_size))?;
    }
    Ok(
        "downstream accuracy and published fertility deltas are out of scope here; \
        sweep CSV carries the six plot fields and rows recompute from stored vocabularies"
            .into(),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("reference sentences, uroman", criterion_1),
        ("reference sentences, uconv-auto", criterion_2),
        ("transcription vs transliteration", criterion_3),
        ("ISO 9 invertibility", criterion_4),
        ("fertility oracle", criterion_5),
        ("collapse oracle", criterion_6),
        ("merge monotonicity and collapse ordering", criterion_7),
        ("pipeline determinism", criterion_8),
        ("desk-scale scope", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
