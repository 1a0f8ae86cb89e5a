use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FRAGMENTS: &[&str] = &[
    "Чайковский",
    "Москва",
    "Привет, мир",
    "नमस्ते",
    "भारत",
    "北京",
    "你好世界",
    "東京",
    "ひらがな",
    "カタカナ",
    "ሰላም",
    "አዲስ አበባ",
    "مرحبا",
    "Tiếng Việt",
    "Hà Nội",
    "hello world",
    "romanization",
    "2024",
    "naïve café",
    "🙂",
    "Αθήνα",
];

/// Deterministic mixed-script documents for throughput tests. The same
/// `(seed, docs)` always yields the same corpus.
pub fn synthetic_corpus(seed: u64, docs: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..docs)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let words: Vec<&str> = (0..n).map(|_| *FRAGMENTS.choose(&mut rng).unwrap()).collect();
            words.join(" ")
        })
        .collect()
}
