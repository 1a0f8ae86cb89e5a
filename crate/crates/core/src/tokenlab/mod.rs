//! Byte-pair encoding plus the fertility and token-collapse diagnostics.

mod metrics;
mod train;
mod vocab;

pub use metrics::{
    count_words, fertility, fertility_with_word_count, observed_tokens, relative_fertility_change,
    relative_fertility_change_exact, token_collapse, CollapseReport, CollisionGroup, FertilityReport, WordCountMode,
};
pub use train::train_bpe;
pub use vocab::{byte_token, TrainConfig, Vocabulary, UNK_TOKEN, VOCAB_FORMAT_VERSION};

/// Prefixed to word-initial pieces; stands for a space.
pub const WORD_BOUNDARY: char = '\u{2581}';

/// Default vocabulary-size grid.
pub const DEFAULT_SWEEP_SIZES: [usize; 3] = [10_112, 25_088, 50_048];

#[derive(Debug, thiserror::Error)]
pub enum TokenlabError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("empty token set")]
    EmptyTokenSet,
    #[error("vocabulary size {requested} is below the base inventory of {minimum}")]
    VocabTooSmall { requested: usize, minimum: usize },
    #[error("vocabulary size {requested} unreachable: corpus supports at most {achievable} tokens")]
    VocabUnreachable { requested: usize, achievable: usize },
    #[error("cannot truncate to {requested} tokens (valid range {minimum}..={maximum})")]
    TruncateOutOfRange {
        requested: usize,
        minimum: usize,
        maximum: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("unknown token id {0}")]
    UnknownTokenId(u32),
    #[error("byte tokens {0:02X?} do not form valid UTF-8")]
    InvalidByteSequence(Vec<u8>),
    #[error("word-count modes differ: test uses {test:?}, baseline uses {baseline:?}")]
    ModeMismatch {
        test: WordCountMode,
        baseline: WordCountMode,
    },
    #[error("baseline fertility is zero")]
    ZeroBaseline,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Token strings for `text`.
pub fn encode(vocab: &Vocabulary, text: &str) -> Vec<String> {
    vocab.encode_pieces(text).into_iter().map(str::to_string).collect()
}

pub fn decode<S: AsRef<str>>(vocab: &Vocabulary, tokens: &[S]) -> Result<String, TokenlabError> {
    vocab.decode_pieces(tokens)
}
