//! Romanization engines, transliteration schemes and tokenizer diagnostics.
//!
//! - [`ucd`]: Unicode Character Database ingestion, normalization, script runs.
//! - [`uroman`]: ASCII-constrained universal romanizer.
//! - [`scheme`]: rewrite-rule engine and the ISO 9, ISO 15919, pinyin, Hepburn
//!   and ADEGN schemes with any-to-Latin dispatch.
//! - [`tokenlab`]: BPE training and encoding, fertility, token collapse.
//! - [`pipeline`]: parallel order-preserving corpus romanization and
//!   vocabulary-size sweeps.

pub mod data;
pub mod pinyin;
pub mod pipeline;
pub mod romanizer;
pub mod scheme;
pub mod tokenlab;
pub mod ucd;
pub mod uroman;

pub use pinyin::{HanReadings, Reading};
pub use romanizer::{BoundScheme, EngineError, Engines, Romanizer, Scheme};
pub use scheme::{
    apply_ruleset, compile_ruleset, invert_iso9, uconv, InvertError, RewriteRule, RuleError, RuleSet, SchemeId,
    SchemeRegistry, UconvDiagnostics, UconvTarget,
};
pub use tokenlab::{
    count_words, decode, encode, fertility, relative_fertility_change, token_collapse, train_bpe, CollapseReport,
    FertilityReport, TokenlabError, TrainConfig, Vocabulary, WordCountMode, WORD_BOUNDARY,
};
pub use ucd::{
    load_character_database, normalize, CharacterDatabase, CodePointRecord, GeneralCategory, NormalizationForm,
    ScriptRun, ScriptTag, UcdError,
};
pub use uroman::{latin_from_unicode_name, uroman, Romanization, RomanizedSpan, Tier, Uroman};
