use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::vocab::Vocabulary;
use super::{TokenlabError, WORD_BOUNDARY};

/// How `#Words` is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordCountMode {
    /// Maximal runs of non-whitespace.
    Whitespace,
    /// Every non-whitespace character, punctuation included.
    Character,
}

impl std::str::FromStr for WordCountMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "whitespace" => Ok(Self::Whitespace),
            "character" => Ok(Self::Character),
            other => Err(format!(
                "unknown word mode {other:?} (expected whitespace or character)"
            )),
        }
    }
}

pub fn count_words(text: &str, mode: WordCountMode) -> u64 {
    match mode {
        WordCountMode::Whitespace => text.split_whitespace().count() as u64,
        WordCountMode::Character => text.chars().filter(|c| !c.is_whitespace()).count() as u64,
    }
}

/// `#Tokens / #Words`. The ratio is always derived from the two counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FertilityReport {
    pub token_count: u64,
    pub word_count: u64,
    pub word_count_mode: WordCountMode,
}

#[derive(Serialize, Deserialize)]
struct FertilityRecord {
    token_count: u64,
    word_count: u64,
    word_count_mode: WordCountMode,
    #[serde(default, skip_deserializing)]
    fertility: f64,
}

impl Serialize for FertilityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FertilityRecord {
            token_count: self.token_count,
            word_count: self.word_count,
            word_count_mode: self.word_count_mode,
            fertility: self.fertility_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FertilityReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FertilityRecord::deserialize(d)?;
        if r.word_count == 0 {
            return Err(serde::de::Error::custom("word_count must be positive"));
        }
        Ok(Self {
            token_count: r.token_count,
            word_count: r.word_count,
            word_count_mode: r.word_count_mode,
        })
    }
}

impl FertilityReport {
    pub fn new(token_count: u64, word_count: u64, word_count_mode: WordCountMode) -> Result<Self, TokenlabError> {
        if word_count == 0 {
            return Err(TokenlabError::EmptyCorpus);
        }
        Ok(Self {
            token_count,
            word_count,
            word_count_mode,
        })
    }

    pub fn fertility(&self) -> Ratio<u64> {
        Ratio::new(self.token_count, self.word_count)
    }

    pub fn fertility_f64(&self) -> f64 {
        self.token_count as f64 / self.word_count as f64
    }
}

/// Tokens per word over a corpus.
pub fn fertility<I, S>(vocab: &Vocabulary, corpus: I, mode: WordCountMode) -> Result<FertilityReport, TokenlabError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let (tokens, words) = corpus.into_iter().fold((0u64, 0u64), |(t, w), doc| {
        let doc = doc.as_ref();
        (t + vocab.encode(doc).len() as u64, w + count_words(doc, mode))
    });
    FertilityReport::new(tokens, words, mode)
}

/// Fertility of `corpus` measured against an externally supplied word count,
/// e.g. the native text's count for a romanized corpus.
pub fn fertility_with_word_count<I, S>(
    vocab: &Vocabulary,
    corpus: I,
    word_count: u64,
    mode: WordCountMode,
) -> Result<FertilityReport, TokenlabError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let tokens = corpus.into_iter().map(|d| vocab.encode(d.as_ref()).len() as u64).sum();
    FertilityReport::new(tokens, word_count, mode)
}

/// `Fertility_test / Fertility_baseline − 1`, exactly.
pub fn relative_fertility_change_exact(
    test: &FertilityReport,
    baseline: &FertilityReport,
) -> Result<Ratio<i128>, TokenlabError> {
    if test.word_count_mode != baseline.word_count_mode {
        return Err(TokenlabError::ModeMismatch {
            test: test.word_count_mode,
            baseline: baseline.word_count_mode,
        });
    }
    if baseline.token_count == 0 {
        return Err(TokenlabError::ZeroBaseline);
    }
    let num = test.token_count as i128 * baseline.word_count as i128;
    let den = test.word_count as i128 * baseline.token_count as i128;
    Ok(Ratio::new(num, den) - 1)
}

pub fn relative_fertility_change(test: &FertilityReport, baseline: &FertilityReport) -> Result<f64, TokenlabError> {
    let r = relative_fertility_change_exact(test, baseline)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionGroup {
    pub romanized: String,
    pub originals: Vec<String>,
}

/// Unique-token counts before and after romanization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport {
    pub unique_orig: u64,
    pub unique_romanized: u64,
    /// Groups of two or more original tokens sharing one romanized form.
    pub collision_groups: Vec<CollisionGroup>,
}

impl CollapseReport {
    /// `1 − unique_romanized / unique_orig`.
    pub fn loss(&self) -> Ratio<u64> {
        Ratio::from_integer(1) - Ratio::new(self.unique_romanized, self.unique_orig)
    }

    pub fn loss_f64(&self) -> f64 {
        let r = self.loss();
        *r.numer() as f64 / *r.denom() as f64
    }
}

impl Serialize for CollapseReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CollapseReport", 4)?;
        st.serialize_field("unique_orig", &self.unique_orig)?;
        st.serialize_field("unique_romanized", &self.unique_romanized)?;
        st.serialize_field("loss", &self.loss_f64())?;
        st.serialize_field("collision_groups", &self.collision_groups)?;
        st.end()
    }
}

/// Romanizes each distinct observed token (marker removed, empties dropped)
/// and measures how many distinctions survive.
pub fn token_collapse<I, S, F>(observed: I, romanize: F) -> Result<CollapseReport, TokenlabError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
    F: Fn(&str) -> String,
{
    let domain: BTreeSet<String> = observed
        .into_iter()
        .map(|t| t.as_ref().replace(WORD_BOUNDARY, ""))
        .filter(|t| !t.is_empty())
        .collect();
    if domain.is_empty() {
        return Err(TokenlabError::EmptyTokenSet);
    }
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for token in domain.iter() {
        groups.entry(romanize(token)).or_default().push(token.clone());
    }
    Ok(CollapseReport {
        unique_orig: domain.len() as u64,
        unique_romanized: groups.len() as u64,
        collision_groups: groups
            .into_iter()
            .filter(|(_, g)| g.len() >= 2)
            .map(|(romanized, originals)| CollisionGroup { romanized, originals })
            .collect(),
    })
}

/// Distinct non-byte tokens produced by encoding `corpus`.
pub fn observed_tokens<I, S>(vocab: &Vocabulary, corpus: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut ids = BTreeSet::new();
    for doc in corpus {
        ids.extend(vocab.encode(doc.as_ref()));
    }
    ids.into_iter()
        .filter(|&id| !vocab.is_special(id))
        .filter_map(|id| vocab.token(id).map(str::to_string))
        .collect()
}
