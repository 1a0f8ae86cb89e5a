use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{TokenlabError, WORD_BOUNDARY};
use crate::ucd::{normalize, NormalizationForm};

pub const VOCAB_FORMAT_VERSION: u32 = 1;
pub const UNK_TOKEN: &str = "<unk>";

/// Trainer settings. Defaults match a 50k multilingual tokenizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub vocab_size: usize,
    pub split_by_whitespace: bool,
    pub byte_fallback: bool,
    pub character_coverage: f64,
    /// Pieces never mix digits with other characters.
    pub split_by_number: bool,
    /// Every document starts with a word-boundary marker.
    pub add_dummy_prefix: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            vocab_size: 50_048,
            split_by_whitespace: true,
            byte_fallback: true,
            character_coverage: 0.9999,
            split_by_number: true,
            add_dummy_prefix: true,
        }
    }
}

pub fn byte_token(b: u8) -> String {
    format!("<0x{b:02X}>")
}

fn parse_byte_token(s: &str) -> Option<u8> {
    let hex = s.strip_prefix("<0x")?.strip_suffix('>')?;
    if hex.len() != 2 || !hex.bytes().all(|b| b.is_ascii_digit() || (b'A'..=b'F').contains(&b)) {
        return None;
    }
    u8::from_str_radix(hex, 16).ok()
}

/// A trained subword inventory.
///
/// Token ids: the 256 byte tokens (or `<unk>` without byte fallback), then
/// base characters, then merge results in merge order.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    config: TrainConfig,
    tokens: Vec<String>,
    merges: Vec<(String, String)>,
    index: HashMap<String, u32>,
    base: HashMap<char, u32>,
    /// `(left, right)` → `(rank, result)`.
    ranks: HashMap<(u32, u32), (u32, u32)>,
    specials: u32,
}

#[derive(Serialize, Deserialize)]
struct VocabFile {
    version: u32,
    config: TrainConfig,
    tokens: Vec<String>,
    merges: Vec<(String, String)>,
}

impl Vocabulary {
    pub(crate) fn special_tokens(byte_fallback: bool) -> Vec<String> {
        if byte_fallback {
            (0..=255u8).map(byte_token).collect()
        } else {
            vec![UNK_TOKEN.to_string()]
        }
    }

    /// Validates and indexes the raw parts.
    pub fn from_parts(
        config: TrainConfig,
        tokens: Vec<String>,
        merges: Vec<(String, String)>,
    ) -> Result<Self, TokenlabError> {
        let invalid = |m: String| TokenlabError::InvalidVocabulary(m);
        let specials = Self::special_tokens(config.byte_fallback);
        if tokens.len() < specials.len() || tokens[..specials.len()] != specials[..] {
            return Err(invalid("reserved tokens missing or out of order".into()));
        }
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() {
                return Err(invalid(format!("empty token at id {i}")));
            }
            if index.insert(t.clone(), i as u32).is_some() {
                return Err(invalid(format!("duplicate token {t:?}")));
            }
        }
        let mut base = HashMap::new();
        for (i, t) in tokens.iter().enumerate().skip(specials.len()) {
            let mut cs = t.chars();
            if let (Some(c), None) = (cs.next(), cs.next()) {
                base.insert(c, i as u32);
            }
        }
        if !base.contains_key(&WORD_BOUNDARY) {
            return Err(invalid("word-boundary marker is not a token".into()));
        }
        let mut ranks = HashMap::with_capacity(merges.len());
        for (rank, (l, r)) in merges.iter().enumerate() {
            let id = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .filter(|&i| i >= specials.len() as u32)
                    .ok_or_else(|| invalid(format!("merge {rank} uses unknown token {s:?}")))
            };
            let (li, ri) = (id(l)?, id(r)?);
            let joined = format!("{l}{r}");
            let result = id(&joined).map_err(|_| invalid(format!("merge {rank} result {joined:?} is not a token")))?;
            if ranks.insert((li, ri), (rank as u32, result)).is_some() {
                return Err(invalid(format!("merge {rank} repeats an earlier pair")));
            }
        }
        Ok(Self {
            config,
            tokens,
            merges,
            index,
            base,
            ranks,
            specials: specials.len() as u32,
        })
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn is_special(&self, id: u32) -> bool {
        id < self.specials
    }

    /// Number of reserved tokens plus base characters.
    pub fn base_size(&self) -> usize {
        self.specials as usize + self.base.len()
    }

    /// The vocabulary a run stopped at `size` tokens would have produced:
    /// the longest merge prefix whose results all have ids below `size`.
    pub fn truncate(&self, size: usize) -> Result<Self, TokenlabError> {
        if size < self.base_size() || size > self.len() {
            return Err(TokenlabError::TruncateOutOfRange {
                requested: size,
                minimum: self.base_size(),
                maximum: self.len(),
            });
        }
        let keep = self
            .merges
            .iter()
            .position(|(l, r)| self.index[&format!("{l}{r}")] as usize >= size)
            .unwrap_or(self.merges.len());
        let config = TrainConfig {
            vocab_size: size,
            ..self.config.clone()
        };
        Self::from_parts(config, self.tokens[..size].to_vec(), self.merges[..keep].to_vec())
    }

    pub fn to_json(&self) -> String {
        let file = VocabFile {
            version: VOCAB_FORMAT_VERSION,
            config: self.config.clone(),
            tokens: self.tokens.clone(),
            merges: self.merges.clone(),
        };
        serde_json::to_string_pretty(&file).unwrap_or_default()
    }

    pub fn from_json(src: &str) -> Result<Self, TokenlabError> {
        let file: VocabFile = serde_json::from_str(src).map_err(|e| TokenlabError::InvalidVocabulary(e.to_string()))?;
        if file.version != VOCAB_FORMAT_VERSION {
            return Err(TokenlabError::InvalidVocabulary(format!(
                "unsupported format version {}",
                file.version
            )));
        }
        Self::from_parts(file.config, file.tokens, file.merges)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.to_json() + "\n")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TokenlabError> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path).map_err(|source| TokenlabError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&src)
    }

    /// Base symbols of `text` after normalization, split into merge units.
    pub(crate) fn seed_units(&self, text: &str) -> Vec<Vec<u32>> {
        let marker = self.base[&WORD_BOUNDARY];
        let normalized = normalize(text, NormalizationForm::Nfkc);
        seed(
            &normalized,
            &self.config,
            marker,
            |c| self.base.get(&c).copied(),
            |b| self.byte_id(b),
        )
    }

    fn byte_id(&self, b: u8) -> u32 {
        if self.config.byte_fallback {
            b as u32
        } else {
            0
        }
    }

    /// Token ids for `text`.
    pub fn encode(&self, text: &str) -> Vec<u32> {
        let mut out = Vec::new();
        for unit in self.seed_units(text) {
            self.merge_unit(unit, &mut out);
        }
        out
    }

    /// Token strings for `text`.
    pub fn encode_pieces(&self, text: &str) -> Vec<&str> {
        self.encode(text)
            .into_iter()
            .map(|id| self.tokens[id as usize].as_str())
            .collect()
    }

    /// Applies merges by rank, leftmost first within a rank. A merge pass
    /// never revisits a lower rank, so the result equals applying the merge
    /// list in order over the whole unit.
    fn merge_unit(&self, mut syms: Vec<u32>, out: &mut Vec<u32>) {
        let n = syms.len();
        if n < 2 || self.ranks.is_empty() {
            out.extend_from_slice(&syms);
            return;
        }
        let mut next: Vec<usize> = (1..=n).collect();
        let mut prev: Vec<usize> = (0..n).map(|i| i.wrapping_sub(1)).collect();
        let mut alive = vec![true; n];
        let mut heap = BinaryHeap::new();
        for i in 0..n - 1 {
            if let Some(&(rank, _)) = self.ranks.get(&(syms[i], syms[i + 1])) {
                heap.push(Reverse((rank, i)));
            }
        }
        while let Some(Reverse((rank, i))) = heap.pop() {
            let j = next[i];
            if !alive[i] || j >= n {
                continue;
            }
            let Some(&(r, result)) = self.ranks.get(&(syms[i], syms[j])) else {
                continue;
            };
            if r != rank {
                continue;
            }
            syms[i] = result;
            alive[j] = false;
            next[i] = next[j];
            if next[j] < n {
                prev[next[j]] = i;
            }
            let p = prev[i];
            if p < n {
                if let Some(&(r2, _)) = self.ranks.get(&(syms[p], syms[i])) {
                    if r2 > rank {
                        heap.push(Reverse((r2, p)));
                    }
                }
            }
            let k = next[i];
            if k < n {
                if let Some(&(r2, _)) = self.ranks.get(&(syms[i], syms[k])) {
                    if r2 > rank {
                        heap.push(Reverse((r2, i)));
                    }
                }
            }
        }
        out.extend((0..n).filter(|&i| alive[i]).map(|i| syms[i]));
    }

    pub fn decode(&self, ids: &[u32]) -> Result<String, TokenlabError> {
        let pieces = ids
            .iter()
            .map(|&id| self.token(id).ok_or(TokenlabError::UnknownTokenId(id)))
            .collect::<Result<Vec<_>, _>>()?;
        self.decode_pieces(&pieces)
    }

    /// Concatenates pieces, reassembling byte runs and mapping markers to
    /// spaces.
    pub fn decode_pieces<S: AsRef<str>>(&self, pieces: &[S]) -> Result<String, TokenlabError> {
        let mut out = String::new();
        let mut bytes: Vec<u8> = Vec::new();
        let flush = |bytes: &mut Vec<u8>, out: &mut String| -> Result<(), TokenlabError> {
            if !bytes.is_empty() {
                let s = std::str::from_utf8(bytes).map_err(|_| TokenlabError::InvalidByteSequence(bytes.clone()))?;
                out.push_str(s);
                bytes.clear();
            }
            Ok(())
        };
        for piece in pieces {
            let piece = piece.as_ref();
            if !self.index.contains_key(piece) {
                return Err(TokenlabError::UnknownToken(piece.to_string()));
            }
            match parse_byte_token(piece).filter(|_| self.config.byte_fallback) {
                Some(b) => bytes.push(b),
                None => {
                    flush(&mut bytes, &mut out)?;
                    if piece == UNK_TOKEN && !self.config.byte_fallback {
                        out.push('\u{FFFD}');
                    } else {
                        out.extend(piece.chars().map(|c| if c == WORD_BOUNDARY { ' ' } else { c }));
                    }
                }
            }
        }
        flush(&mut bytes, &mut out)?;
        if self.config.add_dummy_prefix {
            if let Some(rest) = out.strip_prefix(' ') {
                return Ok(rest.to_string());
            }
        }
        Ok(out)
    }
}

/// Turns normalized text into base-symbol units. Spaces become the marker;
/// a literal marker character in the text always takes the byte route.
pub(crate) fn seed(
    normalized: &str,
    config: &TrainConfig,
    marker: u32,
    base: impl Fn(char) -> Option<u32>,
    byte: impl Fn(u8) -> u32,
) -> Vec<Vec<u32>> {
    let mut units: Vec<Vec<u32>> = Vec::new();
    if normalized.is_empty() {
        return units;
    }
    let mut current: Vec<u32> = Vec::new();
    let push_unit = |u: &mut Vec<u32>, units: &mut Vec<Vec<u32>>| {
        if !u.is_empty() {
            units.push(std::mem::take(u));
        }
    };
    if config.add_dummy_prefix {
        current.push(marker);
    }
    for c in normalized.chars() {
        if c == ' ' {
            if config.split_by_whitespace {
                push_unit(&mut current, &mut units);
            }
            current.push(marker);
            continue;
        }
        let split_here = config.split_by_whitespace && c.is_whitespace();
        if split_here {
            push_unit(&mut current, &mut units);
        }
        match base(c).filter(|_| c != WORD_BOUNDARY) {
            Some(id) => current.push(id),
            None if config.byte_fallback => {
                let mut buf = [0u8; 4];
                current.extend(c.encode_utf8(&mut buf).bytes().map(&byte));
            }
            None => current.push(byte(0)),
        }
        if split_here {
            push_unit(&mut current, &mut units);
        }
    }
    push_unit(&mut current, &mut units);
    units
}
