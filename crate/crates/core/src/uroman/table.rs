//! Tab-separated mapping tables:
//! `<source grapheme as hex code points, space-joined>\t<ASCII output>\t<tier>`.
//!
//! Lines starting with `#` are comments. The output column is taken verbatim
//! (it may be empty or contain spaces).

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
#[error("{file}:{line}: {message}")]
pub struct TableError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

/// Which mechanism produced a romanization. Declared in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Override,
    ScriptTable,
    NameHeuristic,
    Passthrough,
}

impl Tier {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "override" => Some(Self::Override),
            "script" | "script-table" => Some(Self::ScriptTable),
            _ => None,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Override => "override",
            Self::ScriptTable => "script-table",
            Self::NameHeuristic => "name-heuristic",
            Self::Passthrough => "passthrough",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub line: usize,
    pub key: Vec<char>,
    pub output: String,
    pub tier: Tier,
}

pub fn parse_rows(file: &str, src: &str) -> Result<Vec<TableRow>, TableError> {
    let err = |line: usize, message: String| TableError {
        file: file.to_string(),
        line,
        message,
    };
    let mut rows = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(key), Some(output), Some(tier)) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(line_no, "expected three tab-separated fields".into()));
        };
        let key = key
            .split_whitespace()
            .map(|hex| {
                u32::from_str_radix(hex, 16)
                    .ok()
                    .and_then(char::from_u32)
                    .ok_or_else(|| err(line_no, format!("bad code point {hex:?}")))
            })
            .collect::<Result<Vec<char>, _>>()?;
        if key.is_empty() {
            return Err(err(line_no, "empty source grapheme".into()));
        }
        if !output.is_ascii() {
            return Err(err(line_no, format!("output {output:?} is not ASCII")));
        }
        let tier = Tier::parse(tier.trim()).ok_or_else(|| err(line_no, format!("unknown tier {tier:?}")))?;
        rows.push(TableRow {
            line: line_no,
            key,
            output: output.to_string(),
            tier,
        });
    }
    Ok(rows)
}

/// Longest-match lookup over grapheme keys.
#[derive(Debug, Clone, Default)]
pub struct MappingTable {
    by_first: HashMap<char, Vec<(Box<[char]>, Box<str>)>>,
    len: usize,
}

impl MappingTable {
    pub fn from_rows(rows: impl IntoIterator<Item = TableRow>) -> Self {
        let mut table = Self::default();
        for row in rows {
            table.insert(&row.key, &row.output);
        }
        table
    }

    /// Later inserts of the same key replace earlier ones.
    pub fn insert(&mut self, key: &[char], output: &str) {
        let Some(&first) = key.first() else { return };
        let bucket = self.by_first.entry(first).or_default();
        if let Some(slot) = bucket.iter_mut().find(|(k, _)| &**k == key) {
            slot.1 = output.into();
            return;
        }
        bucket.push((key.into(), output.into()));
        bucket.sort_by_key(|e| std::cmp::Reverse(e.0.len()));
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Longest key matching `text[at..]`, as `(key length, output)`.
    pub fn longest_match(&self, text: &[char], at: usize) -> Option<(usize, &str)> {
        let bucket = self.by_first.get(text.get(at)?)?;
        bucket
            .iter()
            .find(|(key, _)| text[at..].starts_with(key))
            .map(|(key, out)| (key.len(), &**out))
    }

    pub fn get(&self, c: char) -> Option<&str> {
        self.by_first
            .get(&c)?
            .iter()
            .find(|(key, _)| key.len() == 1)
            .map(|(_, out)| &**out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[char], &str)> {
        self.by_first.values().flatten().map(|(k, v)| (&**k, &**v))
    }
}
