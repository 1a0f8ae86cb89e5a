use std::fmt;
use std::ops::Range;

use super::CharacterDatabase;

/// Script property value, closed over the scripts the romanizers dispatch on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScriptTag {
    Latin,
    Cyrillic,
    Arabic,
    Devanagari,
    Han,
    Hiragana,
    Katakana,
    Common,
    Inherited,
    Other(String),
}

impl ScriptTag {
    /// Maps a `Scripts.txt` long name to a tag.
    pub fn from_name(name: &str) -> Self {
        match name {
            "Latin" => Self::Latin,
            "Cyrillic" => Self::Cyrillic,
            "Arabic" => Self::Arabic,
            "Devanagari" => Self::Devanagari,
            "Han" => Self::Han,
            "Hiragana" => Self::Hiragana,
            "Katakana" => Self::Katakana,
            "Common" => Self::Common,
            "Inherited" => Self::Inherited,
            other => Self::Other(other.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Latin => "Latin",
            Self::Cyrillic => "Cyrillic",
            Self::Arabic => "Arabic",
            Self::Devanagari => "Devanagari",
            Self::Han => "Han",
            Self::Hiragana => "Hiragana",
            Self::Katakana => "Katakana",
            Self::Common => "Common",
            Self::Inherited => "Inherited",
            Self::Other(name) => name,
        }
    }

    /// `Common` and `Inherited` carry no script of their own.
    pub fn is_neutral(&self) -> bool {
        matches!(self, Self::Common | Self::Inherited)
    }
}

impl fmt::Display for ScriptTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A maximal single-script stretch of text. `chars` counts scalar values,
/// `bytes` indexes the UTF-8 string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptRun {
    pub chars: Range<usize>,
    pub bytes: Range<usize>,
    pub script: ScriptTag,
}

impl ScriptRun {
    pub fn text<'a>(&self, source: &'a str) -> &'a str {
        &source[self.bytes.clone()]
    }
}

pub(super) fn script_runs(db: &CharacterDatabase, text: &str) -> Vec<ScriptRun> {
    let mut runs: Vec<ScriptRun> = Vec::new();
    // leading neutral characters wait for the first real script
    let mut pending_neutral = false;

    for (char_idx, (byte_idx, c)) in text.char_indices().enumerate() {
        let end_byte = byte_idx + c.len_utf8();
        let tag = db.script(c);
        if tag.is_neutral() {
            match runs.last_mut() {
                Some(run) => {
                    run.chars.end = char_idx + 1;
                    run.bytes.end = end_byte;
                }
                None => pending_neutral = true,
            }
            continue;
        }
        match runs.last_mut() {
            Some(run) if run.script == *tag => {
                run.chars.end = char_idx + 1;
                run.bytes.end = end_byte;
            }
            Some(_) => runs.push(ScriptRun {
                chars: char_idx..char_idx + 1,
                bytes: byte_idx..end_byte,
                script: tag.clone(),
            }),
            None => {
                let (chars, bytes) = if pending_neutral {
                    (0..char_idx + 1, 0..end_byte)
                } else {
                    (char_idx..char_idx + 1, byte_idx..end_byte)
                };
                pending_neutral = false;
                runs.push(ScriptRun {
                    chars,
                    bytes,
                    script: tag.clone(),
                });
            }
        }
    }

    if pending_neutral {
        // nothing but neutral characters; keep the first one's tag
        let first = text
            .chars()
            .next()
            .map(|c| db.script(c).clone())
            .unwrap_or(ScriptTag::Common);
        runs.push(ScriptRun {
            chars: 0..text.chars().count(),
            bytes: 0..text.len(),
            script: first,
        });
    }
    runs
}
