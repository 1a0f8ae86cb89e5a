//! Latin correspondences read off Unicode character names.

use crate::ucd::{CodePointRecord, ScriptTag};

/// Brahmic scripts: consonant letters carry an inherent `a`.
const ABUGIDAS: &[&str] = &[
    "Devanagari",
    "Bengali",
    "Gurmukhi",
    "Gujarati",
    "Oriya",
    "Tamil",
    "Telugu",
    "Kannada",
    "Malayalam",
    "Sinhala",
];

/// Scripts whose letter names already spell a whole syllable.
const SYLLABARIES: &[&str] = &[
    "Hiragana",
    "Katakana",
    "Yi",
    "Cherokee",
    "Canadian_Aboriginal",
    "Vai",
    "Ethiopic",
];

const MODIFIERS: &[&str] = &["SHORT", "FINAL", "SMALL", "DOTLESS", "LONG", "GLOTTAL"];

pub(crate) fn is_abugida(script: &ScriptTag) -> bool {
    ABUGIDAS.contains(&script.name())
}

fn is_syllabary(script: &ScriptTag) -> bool {
    SYLLABARIES.contains(&script.name())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NameKind {
    Letter,
    Syllable,
    VowelSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NamePayload {
    pub kind: NameKind,
    pub capital: bool,
    /// Lowercase ASCII payload, e.g. `"zhe"` for `CYRILLIC CAPITAL LETTER ZHE`.
    pub payload: String,
}

/// Splits `<SCRIPT> [SMALL|CAPITAL] LETTER <X>`, `<SCRIPT> SYLLABLE <X>` and
/// `<SCRIPT> VOWEL SIGN <X>` names. `X WITH ...` keeps `X`.
pub(crate) fn parse_name(name: &str) -> Option<NamePayload> {
    const KEYWORDS: &[(&str, NameKind, bool)] = &[
        (" CAPITAL LETTER ", NameKind::Letter, true),
        (" SMALL LETTER ", NameKind::Letter, false),
        (" LETTER ", NameKind::Letter, false),
        (" SYLLABLE ", NameKind::Syllable, false),
        (" VOWEL SIGN ", NameKind::VowelSign, false),
    ];
    let (rest, kind, capital) = KEYWORDS
        .iter()
        .find_map(|&(kw, kind, capital)| name.split_once(kw).map(|(_, rest)| (rest, kind, capital)))?;
    let rest = rest.split(" WITH ").next().unwrap_or(rest);
    let mut words: Vec<&str> = rest.split(' ').collect();
    let last = words.pop()?;
    if !words.iter().all(|w| MODIFIERS.contains(w)) {
        return None;
    }
    if last.is_empty() || !last.bytes().all(|b| b.is_ascii_uppercase()) {
        return None;
    }
    Some(NamePayload {
        kind,
        capital,
        payload: last.to_ascii_lowercase(),
    })
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Reduces an alphabet letter name to its sound: consonant + final vowel keeps
/// the consonants (`zhe` → `zh`), vowel + consonants drops the vowel
/// (`es` → `s`). Anything else is kept as spelled.
pub(crate) fn reduce_letter_name(payload: &str) -> &str {
    let vowels = payload.chars().filter(|&c| is_vowel(c)).count();
    if payload.len() < 2 || vowels != 1 {
        return payload;
    }
    let first = payload.chars().next().is_some_and(is_vowel);
    let last = payload.chars().last().is_some_and(is_vowel);
    match (first, last) {
        (false, true) => &payload[..payload.len() - 1],
        (true, false) => &payload[1..],
        _ => payload,
    }
}

/// Phonetic Latin form derived from the character name, or `None` when the
/// name follows no known pattern.
pub fn latin_from_unicode_name(record: &CodePointRecord) -> Option<String> {
    let parsed = parse_name(&record.name)?;
    let keep_syllable = parsed.kind != NameKind::Letter || is_abugida(&record.script) || is_syllabary(&record.script);
    let base = if keep_syllable {
        parsed.payload.as_str()
    } else {
        reduce_letter_name(&parsed.payload)
    };
    let capital = parsed.capital || record.general_category.is_uppercase_letter();
    let mut out = String::with_capacity(base.len());
    for (i, c) in base.chars().enumerate() {
        out.push(if i == 0 && capital { c.to_ascii_uppercase() } else { c });
    }
    Some(out)
}
