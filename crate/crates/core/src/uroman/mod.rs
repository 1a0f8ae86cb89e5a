//! Universal ASCII romanization.
//!
//! Each position of the NFKC-normalized input is resolved by the first tier
//! that knows it: curated overrides, script tables (kana, Arabic, Han
//! readings), the Unicode-name heuristic, and finally ASCII passthrough or
//! drop. Brahmic consonant clusters are resolved as a unit before the tiers so
//! inherent vowels can be added or suppressed.

mod names;
pub mod table;

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Serialize;

use crate::pinyin::HanReadings;
use crate::ucd::{normalize, CharacterDatabase, NormalizationForm};

pub use names::latin_from_unicode_name;
pub use table::{parse_rows, MappingTable, TableError, TableRow, Tier};

/// One resolved piece of a romanization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RomanizedSpan {
    /// Character indices into the NFKC-normalized input.
    pub input: Range<usize>,
    pub output: String,
    pub tier: Tier,
    /// True when the input had no mapping in any tier and was removed.
    pub dropped: bool,
}

/// Aligned romanization of one text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Romanization {
    /// The input after NFKC normalization; span ranges index its characters.
    pub normalized: String,
    pub spans: Vec<RomanizedSpan>,
}

impl Romanization {
    pub fn output(&self) -> String {
        self.spans.iter().map(|s| s.output.as_str()).collect()
    }

    pub fn dropped(&self) -> usize {
        self.spans.iter().filter(|s| s.dropped).map(|s| s.input.len()).sum()
    }

    pub fn passed_through(&self) -> usize {
        self.spans
            .iter()
            .filter(|s| s.tier == Tier::Passthrough && !s.dropped)
            .map(|s| s.input.len())
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AbugidaRole {
    Consonant,
    VowelSign,
    Virama,
    Nukta,
}

#[derive(Debug, Clone, Default)]
struct NameInfo {
    latin: Option<Box<str>>,
    role: Option<AbugidaRole>,
}

fn name_info(record: &crate::ucd::CodePointRecord) -> NameInfo {
    let latin = latin_from_unicode_name(record);
    let role = if !names::is_abugida(&record.script) {
        None
    } else if record.name.contains(" VOWEL SIGN ") {
        Some(AbugidaRole::VowelSign)
    } else if record.name.ends_with(" SIGN VIRAMA") {
        Some(AbugidaRole::Virama)
    } else if record.name.ends_with(" SIGN NUKTA") {
        Some(AbugidaRole::Nukta)
    } else {
        match names::parse_name(&record.name) {
            Some(p)
                if p.kind == names::NameKind::Letter
                    && p.payload.len() > 1
                    && p.payload.ends_with('a')
                    && !p.payload.trim_end_matches('a').is_empty()
                    && !p.payload.chars().all(|c| "aeiou".contains(c)) =>
            {
                Some(AbugidaRole::Consonant)
            }
            _ => None,
        }
    };
    NameInfo {
        latin: latin.map(String::into_boxed_str),
        role,
    }
}

/// Immutable romanizer; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Uroman {
    db: Arc<CharacterDatabase>,
    overrides: MappingTable,
    scripts: MappingTable,
    readings: Arc<HanReadings>,
    names: HashMap<char, NameInfo>,
}

impl Uroman {
    /// The engine built from the tables compiled into the crate.
    pub fn bundled() -> &'static Uroman {
        crate::data::bundled_uroman()
    }

    pub fn with_bundled_tables(db: Arc<CharacterDatabase>) -> Result<Self, TableError> {
        use crate::data;
        Self::from_tables(
            db,
            &[
                ("overrides.tsv", data::UROMAN_OVERRIDES),
                ("kana.tsv", data::UROMAN_KANA),
                ("arabic.tsv", data::UROMAN_ARABIC),
            ],
            Arc::clone(data::bundled_readings_arc()),
        )
    }

    /// Builds from mapping-table sources given as `(file name, contents)`.
    /// Each row lands in the tier named by its third column.
    pub fn from_tables(
        db: Arc<CharacterDatabase>,
        sources: &[(&str, &str)],
        readings: Arc<HanReadings>,
    ) -> Result<Self, TableError> {
        let mut overrides = MappingTable::default();
        let mut scripts = MappingTable::default();
        for (file, src) in sources {
            for row in parse_rows(file, src)? {
                match row.tier {
                    Tier::Override => overrides.insert(&row.key, &row.output),
                    _ => scripts.insert(&row.key, &row.output),
                }
            }
        }
        let names = db
            .listed_chars()
            .filter_map(|c| {
                let rec = db.record_for(c)?;
                let gc = rec.general_category;
                (gc.is_letter() || gc.is_mark()).then(|| (c, name_info(&rec)))
            })
            .collect();
        Ok(Self {
            db,
            overrides,
            scripts,
            readings,
            names,
        })
    }

    pub fn database(&self) -> &CharacterDatabase {
        &self.db
    }

    pub fn readings(&self) -> &HanReadings {
        &self.readings
    }

    pub fn romanize(&self, text: &str) -> String {
        self.spans(text).output()
    }

    /// Toneless pinyin of the most common reading, or `None` when the
    /// character has no reading.
    pub fn han_to_pinyin_ascii(&self, c: char) -> Option<String> {
        self.readings.get(c).map(|r| r.ascii())
    }

    /// Phonetic form derived from the character's Unicode name alone.
    pub fn latin_from_name(&self, c: char) -> Option<String> {
        self.lookup_name(c).and_then(|i| i.latin.map(String::from))
    }

    pub fn spans(&self, text: &str) -> Romanization {
        let normalized = normalize(text, NormalizationForm::Nfkc);
        let chars: Vec<char> = normalized.chars().collect();
        let mut spans = Vec::with_capacity(chars.len());
        let mut i = 0;
        while i < chars.len() {
            let (len, output, tier, dropped) = self.step(&chars, i);
            debug_assert!(len > 0 && output.is_ascii());
            spans.push(RomanizedSpan {
                input: i..i + len,
                output,
                tier,
                dropped,
            });
            i += len;
        }
        Romanization { normalized, spans }
    }

    fn lookup_name(&self, c: char) -> Option<NameInfo> {
        match self.names.get(&c) {
            Some(info) => Some(info.clone()),
            None => self.db.record_for(c).map(|r| name_info(&r)),
        }
    }

    fn role(&self, c: char) -> Option<AbugidaRole> {
        self.names.get(&c).and_then(|i| i.role)
    }

    fn step(&self, chars: &[char], i: usize) -> (usize, String, Tier, bool) {
        let c = chars[i];
        if let Some((len, out)) = self.abugida_syllable(chars, i) {
            return (len, out, Tier::NameHeuristic, false);
        }
        if let Some((len, out)) = self.overrides.longest_match(chars, i) {
            return (len, out.to_string(), Tier::Override, false);
        }
        if let Some((len, out)) = self.scripts.longest_match(chars, i) {
            return (len, out.to_string(), Tier::ScriptTable, false);
        }
        if let Some(out) = self.han_to_pinyin_ascii(c) {
            return (1, out, Tier::ScriptTable, false);
        }
        if c.is_ascii() {
            return (1, c.to_string(), Tier::Passthrough, false);
        }
        if c.is_whitespace() {
            return (1, " ".into(), Tier::Passthrough, false);
        }
        if let Some(d) = self.db.decimal_value(c) {
            return (1, d.to_string(), Tier::Passthrough, false);
        }
        let category = self.db.category(c);
        if category.is_some_and(|gc| gc.is_mark()) {
            // a combining mark with no table entry carries no letter of its own
            return (1, String::new(), Tier::Passthrough, false);
        }
        let stripped = self.db.strip_combining_marks(c.encode_utf8(&mut [0; 4]));
        if stripped != c.to_string() {
            if stripped.is_ascii() && !stripped.is_empty() {
                return (1, stripped, Tier::Passthrough, false);
            }
            let base: Vec<char> = stripped.chars().collect();
            if let Some((1, out)) = self.overrides.longest_match(&base, 0) {
                if base.len() == 1 {
                    return (1, out.to_string(), Tier::Override, false);
                }
            }
            if let Some((1, out)) = self.scripts.longest_match(&base, 0) {
                if base.len() == 1 {
                    return (1, out.to_string(), Tier::ScriptTable, false);
                }
            }
        }
        if category.is_some_and(|gc| gc.is_letter()) {
            if let Some(latin) = self.lookup_name(c).and_then(|i| i.latin) {
                return (1, latin.into(), Tier::NameHeuristic, false);
            }
        }
        (1, String::new(), Tier::Passthrough, true)
    }

    /// Consonant plus optional nukta and a vowel sign or virama. A bare
    /// consonant keeps its inherent `a` except word-finally after a vowel.
    fn abugida_syllable(&self, chars: &[char], i: usize) -> Option<(usize, String)> {
        let c = chars[i];
        let info = self.names.get(&c)?;
        if info.role != Some(AbugidaRole::Consonant) {
            return None;
        }
        if let Some((len, _)) = self.overrides.longest_match(chars, i) {
            if len > 1 {
                return None;
            }
        }
        let script = self.db.script(c);
        let in_word = |k: usize| {
            chars.get(k).is_some_and(|&x| {
                self.db.script(x) == script && self.db.category(x).is_some_and(|gc| gc.is_letter() || gc.is_mark())
            })
        };
        let latin = info.latin.as_deref()?;
        let mut out = String::from(latin.strip_suffix('a').unwrap_or(latin));
        let mut j = i + 1;
        while chars.get(j).is_some_and(|&x| self.role(x) == Some(AbugidaRole::Nukta)) {
            j += 1;
        }
        match chars.get(j).and_then(|&x| self.role(x)) {
            Some(AbugidaRole::Virama) => j += 1,
            Some(AbugidaRole::VowelSign) => {
                let sign = chars[j];
                match self.overrides.get(sign) {
                    Some(o) => out.push_str(o),
                    None => {
                        if let Some(l) = self.names.get(&sign).and_then(|n| n.latin.as_deref()) {
                            out.push_str(l);
                        }
                    }
                }
                j += 1;
            }
            _ => {
                let word_initial = i == 0 || !in_word(i - 1);
                let after_virama = i > 0 && self.role(chars[i - 1]) == Some(AbugidaRole::Virama);
                let word_final = !in_word(j);
                if !(word_final && !word_initial && !after_virama) {
                    out.push('a');
                }
            }
        }
        Some((j - i, out))
    }
}

/// Romanizes with the bundled engine.
pub fn uroman(text: &str) -> String {
    Uroman::bundled().romanize(text)
}
