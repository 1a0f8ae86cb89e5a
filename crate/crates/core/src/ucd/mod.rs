//! Unicode Character Database ingestion.
//!
//! Reads the `UnicodeData.txt` and `Scripts.txt` flat files (semicolon
//! delimited, `#` comments) into an immutable [`CharacterDatabase`]. A pinned
//! copy of both files ships with the crate; see [`CharacterDatabase::bundled`].

mod hangul;
mod normalize;
mod script;

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

pub use normalize::{normalize, NormalizationForm};
pub use script::{ScriptRun, ScriptTag};

pub const UNICODE_DATA_FILE: &str = "UnicodeData.txt";
pub const SCRIPTS_FILE: &str = "Scripts.txt";

/// Environment variable naming a directory that holds the UCD flat files.
pub const UCD_DIR_ENV: &str = "ROMANLAB_UCD_DIR";

#[derive(Debug, thiserror::Error)]
pub enum UcdError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: &'static str,
        line: usize,
        message: String,
    },
    #[error("missing required file: {0}")]
    MissingFile(&'static str),
    #[error("U+{0:04X} is not a scalar value")]
    NotScalar(u32),
    #[error("reading {file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

/// Two-letter general category code (`Lu`, `Mn`, ...).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralCategory([u8; 2]);

impl GeneralCategory {
    pub fn new(code: &str) -> Option<Self> {
        match code.as_bytes() {
            [a, b] if a.is_ascii_uppercase() && b.is_ascii_lowercase() => Some(Self([*a, *b])),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &str {
        // both bytes are ASCII letters by construction
        std::str::from_utf8(&self.0).unwrap_or("??")
    }

    pub fn is_letter(&self) -> bool {
        self.0[0] == b'L'
    }

    pub fn is_mark(&self) -> bool {
        self.0[0] == b'M'
    }

    pub fn is_nonspacing_mark(&self) -> bool {
        self.0 == *b"Mn"
    }

    pub fn is_uppercase_letter(&self) -> bool {
        self.0 == *b"Lu" || self.0 == *b"Lt"
    }
}

impl fmt::Debug for GeneralCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for GeneralCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Metadata for one assigned code point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePointRecord {
    pub codepoint: u32,
    pub name: String,
    pub general_category: GeneralCategory,
    pub script: ScriptTag,
    /// Canonical decomposition mapping; empty when the character has none or
    /// only a compatibility mapping.
    pub canonical_decomposition: Vec<u32>,
    /// Compatibility decomposition as `(tag, mapping)`, e.g. `("narrow", [0x30A2])`.
    pub compatibility_decomposition: Option<(String, Vec<u32>)>,
    pub combining_class: u8,
    pub decimal_value: Option<u8>,
}

#[derive(Debug, Clone)]
struct Entry {
    name: Box<str>,
    category: GeneralCategory,
    combining_class: u8,
    decomposition_tag: Option<Box<str>>,
    decomposition: Box<[u32]>,
    decimal: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RangeNaming {
    CjkIdeograph,
    TangutIdeograph,
    HangulSyllable,
    Label,
}

#[derive(Debug, Clone)]
struct RangeEntry {
    first: u32,
    last: u32,
    label: Box<str>,
    naming: RangeNaming,
    entry: Entry,
}

/// Immutable character metadata store.
///
/// Lookups are total over scalar values: every valid code point yields either
/// a record or `None` for unassigned.
#[derive(Debug, Clone)]
pub struct CharacterDatabase {
    version: String,
    entries: HashMap<u32, Entry>,
    ranges: Vec<RangeEntry>,
    script_ranges: Vec<(u32, u32, u16)>,
    script_tags: Vec<ScriptTag>,
    unknown_script: ScriptTag,
}

/// Reads both UCD files from byte streams.
pub fn load_character_database(unicode_data: impl Read, scripts: impl Read) -> Result<CharacterDatabase, UcdError> {
    let unicode_data = read_stream(unicode_data, UNICODE_DATA_FILE)?;
    let scripts = read_stream(scripts, SCRIPTS_FILE)?;
    CharacterDatabase::parse(&unicode_data, &scripts)
}

fn read_stream(mut source: impl Read, file: &'static str) -> Result<String, UcdError> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf).map_err(|source| UcdError::Io {
        file: file.to_string(),
        source,
    })?;
    String::from_utf8(buf).map_err(|e| UcdError::Parse {
        file,
        line: 0,
        message: format!("invalid UTF-8: {e}"),
    })
}

impl CharacterDatabase {
    /// The database compiled into the crate.
    pub fn bundled() -> &'static CharacterDatabase {
        crate::data::bundled_database()
    }

    /// Loads `UnicodeData.txt` and `Scripts.txt` from `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, UcdError> {
        let dir = dir.as_ref();
        let read = |file: &'static str| {
            let path = dir.join(file);
            match std::fs::read_to_string(&path) {
                Ok(s) => Ok(s),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(UcdError::MissingFile(file)),
                Err(source) => Err(UcdError::Io {
                    file: path.display().to_string(),
                    source,
                }),
            }
        };
        Self::parse(&read(UNICODE_DATA_FILE)?, &read(SCRIPTS_FILE)?)
    }

    /// Loads from the directory named by `ROMANLAB_UCD_DIR` when set, else the
    /// bundled copy.
    pub fn from_env() -> Result<Cow<'static, CharacterDatabase>, UcdError> {
        match std::env::var_os(UCD_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Ok(Cow::Owned(Self::from_dir(dir)?)),
            _ => Ok(Cow::Borrowed(Self::bundled())),
        }
    }

    pub fn parse(unicode_data: &str, scripts: &str) -> Result<Self, UcdError> {
        if unicode_data.trim().is_empty() {
            return Err(UcdError::MissingFile(UNICODE_DATA_FILE));
        }
        if scripts.trim().is_empty() {
            return Err(UcdError::MissingFile(SCRIPTS_FILE));
        }
        let (entries, ranges) = parse_unicode_data(unicode_data)?;
        let (script_ranges, script_tags, version) = parse_scripts(scripts)?;
        Ok(Self {
            version,
            entries,
            ranges,
            script_ranges,
            script_tags,
            unknown_script: ScriptTag::Other("Unknown".into()),
        })
    }

    /// UCD version string, e.g. `"17.0.0"`.
    pub fn version(&self) -> &str {
        &self.version
    }

    /// Number of individually listed records (ranges count once).
    pub fn len(&self) -> usize {
        self.entries.len() + self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Full record for a code point. Errors on surrogates and values above
    /// U+10FFFF; `Ok(None)` means unassigned.
    pub fn record(&self, codepoint: u32) -> Result<Option<CodePointRecord>, UcdError> {
        let c = char::from_u32(codepoint).ok_or(UcdError::NotScalar(codepoint))?;
        Ok(self.record_for(c))
    }

    pub fn record_for(&self, c: char) -> Option<CodePointRecord> {
        let (entry, name) = self.entry(c)?;
        let (canonical, compat) = match &entry.decomposition_tag {
            None => (entry.decomposition.to_vec(), None),
            Some(tag) => (Vec::new(), Some((tag.to_string(), entry.decomposition.to_vec()))),
        };
        Some(CodePointRecord {
            codepoint: c as u32,
            name: name.into_owned(),
            general_category: entry.category,
            script: self.script(c).clone(),
            canonical_decomposition: canonical,
            compatibility_decomposition: compat,
            combining_class: entry.combining_class,
            decimal_value: entry.decimal,
        })
    }

    /// Every individually listed character (range members excluded).
    pub fn listed_chars(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.keys().filter_map(|&cp| char::from_u32(cp))
    }

    pub fn is_assigned(&self, c: char) -> bool {
        self.entry(c).is_some()
    }

    pub fn name(&self, c: char) -> Option<Cow<'_, str>> {
        self.entry(c).map(|(_, name)| name)
    }

    pub fn category(&self, c: char) -> Option<GeneralCategory> {
        self.entry(c).map(|(e, _)| e.category)
    }

    pub fn decimal_value(&self, c: char) -> Option<u8> {
        self.entry(c).and_then(|(e, _)| e.decimal)
    }

    /// Raw decomposition mapping `(tag, mapping)`; tag is `None` for canonical.
    pub fn decomposition(&self, c: char) -> Option<(Option<&str>, &[u32])> {
        let (e, _) = self.entry(c)?;
        if e.decomposition.is_empty() {
            return None;
        }
        Some((e.decomposition_tag.as_deref(), &e.decomposition))
    }

    /// Script of `c`; characters outside every listed range are `Other("Unknown")`.
    pub fn script(&self, c: char) -> &ScriptTag {
        let cp = c as u32;
        let idx = self.script_ranges.partition_point(|&(start, _, _)| start <= cp);
        if idx > 0 {
            let (start, end, tag) = self.script_ranges[idx - 1];
            if (start..=end).contains(&cp) {
                return &self.script_tags[tag as usize];
            }
        }
        &self.unknown_script
    }

    /// Removes non-spacing marks: NFKD, drop every `Mn` character, recompose NFC.
    pub fn strip_combining_marks(&self, text: &str) -> String {
        let decomposed = normalize(text, NormalizationForm::Nfkd);
        let kept: String = decomposed
            .chars()
            .filter(|&c| !self.category(c).is_some_and(|gc| gc.is_nonspacing_mark()))
            .collect();
        normalize(&kept, NormalizationForm::Nfc)
    }

    /// Partitions `text` into maximal runs of one script.
    ///
    /// `Common` and `Inherited` characters join the preceding run, or the
    /// following run when they lead the text.
    pub fn script_runs(&self, text: &str) -> Vec<ScriptRun> {
        script::script_runs(self, text)
    }

    fn entry(&self, c: char) -> Option<(&Entry, Cow<'_, str>)> {
        let cp = c as u32;
        if let Some(e) = self.entries.get(&cp) {
            return Some((e, Cow::Borrowed(&e.name)));
        }
        let idx = self.ranges.partition_point(|r| r.first <= cp);
        let r = self.ranges.get(idx.checked_sub(1)?)?;
        if cp > r.last {
            return None;
        }
        let name = match r.naming {
            RangeNaming::CjkIdeograph => Cow::Owned(format!("CJK UNIFIED IDEOGRAPH-{cp:04X}")),
            RangeNaming::TangutIdeograph => Cow::Owned(format!("TANGUT IDEOGRAPH-{cp:04X}")),
            RangeNaming::HangulSyllable => Cow::Owned(hangul::syllable_name(cp)?),
            RangeNaming::Label => Cow::Owned(format!("<{}-{cp:04X}>", r.label.to_lowercase())),
        };
        Some((&r.entry, name))
    }
}

fn parse_error(file: &'static str, line: usize, message: impl Into<String>) -> UcdError {
    UcdError::Parse {
        file,
        line,
        message: message.into(),
    }
}

fn parse_hex(s: &str, line: usize, file: &'static str) -> Result<u32, UcdError> {
    u32::from_str_radix(s.trim(), 16).map_err(|_| parse_error(file, line, format!("bad code point {s:?}")))
}

type UnicodeDataTables = (HashMap<u32, Entry>, Vec<RangeEntry>);

fn parse_unicode_data(src: &str) -> Result<UnicodeDataTables, UcdError> {
    const FILE: &str = UNICODE_DATA_FILE;
    let mut entries = HashMap::new();
    let mut ranges = Vec::new();
    let mut open_range: Option<(u32, String, Entry)> = None;

    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() < 15 {
            return Err(parse_error(
                FILE,
                line_no,
                format!("expected 15 fields, found {}", fields.len()),
            ));
        }
        let cp = parse_hex(fields[0], line_no, FILE)?;
        if cp > 0x10FFFF {
            return Err(parse_error(FILE, line_no, format!("code point {cp:X} out of range")));
        }
        let name = fields[1].trim();
        if name.is_empty() {
            return Err(parse_error(FILE, line_no, "empty character name"));
        }
        let category = GeneralCategory::new(fields[2].trim())
            .ok_or_else(|| parse_error(FILE, line_no, format!("bad general category {:?}", fields[2])))?;
        let combining_class = fields[3]
            .trim()
            .parse::<u8>()
            .map_err(|_| parse_error(FILE, line_no, format!("bad combining class {:?}", fields[3])))?;
        let (decomposition_tag, decomposition) = parse_decomposition(fields[5], line_no)?;
        let decimal = match fields[6].trim() {
            "" => None,
            d => Some(
                d.parse::<u8>()
                    .ok()
                    .filter(|v| *v < 10)
                    .ok_or_else(|| parse_error(FILE, line_no, format!("bad decimal value {d:?}")))?,
            ),
        };
        let entry = Entry {
            name: name.into(),
            category,
            combining_class,
            decomposition_tag,
            decomposition,
            decimal,
        };

        if let Some(label) = name.strip_prefix('<').and_then(|n| n.strip_suffix(", First>")) {
            if open_range.is_some() {
                return Err(parse_error(FILE, line_no, "nested range start"));
            }
            open_range = Some((cp, label.to_string(), entry));
        } else if let Some(label) = name.strip_prefix('<').and_then(|n| n.strip_suffix(", Last>")) {
            let (first, open_label, entry) = open_range
                .take()
                .ok_or_else(|| parse_error(FILE, line_no, "range end without start"))?;
            if open_label != label || cp < first {
                return Err(parse_error(FILE, line_no, format!("mismatched range end {label:?}")));
            }
            let naming = if label.starts_with("CJK Ideograph") {
                RangeNaming::CjkIdeograph
            } else if label.starts_with("Tangut Ideograph") {
                RangeNaming::TangutIdeograph
            } else if label.starts_with("Hangul Syllable") {
                RangeNaming::HangulSyllable
            } else {
                RangeNaming::Label
            };
            ranges.push(RangeEntry {
                first,
                last: cp,
                label: label.into(),
                naming,
                entry,
            });
        } else {
            if open_range.is_some() {
                return Err(parse_error(FILE, line_no, "unterminated range"));
            }
            entries.insert(cp, entry);
        }
    }
    if open_range.is_some() {
        return Err(parse_error(
            FILE,
            src.lines().count(),
            "unterminated range at end of file",
        ));
    }
    ranges.sort_by_key(|r| r.first);
    Ok((entries, ranges))
}

fn parse_decomposition(field: &str, line: usize) -> Result<(Option<Box<str>>, Box<[u32]>), UcdError> {
    let mut parts = field.split_whitespace().peekable();
    let tag = match parts.peek() {
        Some(p) if p.starts_with('<') => {
            let t = parts.next().unwrap_or_default();
            Some(t.trim_start_matches('<').trim_end_matches('>').into())
        }
        _ => None,
    };
    let mapping = parts
        .map(|p| parse_hex(p, line, UNICODE_DATA_FILE))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((tag, mapping.into_boxed_slice()))
}

type ScriptTables = (Vec<(u32, u32, u16)>, Vec<ScriptTag>, String);

fn parse_scripts(src: &str) -> Result<ScriptTables, UcdError> {
    const FILE: &str = SCRIPTS_FILE;
    let mut version = String::from("unknown");
    let mut tags: Vec<ScriptTag> = Vec::new();
    let mut by_name: HashMap<String, u16> = HashMap::new();
    let mut ranges = Vec::new();

    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        if let Some(v) = raw
            .trim()
            .strip_prefix("# Scripts-")
            .and_then(|r| r.strip_suffix(".txt"))
        {
            version = v.to_string();
        }
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (range, name) = line
            .split_once(';')
            .ok_or_else(|| parse_error(FILE, line_no, "expected `<range> ; <script>`"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(parse_error(FILE, line_no, "empty script name"));
        }
        let (start, end) = match range.trim().split_once("..") {
            Some((a, b)) => (parse_hex(a, line_no, FILE)?, parse_hex(b, line_no, FILE)?),
            None => {
                let cp = parse_hex(range, line_no, FILE)?;
                (cp, cp)
            }
        };
        if start > end || end > 0x10FFFF {
            return Err(parse_error(FILE, line_no, format!("bad range {}", range.trim())));
        }
        let idx = *by_name.entry(name.to_string()).or_insert_with(|| {
            tags.push(ScriptTag::from_name(name));
            (tags.len() - 1) as u16
        });
        ranges.push((start, end, idx));
    }
    ranges.sort_by_key(|r| r.0);
    if let Some(w) = ranges.windows(2).find(|w| w[0].1 >= w[1].0) {
        return Err(parse_error(FILE, 0, format!("overlapping ranges at U+{:04X}", w[1].0)));
    }
    Ok((ranges, tags, version))
}
