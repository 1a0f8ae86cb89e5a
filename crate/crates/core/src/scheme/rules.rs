//! Rule-file compiler and the single-pass rewriter.
//!
//! Grammar, one statement per line:
//!
//! ```text
//! # comment
//! %scheme ISO9
//! %separate                      # space before each syllable-like output
//! %readings han_readings.tsv     # per-character pinyin fallback
//! $vowel = [aeiou]
//! [pre] | match | [post] -> replacement @priority
//! match -> replacement
//! ```
//!
//! Classes are bracketed characters or `$variables`; `[^...]` negates and also
//! matches the text boundary. Replacements may be quoted to keep spaces, and
//! `\uXXXX` escapes work everywhere.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use unicode_normalization::char::{decompose_canonical, is_combining_mark};
use unicode_normalization::UnicodeNormalization;

use crate::pinyin::HanReadings;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("empty ruleset")]
    Empty,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate rule for {match_text:?} at priority {priority} (first on line {first_line})")]
    Duplicate {
        line: usize,
        first_line: usize,
        match_text: String,
        priority: i32,
    },
    #[error("readings table {file}: {message}")]
    Readings { file: String, message: String },
}

/// Text that no rule of an invertible scheme can produce.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvertError {
    #[error("{text:?} at bytes {}..{} is outside the scheme's image", span.start, span.end)]
    OutsideImage { span: Range<usize>, text: String },
    #[error("scheme {0} is not invertible")]
    NotInvertible(String),
}

/// The shipped schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum SchemeId {
    #[serde(rename = "ISO9")]
    Iso9,
    #[serde(rename = "ISO15919")]
    Iso15919,
    #[serde(rename = "PINYIN")]
    Pinyin,
    #[serde(rename = "HEPBURN")]
    Hepburn,
    #[serde(rename = "ADEGN")]
    Adegn,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [Self::Iso9, Self::Iso15919, Self::Pinyin, Self::Hepburn, Self::Adegn];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Iso9 => "ISO9",
            Self::Iso15919 => "ISO15919",
            Self::Pinyin => "PINYIN",
            Self::Hepburn => "HEPBURN",
            Self::Adegn => "ADEGN",
        }
    }
}

impl std::str::FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A one-character context test.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharClass {
    chars: Vec<char>,
    negated: bool,
}

impl CharClass {
    /// `None` is the text boundary.
    pub fn matches(&self, c: Option<char>) -> bool {
        match c {
            None => self.negated,
            Some(c) => self.chars.contains(&c) != self.negated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub pre: Option<CharClass>,
    pub pattern: Vec<char>,
    pub post: Option<CharClass>,
    pub replacement: String,
    pub priority: i32,
    /// 1-based source line.
    pub line: usize,
}

impl RewriteRule {
    fn fits(&self, chars: &[char], at: usize) -> bool {
        let end = at + self.pattern.len();
        chars[at..].starts_with(&self.pattern)
            && self
                .pre
                .as_ref()
                .is_none_or(|p| p.matches(at.checked_sub(1).map(|k| chars[k])))
            && self.post.as_ref().is_none_or(|p| p.matches(chars.get(end).copied()))
    }
}

/// A compiled scheme: rules in precedence order.
#[derive(Debug, Clone)]
pub struct RuleSet {
    scheme: Option<SchemeId>,
    rules: Vec<RewriteRule>,
    by_first: HashMap<char, Vec<usize>>,
    invertible: bool,
    separate: bool,
    readings: Option<Arc<HanReadings>>,
    inverse: Option<Inverse>,
}

/// Resolves `%readings` file names to tables.
pub trait ReadingsResolver {
    fn resolve(&mut self, file: &str) -> Result<Arc<HanReadings>, String>;
}

impl<F: FnMut(&str) -> Result<Arc<HanReadings>, String>> ReadingsResolver for F {
    fn resolve(&mut self, file: &str) -> Result<Arc<HanReadings>, String> {
        self(file)
    }
}

/// Resolves only the table bundled with the crate.
pub struct BundledReadings;

impl ReadingsResolver for BundledReadings {
    fn resolve(&mut self, file: &str) -> Result<Arc<HanReadings>, String> {
        if file == "han_readings.tsv" {
            Ok(Arc::clone(crate::data::bundled_readings_arc()))
        } else {
            Err(format!("no bundled readings file {file:?}"))
        }
    }
}

/// Compiles rule-file text, resolving `%readings` against the bundled table.
pub fn compile_ruleset(source: &str) -> Result<RuleSet, RuleError> {
    RuleSet::compile_with(source, &mut BundledReadings)
}

/// Rewrites `text` with `rs`; see [`RuleSet::apply`].
pub fn apply_ruleset(rs: &RuleSet, text: &str) -> String {
    rs.apply(text)
}

impl RuleSet {
    pub fn compile(source: &str) -> Result<Self, RuleError> {
        compile_ruleset(source)
    }

    pub fn compile_with(source: &str, resolver: &mut dyn ReadingsResolver) -> Result<Self, RuleError> {
        let mut parser = Parser::default();
        for (i, raw) in source.lines().enumerate() {
            parser.line(i + 1, raw, resolver)?;
        }
        let Parser {
            scheme,
            rules,
            separate,
            readings,
            ..
        } = parser;
        if rules.is_empty() && readings.is_none() {
            return Err(RuleError::Empty);
        }

        let mut seen: HashMap<(&Option<CharClass>, &[char], &Option<CharClass>, i32), usize> = HashMap::new();
        for r in &rules {
            if let Some(&first_line) = seen.get(&(&r.pre, &r.pattern[..], &r.post, r.priority)) {
                return Err(RuleError::Duplicate {
                    line: r.line,
                    first_line,
                    match_text: r.pattern.iter().collect(),
                    priority: r.priority,
                });
            }
            seen.insert((&r.pre, &r.pattern, &r.post, r.priority), r.line);
        }

        let mut rules = rules;
        // stable: file order breaks the remaining ties
        rules.sort_by(|a, b| b.priority.cmp(&a.priority).then(b.pattern.len().cmp(&a.pattern.len())));
        let mut by_first: HashMap<char, Vec<usize>> = HashMap::new();
        for (idx, r) in rules.iter().enumerate() {
            by_first.entry(r.pattern[0]).or_default().push(idx);
        }
        let invertible = readings.is_none() && is_invertible(&rules);
        let inverse = invertible.then(|| Inverse::new(&rules));
        Ok(Self {
            scheme,
            rules,
            by_first,
            invertible,
            separate,
            readings,
            inverse,
        })
    }

    pub fn scheme(&self) -> Option<SchemeId> {
        self.scheme
    }

    /// Rules in precedence order: priority, then match length, then file order.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    /// Whether syllable outputs are space-separated.
    pub fn separates(&self) -> bool {
        self.separate
    }

    /// Highest-precedence rule applicable at `chars[at]`.
    pub fn rule_at(&self, chars: &[char], at: usize) -> Option<&RewriteRule> {
        self.by_first
            .get(chars.get(at)?)?
            .iter()
            .map(|&i| &self.rules[i])
            .find(|r| r.fits(chars, at))
    }

    /// Single left-to-right pass; unmatched characters pass through. The result
    /// is NFC.
    pub fn apply(&self, text: &str) -> String {
        let mut out = String::with_capacity(text.len() * 2);
        self.apply_into(text, &mut out);
        out.nfc().collect()
    }

    /// Appends the rewrite of `text` to `out`. Separation decisions look at
    /// what `out` already holds, so consecutive calls behave like one pass.
    pub fn apply_into(&self, text: &str, out: &mut String) {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if let Some(rule) = self.rule_at(&chars, i) {
                self.emit(out, &rule.replacement, false);
                i += rule.pattern.len();
                continue;
            }
            let c = chars[i];
            match self.readings.as_ref().and_then(|r| r.get(c)) {
                Some(reading) => self.emit(out, &reading.toned(), true),
                None => out.push(c),
            }
            i += 1;
        }
    }

    fn emit(&self, out: &mut String, piece: &str, syllable: bool) {
        let starts_with_letter = piece.chars().next().is_some_and(char::is_alphabetic);
        let needs_space = out.chars().next_back().is_some_and(|c| !c.is_whitespace());
        if self.separate && syllable && starts_with_letter && needs_space {
            out.push(' ');
        }
        out.push_str(piece);
    }

    /// Maps scheme output back to the source script.
    pub fn invert(&self, text: &str) -> Result<String, InvertError> {
        let inverse = self.inverse.as_ref().ok_or_else(|| {
            InvertError::NotInvertible(self.scheme.map_or_else(|| "<unnamed>".to_string(), |s| s.to_string()))
        })?;
        inverse.apply(text)
    }
}

/// Pairwise distinct, non-empty, and no replacement is a prefix of another
/// unless a combining mark follows the prefix.
fn is_invertible(rules: &[RewriteRule]) -> bool {
    let mut images: Vec<Vec<char>> = Vec::with_capacity(rules.len());
    for r in rules {
        if r.replacement.is_empty() {
            return false;
        }
        images.push(r.replacement.nfd().collect());
    }
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            if i == j {
                continue;
            }
            if a == b {
                return false;
            }
            if b.len() > a.len() && b.starts_with(a) && !is_combining_mark(b[a.len()]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
struct Inverse {
    by_first: HashMap<char, Vec<(Vec<char>, String)>>,
}

impl Inverse {
    fn new(rules: &[RewriteRule]) -> Self {
        let mut by_first: HashMap<char, Vec<(Vec<char>, String)>> = HashMap::new();
        for r in rules {
            let key: Vec<char> = r.replacement.nfd().collect();
            by_first
                .entry(key[0])
                .or_default()
                .push((key, r.pattern.iter().collect()));
        }
        for bucket in by_first.values_mut() {
            bucket.sort_by_key(|e| std::cmp::Reverse(e.0.len()));
        }
        Self { by_first }
    }

    fn apply(&self, text: &str) -> Result<String, InvertError> {
        // decomposed characters with the byte offset of their source character
        let mut chars: Vec<(char, usize)> = Vec::with_capacity(text.len());
        for (offset, c) in text.char_indices() {
            decompose_canonical(c, |d| chars.push((d, offset)));
        }
        let plain: Vec<char> = chars.iter().map(|&(c, _)| c).collect();
        let byte_at = |k: usize| chars.get(k).map_or(text.len(), |&(_, o)| o);

        let mut out = String::with_capacity(text.len());
        let mut i = 0;
        while i < plain.len() {
            let found = self.by_first.get(&plain[i]).and_then(|bucket| {
                bucket.iter().find(|(key, _)| {
                    plain[i..].starts_with(key) && plain.get(i + key.len()).is_none_or(|&n| !is_combining_mark(n))
                })
            });
            if let Some((key, source)) = found {
                out.push_str(source);
                i += key.len();
                continue;
            }
            let c = plain[i];
            if c.is_alphabetic() || is_combining_mark(c) {
                let mut end = i + 1;
                while plain.get(end).is_some_and(|&n| is_combining_mark(n)) {
                    end += 1;
                }
                let span = byte_at(i)..byte_at(end).max(byte_at(i) + 1);
                let span = span.start..next_boundary(text, span.end);
                return Err(InvertError::OutsideImage {
                    text: text[span.clone()].to_string(),
                    span,
                });
            }
            out.push(c);
            i += 1;
        }
        Ok(out.nfc().collect())
    }
}

fn next_boundary(text: &str, mut at: usize) -> usize {
    while at < text.len() && !text.is_char_boundary(at) {
        at += 1;
    }
    at.min(text.len())
}

#[derive(Default)]
struct Parser {
    scheme: Option<SchemeId>,
    rules: Vec<RewriteRule>,
    vars: HashMap<String, Vec<char>>,
    separate: bool,
    readings: Option<Arc<HanReadings>>,
}

fn syntax(line: usize, message: impl Into<String>) -> RuleError {
    RuleError::Syntax {
        line,
        message: message.into(),
    }
}

impl Parser {
    fn line(&mut self, line: usize, raw: &str, resolver: &mut dyn ReadingsResolver) -> Result<(), RuleError> {
        let text = strip_comment(raw).trim();
        if text.is_empty() {
            return Ok(());
        }
        if let Some(directive) = text.strip_prefix('%') {
            return self.directive(line, directive, resolver);
        }
        if let Some(def) = text.strip_prefix('$') {
            let (name, class) = def
                .split_once('=')
                .ok_or_else(|| syntax(line, "expected `$name = [...]`"))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(syntax(line, format!("bad variable name {name:?}")));
            }
            let class = self.class(line, class.trim())?;
            if class.negated {
                return Err(syntax(line, "variables cannot be negated classes"));
            }
            self.vars.insert(name.to_string(), class.chars);
            return Ok(());
        }
        let rule = self.rule(line, text)?;
        self.rules.push(rule);
        Ok(())
    }

    fn directive(&mut self, line: usize, d: &str, resolver: &mut dyn ReadingsResolver) -> Result<(), RuleError> {
        let mut parts = d.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some("scheme"), Some(id), None) => {
                self.scheme = Some(id.parse().map_err(|e: String| syntax(line, e))?);
            }
            (Some("separate"), None, None) => self.separate = true,
            (Some("readings"), Some(file), None) => {
                let table = resolver.resolve(file).map_err(|message| RuleError::Readings {
                    file: file.to_string(),
                    message,
                })?;
                self.readings = Some(table);
            }
            _ => return Err(syntax(line, format!("unknown directive %{d}"))),
        }
        Ok(())
    }

    fn rule(&self, line: usize, text: &str) -> Result<RewriteRule, RuleError> {
        let (lhs, rhs) = split_arrow(text).ok_or_else(|| syntax(line, "expected `->`"))?;
        let fields: Vec<&str> = lhs.split('|').map(str::trim).collect();
        let (pre, pattern, post) = match fields[..] {
            [m] => (None, m, None),
            [p, m, q] => (self.context(line, p)?, m, self.context(line, q)?),
            _ => return Err(syntax(line, "expected `[pre] | match | [post]` or a bare match")),
        };
        let pattern: Vec<char> = unquote(line, pattern)?.chars().collect();
        if pattern.is_empty() {
            return Err(syntax(line, "empty match"));
        }
        let (replacement, priority) = match rhs.trim().rsplit_once('@') {
            Some((r, p)) if !p.is_empty() && p.trim().parse::<i32>().is_ok() && r.ends_with(char::is_whitespace) => {
                (r.trim(), p.trim().parse::<i32>().unwrap_or_default())
            }
            _ => (rhs.trim(), 0),
        };
        Ok(RewriteRule {
            pre,
            pattern,
            post,
            replacement: unquote(line, replacement)?,
            priority,
            line,
        })
    }

    fn context(&self, line: usize, field: &str) -> Result<Option<CharClass>, RuleError> {
        if field.is_empty() {
            Ok(None)
        } else {
            self.class(line, field).map(Some)
        }
    }

    fn class(&self, line: usize, src: &str) -> Result<CharClass, RuleError> {
        let inner = src
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| syntax(line, format!("expected a bracketed class, found {src:?}")))?;
        let (negated, inner) = match inner.strip_prefix('^') {
            Some(rest) => (true, rest),
            None => (false, inner),
        };
        let mut chars = Vec::new();
        let mut it = inner.chars().peekable();
        while let Some(c) = it.next() {
            match c {
                '$' => {
                    let mut name = String::new();
                    while let Some(&n) = it.peek() {
                        if n.is_alphanumeric() || n == '_' {
                            name.push(n);
                            it.next();
                        } else {
                            break;
                        }
                    }
                    let members = self
                        .vars
                        .get(&name)
                        .ok_or_else(|| syntax(line, format!("undefined variable ${name}")))?;
                    chars.extend_from_slice(members);
                }
                '\\' => chars.push(escape(line, &mut it)?),
                c if c.is_whitespace() => {}
                c => chars.push(c),
            }
        }
        if chars.is_empty() && !negated {
            return Err(syntax(line, "empty class"));
        }
        Ok(CharClass { chars, negated })
    }
}

fn split_arrow(text: &str) -> Option<(&str, &str)> {
    // the first arrow outside quotes
    let mut quote = None;
    for (i, c) in text.char_indices() {
        match (quote, c) {
            (None, '\'' | '"') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, '-') if text[i..].starts_with("->") => return Some((&text[..i], &text[i + 2..])),
            (None, '→') => return Some((&text[..i], &text[i + '→'.len_utf8()..])),
            _ => {}
        }
    }
    None
}

fn strip_comment(line: &str) -> &str {
    if line.trim_start().starts_with('#') {
        return "";
    }
    let mut quote = None;
    let mut prev_space = false;
    for (i, c) in line.char_indices() {
        match (quote, c) {
            (None, '\'' | '"') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, '#') if prev_space => return &line[..i],
            _ => {}
        }
        prev_space = c.is_whitespace();
    }
    line
}

fn escape(line: usize, it: &mut impl Iterator<Item = char>) -> Result<char, RuleError> {
    match it.next() {
        Some('u') => {
            let hex: String = it.take(4).collect();
            u32::from_str_radix(&hex, 16)
                .ok()
                .filter(|_| hex.len() == 4)
                .and_then(char::from_u32)
                .ok_or_else(|| syntax(line, format!("bad escape \\u{hex}")))
        }
        Some(c @ ('\\' | '\'' | '"' | '[' | ']' | '|' | '$' | '#' | '@')) => Ok(c),
        other => Err(syntax(
            line,
            format!("bad escape \\{}", other.map(String::from).unwrap_or_default()),
        )),
    }
}

fn unquote(line: usize, src: &str) -> Result<String, RuleError> {
    let body = match src.chars().next() {
        // a lone quote character is itself
        Some('\'' | '"') if src.len() == 1 => src,
        Some(q @ ('\'' | '"')) if src.len() >= 2 && src.ends_with(q) => &src[1..src.len() - 1],
        Some('\'' | '"') => return Err(syntax(line, format!("unterminated quote in {src:?}"))),
        _ => src,
    };
    let mut out = String::with_capacity(body.len());
    let mut it = body.chars();
    while let Some(c) = it.next() {
        if c == '\\' {
            out.push(escape(line, &mut it)?);
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_mappings_are_invertible() {
        let rs = compile_ruleset("ж -> ž\nш -> š\n").unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs.is_invertible());
        assert_eq!(rs.invert("šž").unwrap(), "шж");
    }

    #[test]
    fn collisions_are_not_invertible() {
        let rs = compile_ruleset("а -> a\nя -> a\n").unwrap();
        assert!(!rs.is_invertible());
        assert!(matches!(rs.invert("a"), Err(InvertError::NotInvertible(_))));
    }

    #[test]
    fn prefixes_break_invertibility_except_before_marks() {
        assert!(!compile_ruleset("ш -> s\nщ -> sc\n").unwrap().is_invertible());
        assert!(compile_ruleset("с -> s\nш -> š\n").unwrap().is_invertible());
        assert!(!compile_ruleset("ъ -> ''\n").unwrap().is_invertible());
    }

    #[test]
    fn empty_sources() {
        assert_eq!(compile_ruleset("").unwrap_err(), RuleError::Empty);
        assert_eq!(
            compile_ruleset("# only comments\n\n").unwrap_err().to_string(),
            "empty ruleset"
        );
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = compile_ruleset("a -> b\nnonsense\n").unwrap_err();
        assert_eq!(err, syntax(2, "expected `->`"));
        assert!(matches!(
            compile_ruleset("[x | a -> b"),
            Err(RuleError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            compile_ruleset("| a | [$nope] -> b"),
            Err(RuleError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            compile_ruleset("%bogus"),
            Err(RuleError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            compile_ruleset(" -> b"),
            Err(RuleError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn duplicates_at_equal_priority() {
        let err = compile_ruleset("a -> b\nc -> d\na -> e\n").unwrap_err();
        assert!(matches!(
            err,
            RuleError::Duplicate {
                line: 3,
                first_line: 1,
                ..
            }
        ));
        assert!(compile_ruleset("a -> b\na -> e @1\n").is_ok());
        assert!(compile_ruleset("a -> b\n| a | [x] -> e\n").is_ok());
    }

    #[test]
    fn precedence_order() {
        let rs = compile_ruleset("a -> 1\nab -> 2\na -> 3 @5\nb -> 4\n").unwrap();
        let lines: Vec<usize> = rs.rules().iter().map(|r| r.line).collect();
        assert_eq!(lines, [3, 2, 1, 4]);
        assert_eq!(rs.apply("abab"), "3434");
        let rs = compile_ruleset("a -> 1\nab -> 2\n").unwrap();
        assert_eq!(rs.apply("abaa"), "211");
    }

    #[test]
    fn contexts() {
        let src = "$v = [aeiou]\n| n | [$v] -> N @1\nn -> m\n[^a] | x | -> X @1\n";
        let rs = compile_ruleset(src).unwrap();
        assert_eq!(rs.apply("nanbn"), "Nambm");
        assert_eq!(rs.apply("xax"), "Xax");
        assert_eq!(rs.apply("bx"), "bX");
    }

    #[test]
    fn quoting_and_escapes() {
        let rs = compile_ruleset("、 -> ', '\n・ -> \" \"\n\\u0416 -> Zh\nー -> \\u0304\n").unwrap();
        assert_eq!(rs.apply("ア、イ・Ж"), "ア, イ Zh");
        assert_eq!(rs.rules()[3].replacement, "\u{304}");
        let rs = compile_ruleset("a -> b # trailing comment\n'#' -> hash\n").unwrap();
        assert_eq!(rs.apply("a#"), "bhash");
    }

    #[test]
    fn unicode_arrow_is_accepted() {
        let rs = compile_ruleset("ж→ž\nш→š").unwrap();
        assert!(rs.is_invertible());
        assert_eq!(rs.apply("жш"), "žš");
    }

    #[test]
    fn empty_input() {
        let rs = compile_ruleset("a -> b").unwrap();
        assert_eq!(rs.apply(""), "");
        assert_eq!(rs.invert("").unwrap(), "");
    }

    #[test]
    fn invert_reports_span() {
        let rs = compile_ruleset("ж -> ž\nа -> a\n").unwrap();
        let err = rs.invert("ža q").unwrap_err();
        assert_eq!(
            err,
            InvertError::OutsideImage {
                span: 4..5,
                text: "q".into()
            }
        );
    }

    #[test]
    fn separate_spacing() {
        let readings = Arc::new(HanReadings::parse("r", "4EBA\tren2\tscript\n751F\tsheng1\tscript\n").unwrap());
        let mut resolver = |_: &str| Ok(Arc::clone(&readings));
        let rs = RuleSet::compile_with("%separate\n%readings r\n。 -> .\n", &mut resolver).unwrap();
        assert_eq!(rs.apply("人人生。"), "rén rén shēng.");
        let mut out = String::from("abc");
        rs.apply_into("人", &mut out);
        assert_eq!(out, "abc rén");
        let mut out = String::from("a, ");
        rs.apply_into("人", &mut out);
        assert_eq!(out, "a, rén");
    }
}
