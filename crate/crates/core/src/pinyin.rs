//! Numbered pinyin readings (`ren2`, `lv4`) and tone-mark placement.

use std::collections::HashMap;

use unicode_normalization::UnicodeNormalization;

use crate::uroman::table::{parse_rows, TableError};

/// A Mandarin syllable with its tone number (1-4, 5 for neutral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reading {
    syllable: String,
    tone: u8,
}

impl Reading {
    /// Parses `"ren2"`. `v` stands for `ü`; a missing digit means neutral tone.
    pub fn parse(numbered: &str) -> Option<Self> {
        let (syllable, tone) = match numbered.as_bytes().last()? {
            d @ b'1'..=b'5' => (&numbered[..numbered.len() - 1], d - b'0'),
            _ => (numbered, 5),
        };
        if syllable.is_empty() || !syllable.bytes().all(|b| b.is_ascii_lowercase()) {
            return None;
        }
        Some(Self {
            syllable: syllable.to_string(),
            tone,
        })
    }

    pub fn tone(&self) -> u8 {
        self.tone
    }

    /// Toneless ASCII form; `ü` folds to `u`.
    pub fn ascii(&self) -> String {
        self.syllable.replace('v', "u")
    }

    /// Pinyin with the tone diacritic on the nucleus vowel, NFC.
    pub fn toned(&self) -> String {
        place_tone(&self.syllable.replace('v', "ü"), self.tone)
    }
}

/// Puts the tone mark on the nucleus: `a` or `e` when present, `o` in `ou`,
/// otherwise the last vowel; vowelless syllables (`m`, `ng`, `hm`) mark their
/// first nasal.
pub fn place_tone(syllable: &str, tone: u8) -> String {
    let mark = match tone {
        1 => '\u{304}',
        2 => '\u{301}',
        3 => '\u{30C}',
        4 => '\u{300}',
        _ => return syllable.nfc().collect(),
    };
    let chars: Vec<char> = syllable.chars().collect();
    let find = |c: char| chars.iter().position(|&x| x == c);
    let target = find('a')
        .or_else(|| find('e'))
        .or_else(|| find('ê'))
        .or_else(|| chars.windows(2).position(|w| w == ['o', 'u']))
        .or_else(|| chars.iter().rposition(|c| matches!(c, 'i' | 'o' | 'u' | 'ü')))
        .or_else(|| chars.iter().position(|c| matches!(c, 'm' | 'n')));
    let Some(target) = target else {
        return syllable.nfc().collect();
    };
    let mut out = String::with_capacity(syllable.len() + 2);
    for (i, c) in chars.iter().enumerate() {
        out.push(*c);
        if i == target {
            out.push(mark);
        }
    }
    out.nfc().collect()
}

/// Most common reading per Han character, loaded from the mapping-table
/// format with a numbered-pinyin output column.
#[derive(Debug, Clone, Default)]
pub struct HanReadings {
    map: HashMap<char, Reading>,
}

impl HanReadings {
    pub fn parse(file: &str, src: &str) -> Result<Self, TableError> {
        let mut map = HashMap::new();
        for row in parse_rows(file, src)? {
            let bad = |message: String| TableError {
                file: file.to_string(),
                line: row.line,
                message,
            };
            let [c] = row.key[..] else {
                return Err(bad(format!("reading key must be one character, got {}", row.key.len())));
            };
            let reading = Reading::parse(&row.output).ok_or_else(|| bad(format!("bad reading {:?}", row.output)))?;
            map.insert(c, reading);
        }
        Ok(Self { map })
    }

    /// The shared table compiled into the crate.
    pub fn bundled() -> &'static HanReadings {
        crate::data::bundled_readings()
    }

    pub fn get(&self, c: char) -> Option<&Reading> {
        self.map.get(&c)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (char, &Reading)> {
        self.map.iter().map(|(c, r)| (*c, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toned(s: &str) -> String {
        Reading::parse(s).unwrap().toned()
    }

    #[test]
    fn nucleus_rules() {
        assert_eq!(toned("ren2"), "rén");
        assert_eq!(toned("sheng1"), "shēng");
        assert_eq!(toned("er2"), "ér");
        assert_eq!(toned("zi4"), "zì");
        assert_eq!(toned("you2"), "yóu");
        assert_eq!(toned("ping2"), "píng");
        assert_eq!(toned("deng3"), "děng");
        assert_eq!(toned("gou3"), "gǒu");
        assert_eq!(toned("xiu1"), "xiū");
        assert_eq!(toned("hui4"), "huì");
        assert_eq!(toned("lv4"), "lǜ");
        assert_eq!(toned("lve4"), "lüè");
        assert_eq!(toned("guo2"), "guó");
        assert_eq!(toned("de5"), "de");
        assert_eq!(toned("n2"), "ń");
        assert_eq!(toned("m2"), "ḿ");
        assert_eq!(toned("hm5"), "hm");
        assert_eq!(toned("ng3"), "ň\u{67}");
    }

    #[test]
    fn ascii_folds_umlaut() {
        assert_eq!(Reading::parse("lv4").unwrap().ascii(), "lu");
        assert_eq!(Reading::parse("ren2").unwrap().ascii(), "ren");
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(Reading::parse(""), None);
        assert_eq!(Reading::parse("3"), None);
        assert_eq!(Reading::parse("Ren2"), None);
        assert_eq!(Reading::parse("ren").unwrap().tone(), 5);
    }

    #[test]
    fn readings_table() {
        let t = HanReadings::parse("t", "4EBA\tren2\tscript\n751F\tsheng1\tscript\n").unwrap();
        assert_eq!(t.get('人').unwrap().toned(), "rén");
        assert_eq!(t.len(), 2);
        assert!(HanReadings::parse("t", "4EBA\tRen\tscript\n").is_err());
        assert!(HanReadings::parse("t", "4EBA 4EBA\tren2\tscript\n").is_err());
    }

    #[test]
    fn bundled_readings_cover_table_goldens() {
        let t = HanReadings::bundled();
        let got: Vec<String> = "人人生而自由平等".chars().map(|c| t.get(c).unwrap().toned()).collect();
        assert_eq!(got.join(" "), "rén rén shēng ér zì yóu píng děng");
    }
}
