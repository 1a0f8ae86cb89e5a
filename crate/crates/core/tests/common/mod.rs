#![allow(dead_code)]

use std::collections::HashSet;

use romanlab::{normalize, NormalizationForm, Vocabulary, WORD_BOUNDARY};

/// Reference tokenizer: string pieces, every merge applied in list order
/// across the whole unit.
pub fn naive_encode(vocab: &Vocabulary, text: &str) -> Vec<String> {
    let cfg = vocab.config();
    let base: HashSet<&str> = vocab.tokens().iter().map(String::as_str).collect();
    let text = normalize(text, NormalizationForm::Nfkc);
    if text.is_empty() {
        return Vec::new();
    }
    let marker = WORD_BOUNDARY.to_string();
    let mut units: Vec<Vec<String>> = vec![Vec::new()];
    if cfg.add_dummy_prefix {
        units[0].push(marker.clone());
    }
    for c in text.chars() {
        if c == ' ' {
            if cfg.split_by_whitespace {
                units.push(Vec::new());
            }
            units.last_mut().unwrap().push(marker.clone());
            continue;
        }
        let own_unit = cfg.split_by_whitespace && c.is_whitespace();
        if own_unit {
            units.push(Vec::new());
        }
        let s = c.to_string();
        let cur = units.last_mut().unwrap();
        if c != WORD_BOUNDARY && base.contains(s.as_str()) {
            cur.push(s);
        } else if cfg.byte_fallback {
            cur.extend(s.bytes().map(|b| format!("<0x{b:02X}>")));
        } else {
            cur.push("<unk>".into());
        }
        if own_unit {
            units.push(Vec::new());
        }
    }
    let mut out = Vec::new();
    for mut unit in units {
        for (l, r) in vocab.merges() {
            let mut i = 0;
            let mut next = Vec::with_capacity(unit.len());
            while i < unit.len() {
                if i + 1 < unit.len() && &unit[i] == l && &unit[i + 1] == r {
                    next.push(format!("{l}{r}"));
                    i += 2;
                } else {
                    next.push(unit[i].clone());
                    i += 1;
                }
            }
            unit = next;
        }
        out.extend(unit);
    }
    out
}

pub fn naive_word_count(text: &str, character: bool) -> u64 {
    if character {
        text.chars().filter(|c| !c.is_whitespace()).count() as u64
    } else {
        let mut n = 0;
        let mut inside = false;
        for c in text.chars() {
            if c.is_whitespace() {
                inside = false;
            } else if !inside {
                inside = true;
                n += 1;
            }
        }
        n
    }
}

pub const RUSSIAN: &str = "абвгдеёжзийклмнопрстуфхцчшщъыьэюяАБВГДЕЁЖЗИЙКЛМНОПРСТУФХЦЧШЩЪЫЬЭЮЯ";

/// `(native, uroman, uconv-auto)` for the five reference sentences.
pub const REFERENCE_SENTENCES: [(&str, &str, &str); 5] = [
    (
        "الناس يولدون أحرارًا ومتساوين.",
        "alnas ywldwn ahrara wmtsawyn.",
        "ạlnạs ywldwn ạ̉ḥrạraⁿạ wmtsạwyn.",
    ),
    (
        "मनुष्य जन्म से स्वतंत्र और समान होते हैं।",
        "manussya janma se svatamtra aur samaan hote haim.",
        "manuṣya janma sē svatantra aura samāna hōtē haiṁ.",
    ),
    (
        "すべての人は、生まれながら自由で平等である。",
        "subetenorenha, shengmarenagaraziyoudepingdengdearu.",
        "subeteno rénha, shēngmarenagara zì yóude píng děngdearu.",
    ),
    (
        "人人生而自由平等。",
        "renrenshengerziyoupingdeng.",
        "rén rén shēng ér zì yóu píng děng.",
    ),
    (
        "Все люди рождаются свободными и равными.",
        "Vse lyudi rozhdayutsya svobodnymi i ravnymi.",
        "Vse lûdi roždaûtsâ svobodnymi i ravnymi.",
    ),
];
