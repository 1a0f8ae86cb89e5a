#!/usr/bin/env python3
"""Regenerate the machine-built romanization tables:

  data/uroman/han_readings.tsv   numbered pinyin, most common reading (pypinyin)
  data/uroman/kana.tsv           Hepburn without macrons, sokuon/yoon expanded
  data/schemes/hepburn.rules     Hepburn rule file (context rules for sokuon, n')
  data/schemes/iso15919.rules    Devanagari rule file (inherent vowel handling)

The hand-curated files (overrides.tsv, arabic.tsv, iso9.rules, adegn.rules,
pinyin.rules, registry.tsv) are edited directly.
"""
import unicodedata as ud
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"

# ---------------------------------------------------------------- Han readings
TONE = {"̄": 1, "́": 2, "̌": 3, "̀": 4}


def numbered(toned):
    tone, out = 5, []
    for c in ud.normalize("NFD", toned):
        if c in TONE:
            tone = TONE[c]
        else:
            out.append(c)
    return ud.normalize("NFC", "".join(out)).replace("ü", "v") + str(tone)


def write_han_readings():
    from pypinyin import pinyin_dict

    lines = [
        "# Han readings: most common Mandarin reading in numbered pinyin (v = u-umlaut, 5 = neutral).",
        "# <codepoint>\t<reading>\t<tier>",
    ]
    for cp in sorted(pinyin_dict.pinyin_dict):
        first = pinyin_dict.pinyin_dict[cp].split(",")[0]
        lines.append(f"{cp:04X}\t{numbered(first)}\tscript")
    (DATA / "uroman" / "han_readings.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


# ------------------------------------------------------------------------ kana
GOJUON = [
    ("あ", "a"), ("い", "i"), ("う", "u"), ("え", "e"), ("お", "o"),
    ("か", "ka"), ("き", "ki"), ("く", "ku"), ("け", "ke"), ("こ", "ko"),
    ("が", "ga"), ("ぎ", "gi"), ("ぐ", "gu"), ("げ", "ge"), ("ご", "go"),
    ("さ", "sa"), ("し", "shi"), ("す", "su"), ("せ", "se"), ("そ", "so"),
    ("ざ", "za"), ("じ", "ji"), ("ず", "zu"), ("ぜ", "ze"), ("ぞ", "zo"),
    ("た", "ta"), ("ち", "chi"), ("つ", "tsu"), ("て", "te"), ("と", "to"),
    ("だ", "da"), ("ぢ", "ji"), ("づ", "zu"), ("で", "de"), ("ど", "do"),
    ("な", "na"), ("に", "ni"), ("ぬ", "nu"), ("ね", "ne"), ("の", "no"),
    ("は", "ha"), ("ひ", "hi"), ("ふ", "fu"), ("へ", "he"), ("ほ", "ho"),
    ("ば", "ba"), ("び", "bi"), ("ぶ", "bu"), ("べ", "be"), ("ぼ", "bo"),
    ("ぱ", "pa"), ("ぴ", "pi"), ("ぷ", "pu"), ("ぺ", "pe"), ("ぽ", "po"),
    ("ま", "ma"), ("み", "mi"), ("む", "mu"), ("め", "me"), ("も", "mo"),
    ("や", "ya"), ("ゆ", "yu"), ("よ", "yo"),
    ("ら", "ra"), ("り", "ri"), ("る", "ru"), ("れ", "re"), ("ろ", "ro"),
    ("わ", "wa"), ("ゐ", "i"), ("ゑ", "e"), ("を", "o"), ("ゔ", "vu"),
    ("ぁ", "a"), ("ぃ", "i"), ("ぅ", "u"), ("ぇ", "e"), ("ぉ", "o"),
    ("ゃ", "ya"), ("ゅ", "yu"), ("ょ", "yo"), ("ゎ", "wa"), ("ゕ", "ka"), ("ゖ", "ke"),
]
YOON_BASE = {
    "き": "ky", "ぎ": "gy", "し": "sh", "じ": "j", "ち": "ch", "ぢ": "j",
    "に": "ny", "ひ": "hy", "び": "by", "ぴ": "py", "み": "my", "り": "ry",
}
YOON_SMALL = {"ゃ": "a", "ゅ": "u", "ょ": "o"}
# katakana-only extended digraphs
EXTENDED = [
    ("ファ", "fa"), ("フィ", "fi"), ("フェ", "fe"), ("フォ", "fo"),
    ("ティ", "ti"), ("ディ", "di"), ("トゥ", "tu"), ("ドゥ", "du"),
    ("ウィ", "wi"), ("ウェ", "we"), ("ウォ", "wo"),
    ("ヴァ", "va"), ("ヴィ", "vi"), ("ヴェ", "ve"), ("ヴォ", "vo"),
    ("シェ", "she"), ("ジェ", "je"), ("チェ", "che"),
    ("ツァ", "tsa"), ("ツィ", "tsi"), ("ツェ", "tse"), ("ツォ", "tso"),
]
SOKUON_H = "っ"
HATSUON_H = "ん"


def to_kata(s):
    return "".join(chr(ord(c) + 0x60) if 0x3041 <= ord(c) <= 0x3096 else c for c in s)


def kana_units():
    """(kana, romaji) for every single unit: gojuon, yoon, extended, both scripts."""
    units = list(GOJUON)
    for base, onset in YOON_BASE.items():
        for small, vowel in YOON_SMALL.items():
            units.append((base + small, onset + vowel))
    out = []
    for k, r in units:
        out.append((k, r))
        out.append((to_kata(k), r))
    out.extend(EXTENDED)
    out.append(("ヷ", "va"))
    out.append(("ヸ", "vi"))
    out.append(("ヹ", "ve"))
    out.append(("ヺ", "vo"))
    return out


def gemination(romaji):
    if romaji[0] in "aeiou":
        return None
    if romaji.startswith("ch"):
        return "t"
    return romaji[0]


def hexs(s):
    return " ".join(f"{ord(c):04X}" for c in s)


def write_kana_table():
    lines = [
        "# Kana to Hepburn (no macrons). Longest key wins.",
        "# <codepoints>\t<ascii>\t<tier>",
    ]
    units = kana_units()
    for k, r in units:
        lines.append(f"{hexs(k)}\t{r}\tscript")
    for sokuon in ("っ", "ッ"):
        for k, r in units:
            g = gemination(r)
            if g:
                lines.append(f"{hexs(sokuon + k)}\t{g + r}\tscript")
        lines.append(f"{hexs(sokuon)}\t\tscript")
    lines.append(f"{hexs('ん')}\tn\tscript")
    lines.append(f"{hexs('ン')}\tn\tscript")
    lines.append(f"{hexs('ー')}\t\tscript")
    lines.append(f"{hexs('・')}\t \tscript")
    (DATA / "uroman" / "kana.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_hepburn_rules():
    units = kana_units()
    lines = [
        "# Hepburn romanization for hiragana and katakana.",
        "%scheme HEPBURN",
        "",
        "$vowel_kana = [あいうえおやゆよアイウエオヤユヨ]",
    ]
    by_onset = {}
    for k, r in units:
        g = gemination(r)
        if g:
            by_onset.setdefault(g, set()).add(k[0])
    lines.append("")
    lines.append("# sokuon doubles the following consonant")
    for g in sorted(by_onset):
        cls = "".join(sorted(by_onset[g]))
        lines.append(f"| っ | [{cls}] -> {g} @1")
        lines.append(f"| ッ | [{cls}] -> {g} @1")
    lines.append("っ -> ''")
    lines.append("ッ -> ''")
    lines.append("")
    lines.append("# syllabic n before a vowel or y is disambiguated with an apostrophe")
    lines.append("| ん | [$vowel_kana] -> \"n'\" @1")
    lines.append("| ン | [$vowel_kana] -> \"n'\" @1")
    lines.append("ん -> n")
    lines.append("ン -> n")
    lines.append("")
    lines.append("# long vowel mark lengthens the preceding vowel")
    lines.append("ー -> \\u0304")
    lines.append("")
    for k, r in units:
        lines.append(f"{k} -> {r}")
    lines.append("")
    lines.append("、 -> \", \"")
    lines.append("。 -> .")
    lines.append("・ -> ' '")
    lines.append("「 -> '\"'")
    lines.append("」 -> '\"'")
    (DATA / "schemes" / "hepburn.rules").write_text("\n".join(lines) + "\n", encoding="utf-8")


# ----------------------------------------------------------------- ISO 15919
CONSONANTS = [
    ("क", "k"), ("ख", "kh"), ("ग", "g"), ("घ", "gh"), ("ङ", "ṅ"),
    ("च", "c"), ("छ", "ch"), ("ज", "j"), ("झ", "jh"), ("ञ", "ñ"),
    ("ट", "ṭ"), ("ठ", "ṭh"), ("ड", "ḍ"), ("ढ", "ḍh"), ("ण", "ṇ"),
    ("त", "t"), ("थ", "th"), ("द", "d"), ("ध", "dh"), ("न", "n"), ("ऩ", "ṉ"),
    ("प", "p"), ("फ", "ph"), ("ब", "b"), ("भ", "bh"), ("म", "m"),
    ("य", "y"), ("र", "r"), ("ऱ", "ṟ"), ("ल", "l"), ("ळ", "ḷ"), ("ऴ", "ḻ"), ("व", "v"),
    ("श", "ś"), ("ष", "ṣ"), ("स", "s"), ("ह", "h"),
]
NUKTA_FORMS = [
    ("क़", "q"), ("ख़", "ḵh"), ("ग़", "ġ"), ("ज़", "z"), ("ड़", "ṛ"), ("ढ़", "ṛh"), ("फ़", "f"), ("य़", "ẏ"),
]
VOWELS = [
    ("अ", "a"), ("आ", "ā"), ("इ", "i"), ("ई", "ī"), ("उ", "u"), ("ऊ", "ū"),
    ("ऋ", "r̥"), ("ॠ", "r̥̄"), ("ऌ", "l̥"), ("ॡ", "l̥̄"),
    ("ऍ", "ê"), ("ऎ", "e"), ("ए", "ē"), ("ऐ", "ai"), ("ऑ", "ô"), ("ऒ", "o"), ("ओ", "ō"), ("औ", "au"),
]
MATRAS = [
    ("ा", "ā"), ("ि", "i"), ("ी", "ī"), ("ु", "u"), ("ू", "ū"), ("ृ", "r̥"), ("ॄ", "r̥̄"),
    ("ॢ", "l̥"), ("ॣ", "l̥̄"), ("ॅ", "ê"), ("ॆ", "e"), ("े", "ē"), ("ै", "ai"), ("ॉ", "ô"),
    ("ॊ", "o"), ("ो", "ō"), ("ौ", "au"),
]


def write_iso15919_rules():
    lines = [
        "# ISO 15919 transliteration of Devanagari.",
        "%scheme ISO15919",
        "",
        "$sign = [" + "".join(m for m, _ in MATRAS) + "्]",
        "$velar = [कखगघङ]",
        "$palatal = [चछजझञ]",
        "$retroflex = [टठडढण]",
        "$dental = [तथदधन]",
        "$labial = [पफबभम]",
        "",
        "# a consonant followed by a vowel sign or virama loses its inherent vowel",
    ]
    for dev, lat in NUKTA_FORMS + CONSONANTS:
        lines.append(f"| {dev} | [$sign] -> {lat} @1")
        lines.append(f"{dev} -> {lat}a")
    lines.append("")
    for dev, lat in VOWELS + MATRAS:
        lines.append(f"{dev} -> {lat}")
    lines += [
        "",
        "् -> ''",
        "़ -> ''",
        "",
        "# anusvara assimilates to the class of the following stop",
        "| ं | [$velar] -> ṅ @1",
        "| ं | [$palatal] -> ñ @1",
        "| ं | [$retroflex] -> ṇ @1",
        "| ं | [$dental] -> n @1",
        "| ं | [$labial] -> m @1",
        "ं -> ṁ",
        "ँ -> m̐",
        "ः -> ḥ",
        "ऽ -> '",
        "ॐ -> ōm̐",
        "। -> .",
        "॥ -> .",
    ]
    (DATA / "schemes" / "iso15919.rules").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_han_readings()
    write_kana_table()
    write_hepburn_rules()
    write_iso15919_rules()
