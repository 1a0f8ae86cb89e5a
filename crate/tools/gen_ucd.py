#!/usr/bin/env python3
"""Regenerate data/ucd/{UnicodeData.txt,Scripts.txt} in the standard UCD flat-file
layout.

Requires `unicodedata2` (character properties) and `fontTools` (script ranges) at
the same Unicode version. Case-mapping and ISO-comment columns are left empty;
only name, category, combining class, bidi class, decomposition and numeric
columns are populated.
"""
import sys
from fractions import Fraction
from pathlib import Path

import unicodedata2 as ud
from fontTools.unicodedata import Scripts

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "data" / "ucd"
VERSION = ud.unidata_version

RANGE_KINDS = [
    ("CJK UNIFIED IDEOGRAPH-", "CJK Ideograph"),
    ("TANGUT IDEOGRAPH-", "Tangut Ideograph"),
    ("HANGUL SYLLABLE ", "Hangul Syllable"),
]


def fields(cp):
    c = chr(cp)
    cat = ud.category(c)
    if cat == "Cn":
        return None
    if cat == "Cc":
        name = "<control>"
    else:
        name = ud.name(c, "")
    dec = ud.decimal(c, None)
    dig = ud.digit(c, None)
    num = ud.numeric(c, None)
    if name.startswith("CJK UNIFIED IDEOGRAPH-"):
        # numeric values of unified ideographs live in Unihan, not UnicodeData
        dec = dig = num = None
    if num is not None:
        frac = Fraction(num).limit_denominator(1000)
        num = str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    return [
        name,
        cat,
        str(ud.combining(c)),
        ud.bidirectional(c),
        ud.decomposition(c),
        "" if dec is None else str(dec),
        "" if dig is None else str(dig),
        "" if num is None else num,
        "Y" if ud.mirrored(c) else "N",
        "",
        "",
        "",
        "",
        "",
    ]


def script_of(cp):
    import bisect
    return Scripts.VALUES[bisect.bisect_right(Scripts.RANGES, cp) - 1]


def range_kind(cp, f):
    if f is None:
        return None
    cat = f[1]
    if cat == "Cs":
        return "Surrogate"
    if cat == "Co":
        return "Private Use"
    if f[0] == "":
        # unicodedata2 leaves some algorithmic ideograph names empty
        sc = script_of(cp)
        if sc == "Hani":
            return "CJK Ideograph"
        if sc == "Tang":
            return "Tangut Ideograph"
    for prefix, label in RANGE_KINDS:
        if f[0].startswith(prefix):
            return label
    return None


def write_unicode_data():
    lines = []
    cp = 0
    while cp <= 0x10FFFF:
        f = fields(cp)
        kind = range_kind(cp, f)
        if f is None:
            cp += 1
            continue
        if kind is None:
            lines.append(";".join([f"{cp:04X}"] + f))
            cp += 1
            continue
        start = cp
        rest = f[1:]
        while cp + 1 <= 0x10FFFF:
            g = fields(cp + 1)
            if range_kind(cp + 1, g) != kind or g[1:] != rest:
                break
            cp += 1
        if start == cp:
            lines.append(";".join([f"{start:04X}"] + f))
        else:
            lines.append(";".join([f"{start:04X}", f"<{kind}, First>"] + rest))
            lines.append(";".join([f"{cp:04X}", f"<{kind}, Last>"] + rest))
        cp += 1
    (OUT / "UnicodeData.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_scripts():
    out = [f"# Scripts-{VERSION}.txt", "#", "# Format: <range> ; <script name>", ""]
    starts = Scripts.RANGES
    for i, start in enumerate(starts):
        end = (starts[i + 1] - 1) if i + 1 < len(starts) else 0x10FFFF
        code = Scripts.VALUES[i]
        if code == "Zzzz":
            continue
        name = Scripts.NAMES[code]
        rng = f"{start:04X}" if start == end else f"{start:04X}..{end:04X}"
        out.append(f"{rng:<14}; {name}")
    (OUT / "Scripts.txt").write_text("\n".join(out) + "\n", encoding="utf-8")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write_unicode_data()
    write_scripts()
    print(f"wrote UCD {VERSION} to {OUT}", file=sys.stderr)
