//! Data files compiled into the crate and the lazily built shared engines.

use std::sync::{Arc, OnceLock};

use crate::pinyin::HanReadings;
use crate::scheme::SchemeRegistry;
use crate::ucd::CharacterDatabase;
use crate::uroman::Uroman;

pub const UNICODE_DATA: &str = include_str!("../data/ucd/UnicodeData.txt");
pub const SCRIPTS: &str = include_str!("../data/ucd/Scripts.txt");

pub const UROMAN_OVERRIDES: &str = include_str!("../data/uroman/overrides.tsv");
pub const UROMAN_ARABIC: &str = include_str!("../data/uroman/arabic.tsv");
pub const UROMAN_KANA: &str = include_str!("../data/uroman/kana.tsv");
pub const HAN_READINGS: &str = include_str!("../data/uroman/han_readings.tsv");

pub const SCHEME_REGISTRY: &str = include_str!("../data/schemes/registry.tsv");

/// Scheme rule files by file name, as referenced from the registry.
pub const SCHEME_FILES: &[(&str, &str)] = &[
    ("iso9.rules", include_str!("../data/schemes/iso9.rules")),
    ("iso15919.rules", include_str!("../data/schemes/iso15919.rules")),
    ("pinyin.rules", include_str!("../data/schemes/pinyin.rules")),
    ("hepburn.rules", include_str!("../data/schemes/hepburn.rules")),
    ("adegn.rules", include_str!("../data/schemes/adegn.rules")),
    ("han_readings.tsv", HAN_READINGS),
];

pub(crate) fn bundled_file(name: &str) -> Option<&'static str> {
    SCHEME_FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub(crate) fn bundled_database_arc() -> &'static Arc<CharacterDatabase> {
    static DB: OnceLock<Arc<CharacterDatabase>> = OnceLock::new();
    DB.get_or_init(|| Arc::new(CharacterDatabase::parse(UNICODE_DATA, SCRIPTS).expect("bundled UCD files parse")))
}

pub(crate) fn bundled_database() -> &'static CharacterDatabase {
    bundled_database_arc()
}

pub(crate) fn bundled_readings_arc() -> &'static Arc<HanReadings> {
    static READINGS: OnceLock<Arc<HanReadings>> = OnceLock::new();
    READINGS
        .get_or_init(|| Arc::new(HanReadings::parse("han_readings.tsv", HAN_READINGS).expect("bundled readings parse")))
}

pub(crate) fn bundled_readings() -> &'static HanReadings {
    bundled_readings_arc()
}

pub(crate) fn bundled_uroman() -> &'static Uroman {
    static UROMAN: OnceLock<Uroman> = OnceLock::new();
    UROMAN.get_or_init(|| {
        Uroman::with_bundled_tables(Arc::clone(bundled_database_arc())).expect("bundled uroman tables parse")
    })
}

pub(crate) fn bundled_schemes() -> &'static SchemeRegistry {
    static SCHEMES: OnceLock<SchemeRegistry> = OnceLock::new();
    SCHEMES.get_or_init(|| SchemeRegistry::bundled_uncached().expect("bundled scheme files compile"))
}
