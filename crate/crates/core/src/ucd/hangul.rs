//! Algorithmic names for precomposed Hangul syllables.

const S_BASE: u32 = 0xAC00;
const V_COUNT: u32 = 21;
const T_COUNT: u32 = 28;
const N_COUNT: u32 = V_COUNT * T_COUNT;
const S_COUNT: u32 = 19 * N_COUNT;

const LEADS: [&str; 19] = [
    "G", "GG", "N", "D", "DD", "R", "M", "B", "BB", "S", "SS", "", "J", "JJ", "C", "K", "T", "P", "H",
];
const VOWELS: [&str; 21] = [
    "A", "AE", "YA", "YAE", "EO", "E", "YEO", "YE", "O", "WA", "WAE", "OE", "YO", "U", "WEO", "WE", "WI", "YU", "EU",
    "YI", "I",
];
const TRAILS: [&str; 28] = [
    "", "G", "GG", "GS", "N", "NJ", "NH", "D", "L", "LG", "LM", "LB", "LS", "LT", "LP", "LH", "M", "B", "BS", "S",
    "SS", "NG", "J", "C", "K", "T", "P", "H",
];

pub(super) fn syllable_name(cp: u32) -> Option<String> {
    let index = cp.checked_sub(S_BASE).filter(|i| *i < S_COUNT)?;
    let lead = LEADS[(index / N_COUNT) as usize];
    let vowel = VOWELS[((index % N_COUNT) / T_COUNT) as usize];
    let trail = TRAILS[(index % T_COUNT) as usize];
    Some(format!("HANGUL SYLLABLE {lead}{vowel}{trail}"))
}
