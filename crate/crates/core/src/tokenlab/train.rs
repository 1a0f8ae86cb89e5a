use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use super::vocab::{seed, TrainConfig, Vocabulary};
use super::{TokenlabError, WORD_BOUNDARY};
use crate::ucd::{normalize, NormalizationForm};

type Pair = (u32, u32);
/// `(unit index, offset of the left symbol)`; lexicographic order is corpus
/// scan order.
type Occurrence = (u32, u32);

struct Unit {
    syms: Vec<u32>,
    /// Start offset of each symbol in base symbols; stable under merging.
    offsets: Vec<u32>,
    freq: i64,
}

impl Unit {
    fn pair_counts(&self, allowed: &impl Fn(Pair) -> bool) -> HashMap<Pair, i64> {
        let mut counts = HashMap::new();
        for w in self.syms.windows(2) {
            let p = (w[0], w[1]);
            if allowed(p) {
                *counts.entry(p).or_insert(0) += 1;
            }
        }
        counts
    }

    fn first(&self, p: Pair) -> Option<u32> {
        self.syms
            .windows(2)
            .position(|w| (w[0], w[1]) == p)
            .map(|i| self.offsets[i])
    }

    fn apply(&mut self, p: Pair, result: u32) {
        let mut syms = Vec::with_capacity(self.syms.len());
        let mut offsets = Vec::with_capacity(self.syms.len());
        let mut i = 0;
        while i < self.syms.len() {
            if i + 1 < self.syms.len() && (self.syms[i], self.syms[i + 1]) == p {
                syms.push(result);
                offsets.push(self.offsets[i]);
                i += 2;
            } else {
                syms.push(self.syms[i]);
                offsets.push(self.offsets[i]);
                i += 1;
            }
        }
        self.syms = syms;
        self.offsets = offsets;
    }
}

#[derive(Clone, Copy, Default)]
struct Shape {
    digit: bool,
    other: bool,
}

/// Byte-pair encoding trainer.
///
/// Repeatedly merges the most frequent adjacent pair; ties go to the pair
/// seen first in corpus order. Stops when the vocabulary holds exactly
/// `config.vocab_size` tokens.
pub fn train_bpe<I, S>(corpus: I, config: &TrainConfig) -> Result<Vocabulary, TokenlabError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    if !(0.0..=1.0).contains(&config.character_coverage) || config.character_coverage <= 0.0 {
        return Err(TokenlabError::InvalidConfig(format!(
            "character coverage {} is outside (0, 1]",
            config.character_coverage
        )));
    }
    let docs: Vec<String> = corpus
        .into_iter()
        .map(|d| normalize(d.as_ref(), NormalizationForm::Nfkc))
        .filter(|d| !d.is_empty())
        .collect();
    if docs.is_empty() {
        return Err(TokenlabError::EmptyCorpus);
    }

    let mut tokens = Vocabulary::special_tokens(config.byte_fallback);
    let specials = tokens.len() as u32;
    for c in select_base_chars(&docs, config) {
        tokens.push(c.to_string());
    }
    let minimum = tokens.len();
    if config.vocab_size < minimum {
        return Err(TokenlabError::VocabTooSmall {
            requested: config.vocab_size,
            minimum,
        });
    }
    let mut index: HashMap<String, u32> = tokens.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
    let base_id = |c: char| index.get(c.encode_utf8(&mut [0; 4]) as &str).copied();
    let marker = base_id(WORD_BOUNDARY).unwrap_or(specials);
    let byte = |b: u8| if config.byte_fallback { b as u32 } else { 0 };

    let mut units: Vec<Unit> = Vec::new();
    let mut unit_index: HashMap<Vec<u32>, usize> = HashMap::new();
    for doc in &docs {
        for syms in seed(doc, config, marker, base_id, byte) {
            match unit_index.get(&syms) {
                Some(&u) => units[u].freq += 1,
                None => {
                    unit_index.insert(syms.clone(), units.len());
                    let offsets = (0..syms.len() as u32).collect();
                    units.push(Unit { syms, offsets, freq: 1 });
                }
            }
        }
    }
    drop(unit_index);

    let mut shapes: Vec<Shape> = tokens.iter().map(|t| shape_of(t)).collect();
    let mut forbidden: HashSet<Pair> = HashSet::new();
    let allowed_base = |p: Pair, shapes: &[Shape], forbidden: &HashSet<Pair>| {
        if p.0 < specials || p.1 < specials || forbidden.contains(&p) {
            return false;
        }
        if config.split_by_number {
            let (a, b) = (shapes[p.0 as usize], shapes[p.1 as usize]);
            if (a.digit && b.other) || (a.other && b.digit) {
                return false;
            }
        }
        true
    };

    let mut pair_count: HashMap<Pair, i64> = HashMap::new();
    let mut pair_units: HashMap<Pair, BTreeSet<u32>> = HashMap::new();
    {
        let allowed = |p: Pair| allowed_base(p, &shapes, &forbidden);
        for (u, unit) in units.iter().enumerate() {
            for (p, n) in unit.pair_counts(&allowed) {
                *pair_count.entry(p).or_insert(0) += n * unit.freq;
                pair_units.entry(p).or_default().insert(u as u32);
            }
        }
    }
    let first_occurrence = |p: Pair, pair_units: &HashMap<Pair, BTreeSet<u32>>, units: &[Unit]| -> Option<Occurrence> {
        let &u = pair_units.get(&p)?.first()?;
        units[u as usize].first(p).map(|off| (u, off))
    };
    let mut heap: BinaryHeap<(i64, Reverse<Occurrence>, Pair)> = BinaryHeap::new();
    for (&p, &n) in &pair_count {
        if let Some(occ) = first_occurrence(p, &pair_units, &units) {
            heap.push((n, Reverse(occ), p));
        }
    }

    let mut merges: Vec<(String, String)> = Vec::new();
    while tokens.len() < config.vocab_size {
        let best = loop {
            let Some((n, Reverse(occ), p)) = heap.pop() else {
                break None;
            };
            let current = pair_count.get(&p).copied().unwrap_or(0);
            if current <= 0 || forbidden.contains(&p) {
                continue;
            }
            let Some(real) = first_occurrence(p, &pair_units, &units) else {
                continue;
            };
            if current != n || real != occ {
                heap.push((current, Reverse(real), p));
                continue;
            }
            break Some(p);
        };
        let Some(p) = best else {
            return Err(TokenlabError::VocabUnreachable {
                requested: config.vocab_size,
                achievable: tokens.len(),
            });
        };
        forbidden.insert(p);
        let joined = format!("{}{}", tokens[p.0 as usize], tokens[p.1 as usize]);
        if joined.len() > 1 && index.get(&joined).is_some_and(|&id| id < specials) {
            // would shadow a reserved token
            pair_count.remove(&p);
            continue;
        }
        let result = match index.get(&joined) {
            Some(&id) => id,
            None => {
                let id = tokens.len() as u32;
                index.insert(joined.clone(), id);
                shapes.push(shape_of(&joined));
                tokens.push(joined);
                id
            }
        };
        merges.push((tokens[p.0 as usize].clone(), tokens[p.1 as usize].clone()));

        let affected: Vec<u32> = pair_units
            .remove(&p)
            .map(|s| s.into_iter().collect())
            .unwrap_or_default();
        pair_count.remove(&p);
        let mut grown: HashSet<Pair> = HashSet::new();
        let allowed = |q: Pair| allowed_base(q, &shapes, &forbidden);
        for u in affected {
            let unit = &mut units[u as usize];
            let before = unit.pair_counts(&allowed);
            unit.apply(p, result);
            let after = unit.pair_counts(&allowed);
            let keys: HashSet<Pair> = before.keys().chain(after.keys()).copied().collect();
            for q in keys {
                let old = before.get(&q).copied().unwrap_or(0);
                let new = after.get(&q).copied().unwrap_or(0);
                if new != old {
                    *pair_count.entry(q).or_insert(0) += (new - old) * unit.freq;
                }
                if new == 0 {
                    if let Some(set) = pair_units.get_mut(&q) {
                        set.remove(&u);
                    }
                } else {
                    pair_units.entry(q).or_default().insert(u);
                }
                if new > old {
                    grown.insert(q);
                }
            }
        }
        for q in grown {
            let n = pair_count.get(&q).copied().unwrap_or(0);
            if n > 0 {
                if let Some(occ) = first_occurrence(q, &pair_units, &units) {
                    heap.push((n, Reverse(occ), q));
                }
            }
        }
    }
    Vocabulary::from_parts(config.clone(), tokens, merges)
}

fn shape_of(token: &str) -> Shape {
    let mut s = Shape::default();
    for c in token.chars() {
        if c == WORD_BOUNDARY {
            continue;
        }
        if c.is_numeric() {
            s.digit = true;
        } else {
            s.other = true;
        }
    }
    s
}

/// Characters by descending frequency (first occurrence breaks ties) until
/// the configured share of all characters is covered. The marker is always
/// kept.
fn select_base_chars(docs: &[String], config: &TrainConfig) -> Vec<char> {
    let mut freq: HashMap<char, (u64, usize)> = HashMap::new();
    let mut order = 0usize;
    let mut bump = |c: char, freq: &mut HashMap<char, (u64, usize)>| {
        let e = freq.entry(c).or_insert_with(|| {
            order += 1;
            (0, order)
        });
        e.0 += 1;
    };
    for doc in docs {
        if config.add_dummy_prefix {
            bump(WORD_BOUNDARY, &mut freq);
        }
        for c in doc.chars() {
            match c {
                ' ' => bump(WORD_BOUNDARY, &mut freq),
                WORD_BOUNDARY => {}
                c => bump(c, &mut freq),
            }
        }
    }
    let total: u64 = freq.values().map(|e| e.0).sum();
    let mut ranked: Vec<(char, u64, usize)> = freq.into_iter().map(|(c, (n, o))| (c, n, o)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
    let mut chosen = Vec::new();
    let mut covered = 0u64;
    for (c, n, _) in ranked {
        if total > 0 && covered as f64 / total as f64 >= config.character_coverage {
            break;
        }
        covered += n;
        chosen.push(c);
    }
    if !chosen.contains(&WORD_BOUNDARY) {
        chosen.push(WORD_BOUNDARY);
    }
    chosen
}
