//! Occurrence orders and cut-pair profiles of a word.
//!
//! A cut pair `(x, y, B)` comes from positions `i < j` with `w[i] = x`,
//! `w[j] = y`, neither letter occurring strictly between them, and `B` the set
//! of distinct letters strictly between. For `Y ⊆ al(w) ∖ {x, y}` the number of
//! occurrences of the factor `xy` in `w_Y` is the number of cut pairs
//! `(x, y, B)` with `B ⊆ Y`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use smallvec::SmallVec;

use crate::word::Letter;

/// Bitset over positions in an [`Alphabet`].
pub(crate) type Bits = SmallVec<[u64; 1]>;

pub(crate) fn bits_empty(k: usize) -> Bits {
    SmallVec::from_elem(0, k.div_ceil(64).max(1))
}

pub(crate) fn bits_set(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1 << (i % 64);
}

pub(crate) fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0)
}

pub(crate) fn bits_members(b: &Bits) -> Vec<u32> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            out.push(w as u32 * 64 + rest.trailing_zeros());
            rest &= rest - 1;
        }
    }
    out
}

/// Dense indices for a set of letters; index order is name order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Alphabet {
    pub letters: Vec<Letter>,
    index: HashMap<Letter, u32>,
}

impl Alphabet {
    pub fn new(letters: &BTreeSet<Letter>) -> Alphabet {
        let letters: Vec<Letter> = letters.iter().copied().collect();
        let index = letters.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        Alphabet { letters, index }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Panics on a letter outside the alphabet.
    pub fn encode(&self, w: &[Letter]) -> Vec<u32> {
        w.iter().map(|l| self.index[l]).collect()
    }

    pub fn decode_set(&self, b: &Bits) -> BTreeSet<Letter> {
        bits_members(b).into_iter().map(|i| self.letters[i as usize]).collect()
    }
}

/// `(x, y, B)` with multiplicity, over a shared alphabet; sorted and distinct.
pub(crate) type RawProfile = Vec<(u32, u32, Bits, u64)>;

fn count_sorted(mut entries: Vec<(u32, u32, Bits)>) -> RawProfile {
    entries.sort_unstable();
    let mut out: RawProfile = Vec::new();
    for (x, y, b) in entries {
        match out.last_mut() {
            Some(last) if last.0 == x && last.1 == y && last.2 == b => last.3 += 1,
            _ => out.push((x, y, b, 1)),
        }
    }
    out
}

/// Right-to-left scan keeping the letters seen so far ordered by next
/// occurrence. At position `i` the partners of `w[i]` are exactly the list
/// prefix up to and including `w[i]` itself; the letters passed over form `B`.
pub(crate) fn raw_profile(w: &[u32], k: usize) -> RawProfile {
    let mut entries = Vec::with_capacity(w.len() * k.min(w.len()));
    let mut order: Vec<u32> = Vec::with_capacity(k);
    for &x in w.iter().rev() {
        let mut between = bits_empty(k);
        let mut found = None;
        for (t, &y) in order.iter().enumerate() {
            entries.push((x, y, between.clone()));
            if y == x {
                found = Some(t);
                break;
            }
            bits_set(&mut between, y);
        }
        match found {
            Some(t) => order[..=t].rotate_right(1),
            None => order.insert(0, x),
        }
    }
    count_sorted(entries)
}

/// Direct enumeration of position pairs; quadratic.
pub(crate) fn raw_profile_reference(w: &[u32], k: usize) -> RawProfile {
    let mut entries = Vec::new();
    for i in 0..w.len() {
        let mut between = bits_empty(k);
        let mut seen = vec![false; k];
        for j in i + 1..w.len() {
            let y = w[j];
            if !seen[y as usize] {
                entries.push((w[i], y, between.clone()));
            }
            if y == w[i] {
                break;
            }
            seen[y as usize] = true;
            bits_set(&mut between, y);
        }
    }
    count_sorted(entries)
}

pub(crate) fn raw_orders(w: &[u32], k: usize) -> (Vec<u32>, Vec<u32>) {
    let mut seen = vec![false; k];
    let mut first = Vec::new();
    for &x in w {
        if !std::mem::replace(&mut seen[x as usize], true) {
            first.push(x);
        }
    }
    seen.iter_mut().for_each(|s| *s = false);
    let mut last = Vec::new();
    for &x in w.iter().rev() {
        if !std::mem::replace(&mut seen[x as usize], true) {
            last.push(x);
        }
    }
    last.reverse();
    (first, last)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceOrders {
    /// Distinct letters by first occurrence.
    pub first_order: Vec<Letter>,
    /// Distinct letters by last occurrence.
    pub last_order: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CutPair {
    pub x: Letter,
    pub y: Letter,
    pub between: BTreeSet<Letter>,
}

/// The multiset of cut pairs of a word.
#[derive(Clone, Debug)]
pub struct CutPairProfile {
    alphabet: Alphabet,
    raw: RawProfile,
}

impl CutPairProfile {
    /// Distinct cut pairs with multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (CutPair, u64)> + '_ {
        self.raw.iter().map(|(x, y, b, m)| {
            let pair = CutPair {
                x: self.alphabet.letters[*x as usize],
                y: self.alphabet.letters[*y as usize],
                between: self.alphabet.decode_set(b),
            };
            (pair, *m)
        })
    }

    pub fn to_map(&self) -> BTreeMap<CutPair, u64> {
        self.iter().collect()
    }

    pub fn multiplicity(&self, pair: &CutPair) -> u64 {
        self.iter().find(|(p, _)| p == pair).map_or(0, |(_, m)| m)
    }

    /// Size of the multiset.
    pub fn total(&self) -> u64 {
        self.raw.iter().map(|e| e.3).sum()
    }

    pub fn distinct(&self) -> usize {
        self.raw.len()
    }
}

impl PartialEq for CutPairProfile {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet == other.alphabet {
            self.raw == other.raw
        } else {
            self.to_map() == other.to_map()
        }
    }
}

impl Eq for CutPairProfile {}

fn alphabet_of(w: &[Letter]) -> Alphabet {
    Alphabet::new(&w.iter().copied().collect())
}

pub fn profile(w: &[Letter]) -> (OccurrenceOrders, CutPairProfile) {
    let alphabet = alphabet_of(w);
    let local = alphabet.encode(w);
    let (first, last) = raw_orders(&local, alphabet.len());
    let orders = OccurrenceOrders {
        first_order: first.iter().map(|&i| alphabet.letters[i as usize]).collect(),
        last_order: last.iter().map(|&i| alphabet.letters[i as usize]).collect(),
    };
    let raw = raw_profile(&local, alphabet.len());
    (orders, CutPairProfile { alphabet, raw })
}

pub fn profile_reference(w: &[Letter]) -> CutPairProfile {
    let alphabet = alphabet_of(w);
    let raw = raw_profile_reference(&alphabet.encode(w), alphabet.len());
    CutPairProfile { alphabet, raw }
}
