//! Letters, words and identities over a countable alphabet.
//!
//! Letters are interned process-wide, so a [`Letter`] is a `Copy` token that
//! hashes and compares for equality by id. Ordering is by name, which keeps
//! every report independent of interning order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("a word must contain at least one letter")]
    Empty,
    #[error("factor length {0} is not supported (only 1 or 2)")]
    FactorLength(usize),
    #[error("invalid letter name {0:?}")]
    BadLetter(String),
}

#[derive(Default)]
struct Interner {
    ids: HashMap<&'static str, u32>,
    names: Vec<&'static str>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// An interned alphabet symbol such as `x` or `y2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(name: &str) -> Letter {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Letter(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Letter(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Letter(id)
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A nonempty sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

/// A possibly empty sequence of letters, produced by deleting letters from a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MaybeEmptyWord(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word(letters))
    }

    /// Builds a word with one single-character letter per character, e.g. `"xyx"`.
    ///
    /// Intended for literals in tests and examples; the full grammar lives in
    /// [`crate::syntax`].
    pub fn from_chars(s: &str) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            if !ch.is_ascii_lowercase() {
                return Err(WordError::BadLetter(ch.to_string()));
            }
            letters.push(Letter::new(ch.encode_utf8(&mut [0; 4])));
        }
        Word::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        content(self)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// Writes letters with runs of length two or more collapsed to `x^k`.
fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if j - i == 1 {
            write!(f, "{}", letters[i])?;
        } else {
            write!(f, "{}^{}", letters[i], j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl MaybeEmptyWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_word(self) -> Option<Word> {
        Word::new(self.0).ok()
    }
}

impl From<Word> for MaybeEmptyWord {
    fn from(w: Word) -> Self {
        MaybeEmptyWord(w.0)
    }
}

impl fmt::Display for MaybeEmptyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            write_letters(f, &self.0)
        }
    }
}

/// A formal equation `lhs = rhs` between two words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity { lhs, rhs }
    }

    /// Single-character-letter convenience constructor, e.g. `("xxyx", "xyxx")`.
    pub fn from_chars(lhs: &str, rhs: &str) -> Result<Identity, WordError> {
        Ok(Identity::new(Word::from_chars(lhs)?, Word::from_chars(rhs)?))
    }

    /// Letters appearing on either side, sorted by name.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut all = content(&self.lhs);
        all.extend(self.rhs.letters().iter().copied());
        all
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

pub fn content(w: &Word) -> BTreeSet<Letter> {
    w.0.iter().copied().collect()
}

/// Number of (possibly overlapping) occurrences of `v` as a factor of `w`; `|v|` must be 1 or 2.
pub fn occ_factor(v: &[Letter], w: &[Letter]) -> Result<usize, WordError> {
    match *v {
        [a] => Ok(w.iter().filter(|&&l| l == a).count()),
        [a, b] => Ok(w.windows(2).filter(|p| p[0] == a && p[1] == b).count()),
        _ => Err(WordError::FactorLength(v.len())),
    }
}

pub fn delete_letters(w: &[Letter], deleted: &BTreeSet<Letter>) -> MaybeEmptyWord {
    MaybeEmptyWord(w.iter().copied().filter(|l| !deleted.contains(l)).collect())
}

pub fn is_balanced(id: &Identity) -> bool {
    let mut counts: HashMap<Letter, i64> = HashMap::new();
    for &l in id.lhs.letters() {
        *counts.entry(l).or_default() += 1;
    }
    for &l in id.rhs.letters() {
        *counts.entry(l).or_default() -= 1;
    }
    counts.values().all(|&c| c == 0)
}

pub fn first_last(w: &[Letter]) -> Result<(Letter, Letter), WordError> {
    match (w.first(), w.last()) {
        (Some(&a), Some(&b)) => Ok((a, b)),
        _ => Err(WordError::Empty),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::from_chars(s).unwrap()
    }

    fn set(s: &str) -> BTreeSet<Letter> {
        s.chars().map(|c| Letter::new(&c.to_string())).collect()
    }

    #[test]
    fn content_examples() {
        assert_eq!(content(&w("xyx")), set("xy"));
        assert_eq!(content(&w("x")), set("x"));
        assert_eq!(content(&w("abca")), set("abc"));
    }

    #[test]
    fn occ_factor_examples() {
        assert_eq!(occ_factor(w("xy").letters(), w("xyxy").letters()), Ok(2));
        assert_eq!(occ_factor(w("xx").letters(), w("xxx").letters()), Ok(2));
        assert_eq!(occ_factor(w("x").letters(), w("xyx").letters()), Ok(2));
        assert_eq!(
            occ_factor(w("xyz").letters(), w("xyz").letters()),
            Err(WordError::FactorLength(3))
        );
    }

    #[test]
    fn delete_examples() {
        assert_eq!(delete_letters(w("xyxz").letters(), &set("y")).to_string(), "x^2z");
        assert_eq!(delete_letters(w("xyx").letters(), &set("")), w("xyx").into());
        assert!(delete_letters(w("xyx").letters(), &set("xy")).is_empty());
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&Identity::from_chars("xy", "yx").unwrap()));
        assert!(!is_balanced(&Identity::from_chars("xxy", "xy").unwrap()));
        assert!(is_balanced(&Identity::from_chars("xxyx", "xyxx").unwrap()));
    }

    #[test]
    fn first_last_examples() {
        let (x, z) = (Letter::new("x"), Letter::new("z"));
        assert_eq!(first_last(w("xyz").letters()), Ok((x, z)));
        assert_eq!(first_last(w("x").letters()), Ok((x, x)));
        assert_eq!(first_last(w("xyxx").letters()), Ok((x, x)));
        assert_eq!(first_last(&[]), Err(WordError::Empty));
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(Word::new(vec![]), Err(WordError::Empty));
    }

    #[test]
    fn letters_order_by_name() {
        let b = Letter::new("ord_b");
        let a = Letter::new("ord_a");
        assert!(a < b);
        assert_eq!(a.name(), "ord_a");
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..4, 1..30).prop_map(|v| {
            Word::new(v.into_iter().map(|i| Letter::new(["a", "b", "c", "d"][i as usize])).collect())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn deletion_composes(word in word_strategy(), ys in proptest::collection::btree_set(0u8..4, 0..4), zs in proptest::collection::btree_set(0u8..4, 0..4)) {
            let names = ["a", "b", "c", "d"];
            let ys: BTreeSet<Letter> = ys.into_iter().map(|i| Letter::new(names[i as usize])).collect();
            let zs: BTreeSet<Letter> = zs.into_iter().map(|i| Letter::new(names[i as usize])).collect();
            prop_assert_eq!(delete_letters(word.letters(), &BTreeSet::new()), MaybeEmptyWord::from(word.clone()));
            let once = delete_letters(delete_letters(word.letters(), &ys).letters(), &zs);
            let union: BTreeSet<Letter> = ys.union(&zs).copied().collect();
            prop_assert_eq!(once, delete_letters(word.letters(), &union));
        }

        #[test]
        fn letter_counts_sum_to_length(word in word_strategy()) {
            let total: usize = content(&word).iter().map(|&l| occ_factor(&[l], word.letters()).unwrap()).sum();
            prop_assert_eq!(total, word.len());
        }

        #[test]
        fn letter_count_from_factor_counts(word in word_strategy()) {
            let letters = content(&word);
            let last = *word.letters().last().unwrap();
            for &x in &letters {
                let pairs: usize = letters.iter().map(|&y| occ_factor(&[x, y], word.letters()).unwrap()).sum();
                let expected = pairs + usize::from(last == x);
                prop_assert_eq!(occ_factor(&[x], word.letters()).unwrap(), expected);
            }
        }
    }
}
