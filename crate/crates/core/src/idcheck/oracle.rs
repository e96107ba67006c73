//! Exponential reference checkers.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::{content_witness, violated_at, Verdict, Witness};
use crate::word::{Identity, Letter, Word};

pub const DEFAULT_ALPHABET_BOUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("alphabet of {size} letters exceeds the bound {bound}")]
    AlphabetTooLarge { size: usize, bound: usize },
    #[error("{needed} substitutions exceed the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// Which third condition to test on each `w_Y ≐ w'_Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OracleMode {
    /// (c): equal counts of every length-2 factor.
    Counts,
    /// (c'): equal sets of length-2 factors.
    Sets,
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it returns true.
fn combinations(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn oracle_all_y(id: &Identity, mode: OracleMode) -> Result<Verdict, OracleError> {
    oracle_all_y_bounded(id, mode, DEFAULT_ALPHABET_BOUND)
}

/// Tests the conditions on `w_Y ≐ w'_Y` for every proper subset `Y` of the
/// content, smallest first, and reports the first failure.
pub fn oracle_all_y_bounded(id: &Identity, mode: OracleMode, bound: usize) -> Result<Verdict, OracleError> {
    let monoid = match mode {
        OracleMode::Counts => "K4",
        OracleMode::Sets => "J4",
    };
    let content = id.lhs.content();
    if content != id.rhs.content() {
        return Ok(Verdict::fails(monoid, content_witness(id)));
    }
    if content.len() > bound {
        return Err(OracleError::AlphabetTooLarge { size: content.len(), bound });
    }
    let letters: Vec<Letter> = content.into_iter().collect();
    let mut found = None;
    for size in 0..letters.len() {
        let hit = combinations(letters.len(), size, &mut |idx| {
            let y: BTreeSet<Letter> = idx.iter().map(|&i| letters[i]).collect();
            found = violated_at(id, &y, mode);
            found.is_some()
        });
        if hit {
            break;
        }
    }
    Ok(match found {
        Some(w) => Verdict::fails(monoid, w),
        None => Verdict::holds(monoid),
    })
}

/// `w` with each letter replaced by its position in `letters`.
fn encode(w: &Word, letters: &[Letter]) -> Vec<usize> {
    let pos: BTreeMap<Letter, usize> = letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    w.letters().iter().map(|l| pos[l]).collect()
}

fn evaluate<T: Clone>(w: &[usize], digits: &[usize], elements: &[T], mul: &impl Fn(&T, &T) -> T) -> T {
    let mut acc = elements[digits[w[0]]].clone();
    for &l in &w[1..] {
        acc = mul(&acc, &elements[digits[l]]);
    }
    acc
}

/// Tries every substitution of `elements` for the letters of `id`, in
/// lexicographic order of element indices over letters sorted by name.
pub fn oracle_finite_monoid<T: Clone + PartialEq>(
    id: &Identity,
    monoid: &str,
    elements: &[T],
    mul: impl Fn(&T, &T) -> T,
    label: impl Fn(&T) -> String,
    budget: u64,
) -> Result<Verdict, OracleError> {
    let letters: Vec<Letter> = id.letters().into_iter().collect();
    let needed = (elements.len() as u128).checked_pow(letters.len() as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    if elements.is_empty() {
        return Ok(Verdict::holds(monoid));
    }
    let (lw, rw) = (encode(&id.lhs, &letters), encode(&id.rhs, &letters));
    let mut digits = vec![0usize; letters.len()];
    loop {
        let lhs = evaluate(&lw, &digits, elements, &mul);
        let rhs = evaluate(&rw, &digits, elements, &mul);
        if lhs != rhs {
            let assignment = letters.iter().zip(&digits).map(|(&l, &d)| (l, label(&elements[d]))).collect();
            return Ok(Verdict::fails(
                monoid,
                Witness::Substitution { assignment, lhs_value: label(&lhs), rhs_value: label(&rhs) },
            ));
        }
        let Some(i) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < elements.len()) else {
            return Ok(Verdict::holds(monoid));
        };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::JonesMonoid;
    use crate::rees::check_identity_rms_abelian;

    fn id(l: &str, r: &str) -> Identity {
        Identity::from_chars(l, r).unwrap()
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        combinations(4, 2, &mut |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut empty = 0;
        combinations(3, 0, &mut |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn all_y_examples() {
        assert!(oracle_all_y(&id("xxyx", "xyxx"), OracleMode::Counts).unwrap().holds);
        let v = oracle_all_y(&id("xy", "yx"), OracleMode::Counts).unwrap();
        assert_eq!(v.failing().unwrap().1, super::super::Condition::A);
        let many: String = "abcdefghijklmnopq".into();
        let big = Identity::from_chars(&many, &many).unwrap();
        assert_eq!(
            oracle_all_y(&big, OracleMode::Counts),
            Err(OracleError::AlphabetTooLarge { size: 17, bound: 16 })
        );
    }

    #[test]
    fn empty_deletion_is_the_rms_condition() {
        let cases = [("xy", "yx"), ("xyx", "xxy"), ("xxyx", "xyxx"), ("xyzx", "xzyx"), ("xx", "xxx")];
        for (l, r) in cases {
            let i = id(l, r);
            let at_empty = violated_at(&i, &BTreeSet::new(), OracleMode::Counts).is_none();
            assert_eq!(at_empty, check_identity_rms_abelian(&i), "{i}");
        }
    }

    #[test]
    fn finite_monoid_examples() {
        for (n, holds) in [(3, true), (4, false)] {
            let m = JonesMonoid::new(n).unwrap();
            let elems: Vec<usize> = (0..m.len()).collect();
            let v = oracle_finite_monoid(&id("xx", "x"), "J", &elems, |a, b| m.mul(*a, *b).0, |a| m.label(*a), 1000)
                .unwrap();
            assert_eq!(v.holds, holds);
            if let Some(Witness::Substitution { assignment, .. }) = &v.witness {
                // Hooks are idempotent, so the witness is a longer diagram.
                let x = (0..m.len()).find(|&i| m.label(i) == assignment[0].1).unwrap();
                assert_ne!(m.mul(x, x).0, x);
                assert!(!assignment[0].1.starts_with('h') || assignment[0].1.len() > 2);
            }
        }
        let trivial = [()];
        let v = oracle_finite_monoid(&id("xy", "yxx"), "1", &trivial, |_, _| (), |_| "e".into(), 10).unwrap();
        assert!(v.holds);
        let m = JonesMonoid::new(4).unwrap();
        let elems: Vec<usize> = (0..m.len()).collect();
        assert!(matches!(
            oracle_finite_monoid(&id("xyzt", "xyzt"), "J4", &elems, |a, b| m.mul(*a, *b).0, |a| m.label(*a), 1000),
            Err(OracleError::BudgetExceeded { needed: 38416, .. })
        ));
    }
}
