//! Randomized counterexample search in `K_n`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Witness;
use crate::jones::{hook_word_label, jmultiply, JonesElement, JonesError, JonesMonoid, MAX_TABLE_RANK};
use crate::word::{Identity, Letter};

/// A `K_n` element in coordinates: a Jones part and a circle count.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate<E> {
    jones: E,
    circles: u64,
    label: String,
}

fn k_label(jones: &str, circles: u64) -> String {
    match (circles, jones) {
        (0, j) => j.to_string(),
        (1, "id") => "c".to_string(),
        (s, "id") => format!("c^{s}"),
        (1, j) => format!("c{j}"),
        (s, j) => format!("c^{s}{j}"),
    }
}

enum Backend {
    Table(JonesMonoid),
    Direct(usize),
}

/// Reusable search state for one rank.
pub struct Falsifier {
    backend: Backend,
}

/// Hook words tried first: `h_1⋯h_{n-2}` and `h_{n-1}` (for `n ≥ 5`), the
/// identity and `c`, single hooks, then ascending and descending runs.
fn pool_words(n: usize) -> Vec<(Vec<usize>, u64)> {
    let mut words: Vec<(Vec<usize>, u64)> = Vec::new();
    if n >= 5 {
        words.push(((1..=n - 2).collect(), 0));
        words.push((vec![n - 1], 0));
    }
    words.push((vec![], 0));
    words.push((vec![], 1));
    for i in 1..n {
        words.push((vec![i], 0));
    }
    for len in 2..n {
        for start in 1..=n - len {
            words.push(((start..start + len).collect(), 0));
            words.push(((start..start + len).rev().collect(), 0));
        }
    }
    let mut seen = Vec::new();
    words.retain(|w| {
        let fresh = !seen.contains(w);
        seen.push(w.clone());
        fresh
    });
    words
}

impl Falsifier {
    pub fn new(n: usize) -> Result<Falsifier, JonesError> {
        if n < 2 {
            return Err(JonesError::Diagram(crate::diagram::DiagramError::BadRank(n)));
        }
        let backend = if n <= MAX_TABLE_RANK { Backend::Table(JonesMonoid::new(n)?) } else { Backend::Direct(n) };
        Ok(Falsifier { backend })
    }

    pub fn rank(&self) -> usize {
        match &self.backend {
            Backend::Table(m) => m.rank(),
            Backend::Direct(n) => *n,
        }
    }

    /// First substitution found under which the two sides of `id` differ in
    /// `K_n`, trying at most `budget` substitutions. `None` means nothing was
    /// found, not that `id` holds.
    pub fn run(&self, id: &Identity, budget: u64, seed: u64) -> Option<Witness> {
        if let Some(w) = unbalanced_witness(id) {
            return Some(w);
        }
        if id.lhs == id.rhs {
            return None;
        }
        let n = self.rank();
        match &self.backend {
            Backend::Table(m) => {
                let pool: Vec<Candidate<usize>> = pool_words(n)
                    .into_iter()
                    .map(|(w, circles)| {
                        let e = JonesElement::from_hooks(n, &w).expect("valid hooks");
                        let idx = m.index_of(&e).expect("planar element");
                        Candidate { jones: idx, circles, label: k_label(&hook_word_label(&w), circles) }
                    })
                    .collect();
                let random = |rng: &mut ChaCha8Rng| {
                    let idx = rng.gen_range(0..m.len());
                    let circles = random_circles(rng);
                    Candidate { jones: idx, circles, label: k_label(&m.label(idx), circles) }
                };
                search(id, &pool, random, |a, b| m.mul(*a, *b), |a| m.label(*a), m.identity(), budget, seed)
            }
            Backend::Direct(_) => {
                let pool: Vec<Candidate<JonesElement>> = pool_words(n)
                    .into_iter()
                    .map(|(w, circles)| Candidate {
                        jones: JonesElement::from_hooks(n, &w).expect("valid hooks"),
                        circles,
                        label: k_label(&hook_word_label(&w), circles),
                    })
                    .collect();
                let random = |rng: &mut ChaCha8Rng| {
                    let len = rng.gen_range(0..=2 * n);
                    let w: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
                    let circles = random_circles(rng);
                    Candidate {
                        jones: JonesElement::from_hooks(n, &w).expect("valid hooks"),
                        circles,
                        label: k_label(&hook_word_label(&w), circles),
                    }
                };
                let mul = |a: &JonesElement, b: &JonesElement| {
                    let p = jmultiply(a, b).expect("same rank");
                    (p.result, p.removed)
                };
                let identity = JonesElement::identity(n).expect("rank checked");
                search(id, &pool, random, mul, |a| a.to_string(), identity, budget, seed)
            }
        }
    }
}

/// Zero half the time, otherwise one to three circles.
fn random_circles(rng: &mut ChaCha8Rng) -> u64 {
    if rng.gen_bool(0.5) {
        0
    } else {
        rng.gen_range(1..=3)
    }
}

/// A letter occurring a different number of times on the two sides separates
/// them under `letter ↦ c`, everything else `↦ 1`.
fn unbalanced_witness(id: &Identity) -> Option<Witness> {
    let count = |w: &[Letter], l: Letter| w.iter().filter(|&&x| x == l).count() as u64;
    let letters = id.letters();
    let z = letters
        .iter()
        .copied()
        .find(|&l| count(id.lhs.letters(), l) != count(id.rhs.letters(), l))?;
    let assignment = letters.iter().map(|&l| (l, if l == z { "c".into() } else { "id".into() })).collect();
    Some(Witness::Substitution {
        assignment,
        lhs_value: k_label("id", count(id.lhs.letters(), z)),
        rhs_value: k_label("id", count(id.rhs.letters(), z)),
    })
}

#[allow(clippy::too_many_arguments)]
fn search<E: Clone + PartialEq>(
    id: &Identity,
    pool: &[Candidate<E>],
    mut random: impl FnMut(&mut ChaCha8Rng) -> Candidate<E>,
    mul: impl Fn(&E, &E) -> (E, u64),
    describe: impl Fn(&E) -> String,
    identity: E,
    budget: u64,
    seed: u64,
) -> Option<Witness> {
    let letters: Vec<Letter> = id.letters().into_iter().collect();
    let pos: BTreeMap<Letter, usize> = letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let lw: Vec<usize> = id.lhs.letters().iter().map(|l| pos[l]).collect();
    let rw: Vec<usize> = id.rhs.letters().iter().map(|l| pos[l]).collect();
    let eval = |w: &[usize], value: &[&Candidate<E>]| {
        let (mut acc, mut circles) = (identity.clone(), 0u64);
        for &l in w {
            let (p, removed) = mul(&acc, &value[l].jones);
            acc = p;
            circles += value[l].circles + removed;
        }
        (acc, circles)
    };
    let attempt = |value: &[&Candidate<E>]| {
        let (lv, rv) = (eval(&lw, value), eval(&rw, value));
        (lv != rv).then(|| Witness::Substitution {
            assignment: letters.iter().zip(value).map(|(&l, c)| (l, c.label.clone())).collect(),
            lhs_value: k_label(&describe(&lv.0), lv.1),
            rhs_value: k_label(&describe(&rv.0), rv.1),
        })
    };

    let k = letters.len() as u32;
    let exhaustive = (pool.len() as u128).checked_pow(k).unwrap_or(u128::MAX);
    let pool_budget = if exhaustive <= budget as u128 { exhaustive as u64 } else { budget / 2 };
    let mut digits = vec![0usize; letters.len()];
    for _ in 0..pool_budget {
        let value: Vec<&Candidate<E>> = digits.iter().map(|&d| &pool[d]).collect();
        if let Some(w) = attempt(&value) {
            return Some(w);
        }
        if let Some(i) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < pool.len()) {
            digits[i] += 1;
            digits[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in pool_budget..budget {
        let owned: Vec<Candidate<E>> = (0..letters.len()).map(|_| random(&mut rng)).collect();
        let value: Vec<&Candidate<E>> = owned.iter().collect();
        if let Some(w) = attempt(&value) {
            return Some(w);
        }
    }
    None
}

/// [`Falsifier::run`] with seed 0.
pub fn falsify_kn(id: &Identity, n: usize, budget: u64) -> Result<Option<Witness>, JonesError> {
    falsify_kn_seeded(id, n, budget, 0)
}

pub fn falsify_kn_seeded(id: &Identity, n: usize, budget: u64, seed: u64) -> Result<Option<Witness>, JonesError> {
    Ok(Falsifier::new(n)?.run(id, budget, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(l: &str, r: &str) -> Identity {
        Identity::from_chars(l, r).unwrap()
    }

    fn assignment(w: &Witness) -> Vec<(String, String)> {
        match w {
            Witness::Substitution { assignment, .. } => {
                assignment.iter().map(|(l, v)| (l.to_string(), v.clone())).collect()
            }
            _ => panic!("substitution expected"),
        }
    }

    #[test]
    fn finds_the_k5_substitution_first() {
        let w = falsify_kn(&id("xxyx", "xyxx"), 5, 10_000).unwrap().unwrap();
        assert_eq!(
            assignment(&w),
            vec![("x".into(), "h1h2h3".into()), ("y".into(), "h4".into())]
        );
        assert_eq!(w.to_string(), "x->h1h2h3 y->h4");
    }

    #[test]
    fn nothing_in_k4() {
        assert_eq!(falsify_kn(&id("xxyx", "xyxx"), 4, 10_000).unwrap(), None);
        assert_eq!(falsify_kn(&id("x", "x"), 5, 100).unwrap(), None);
    }

    #[test]
    fn unbalanced_uses_c() {
        let w = falsify_kn(&id("xy", "x"), 6, 10).unwrap().unwrap();
        assert_eq!(assignment(&w), vec![("x".into(), "id".into()), ("y".into(), "c".into())]);
        let w = falsify_kn(&id("xx", "x"), 3, 10).unwrap().unwrap();
        assert_eq!(assignment(&w), vec![("x".into(), "c".into())]);
    }

    #[test]
    fn direct_backend_agrees() {
        let w = falsify_kn(&id("xxyx", "xyxx"), 9, 10_000).unwrap().unwrap();
        assert_eq!(
            assignment(&w),
            vec![("x".into(), "h1h2h3h4h5h6h7".into()), ("y".into(), "h8".into())]
        );
        assert!(falsify_kn(&id("xy", "yx"), 8, 1000).unwrap().is_some());
    }

    #[test]
    fn labels() {
        assert_eq!(k_label("id", 0), "id");
        assert_eq!(k_label("id", 2), "c^2");
        assert_eq!(k_label("h1h2", 1), "ch1h2");
        assert_eq!(k_label("h3", 3), "c^3h3");
    }

    #[test]
    fn rejects_rank_one() {
        assert!(Falsifier::new(1).is_err());
    }
}
