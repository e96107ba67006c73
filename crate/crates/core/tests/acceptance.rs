//! Acceptance criteria, one `PASS`/`FAIL` line each. Run with
//! `cargo test -p kauffman --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kauffman::idcheck::{
    check_j4, check_k3_k4, oracle_all_y, oracle_finite_monoid, profile, Condition, Falsifier, OracleMode, Verdict,
    Witness,
};
use kauffman::jones::{enumerate_jones, JonesMonoid};
use kauffman::rees::{self, builtin, witness_rms, Builtin};
use kauffman::verify::{self, CIRCLE_RANGE};
use kauffman::word::{delete_letters, Identity, Letter, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 10] = ["x", "y", "z", "t", "u", "v", "w", "p", "q", "r"];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Runs one criterion with a time limit and prints its line.
fn criterion(number: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let passed = o.passed && in_time;
    let limit_text = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
    println!(
        "{} {number:>2} {name}: {} [{:.2?}{limit_text}]",
        if passed { "PASS" } else { "FAIL" },
        o.detail,
        elapsed
    );
    passed
}

fn word(rng: &mut ChaCha8Rng, k: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter::new(NAMES[rng.gen_range(0..k)])).collect()
}

/// Random pairs, rearrangements, local edits and trivial identities over at
/// most `max_k` letters with sides of length at most `max_len`.
fn random_identity(rng: &mut ChaCha8Rng, max_k: usize, max_len: usize) -> Identity {
    let k = rng.gen_range(1..=max_k);
    let len = rng.gen_range(1..=max_len);
    let lhs = word(rng, k, len);
    let rhs = match rng.gen_range(0..4) {
        0 => {
            let len = rng.gen_range(1..=max_len);
            word(rng, k, len)
        }
        1 => {
            let mut r = lhs.clone();
            r.shuffle(rng);
            r
        }
        2 => {
            let mut r = lhs.clone();
            let edits = rng.gen_range(1..=2);
            for _ in 0..edits {
                let i = rng.gen_range(0..r.len());
                match rng.gen_range(0..4) {
                    0 if r.len() > 1 => {
                        let j = (i + 1) % r.len();
                        r.swap(i, j);
                    }
                    1 if r.len() < max_len => r.insert(i, Letter::new(NAMES[rng.gen_range(0..k)])),
                    2 if r.len() > 1 => {
                        r.remove(i);
                    }
                    _ => r[i] = Letter::new(NAMES[rng.gen_range(0..k)]),
                }
            }
            r
        }
        _ => lhs.clone(),
    };
    Identity::new(Word::new(lhs).unwrap(), Word::new(rhs).unwrap())
}

/// Every word over `x, y` of length 1 to `max_len`.
fn all_words(max_len: usize) -> Vec<Word> {
    let letters = [Letter::new("x"), Letter::new("y")];
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..1u32 << len {
            out.push(Word::new((0..len).map(|i| letters[(bits >> i & 1) as usize]).collect()).unwrap());
        }
    }
    out
}

/// The same corpus for criteria 6, 8 and 9.
fn corpus() -> Vec<Identity> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ids: Vec<Identity> = (0..10_000).map(|_| random_identity(&mut rng, 4, 12)).collect();
    let words = all_words(6);
    for l in &words {
        for r in &words {
            ids.push(Identity::new(l.clone(), r.clone()));
        }
    }
    ids
}

fn elapsed_best_of(runs: usize, mut f: impl FnMut()) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

/// A random word over ten letters and a copy with one adjacent transposition.
fn long_identity(rng: &mut ChaCha8Rng, total: usize) -> Identity {
    let half = total / 2;
    let lhs = word(rng, 10, half);
    let mut rhs = lhs.clone();
    let i = rng.gen_range(0..half - 1);
    rhs.swap(i, i + 1);
    Identity::new(Word::new(lhs).unwrap(), Word::new(rhs).unwrap())
}

fn profile_and_check(id: &Identity) -> Verdict {
    std::hint::black_box(profile(id.lhs.letters()));
    std::hint::black_box(profile(id.rhs.letters()));
    check_k3_k4(id)
}

#[test]
fn acceptance() {
    let mut all = true;
    let sec = Duration::from_secs;

    all &= criterion(1, "jones-cardinality", Some(sec(10)), || {
        let counts: Vec<usize> = (2..=7).map(|n| enumerate_jones(n).unwrap().len()).collect();
        outcome(counts == [2, 5, 14, 42, 132, 429], format!("counts {counts:?} for n = 2..7"))
    });

    all &= criterion(2, "presentation-relations", Some(sec(1)), || {
        let r = verify::verify_relations(6);
        outcome(r.passed(), format!("{} relation checks for n = 2..6", r.lines.len()))
    });

    all &= criterion(3, "cutting-endomorphisms", Some(sec(1)), || {
        let j = verify::verify_cutting_j4();
        let k = verify::verify_cutting_k4(CIRCLE_RANGE);
        let detail: Vec<String> = j.lines.iter().chain(&k.lines).map(|l| format!("{} {}", l.name, l.detail)).collect();
        outcome(j.passed() && k.passed(), detail.join("; "))
    });

    all &= criterion(4, "subdirect-decompositions", Some(sec(1)), || {
        let j = rees::verify_structure_j4();
        let k = rees::verify_structure_ext_k4(CIRCLE_RANGE);
        outcome(j.passed() && k.passed(), format!("{} + {} structure checks", j.lines.len(), k.lines.len()))
    });

    all &= criterion(5, "k5-counterexample", None, || {
        let r = verify::verify_k5_counterexample();
        let differ = r.line("k5-sides-differ").map(|l| l.detail.clone()).unwrap_or_default();
        outcome(r.passed(), differ)
    });

    let ids = corpus();
    let mut verdicts: Vec<Verdict> = Vec::new();
    all &= criterion(6, "checker-oracle-equivalence", Some(sec(60)), || {
        let mut disagreements = 0;
        for id in &ids {
            let k = check_k3_k4(id);
            let j = check_j4(id);
            if k != oracle_all_y(id, OracleMode::Counts).unwrap() {
                disagreements += 1;
            }
            if j != oracle_all_y(id, OracleMode::Sets).unwrap() {
                disagreements += 1;
            }
            verdicts.push(k);
        }
        let accepted = verdicts.iter().filter(|v| v.holds).count();
        outcome(
            disagreements == 0,
            format!("{} identities, {accepted} accepted by K4, {disagreements} disagreements", ids.len()),
        )
    });

    all &= criterion(7, "j4-ground-truth", Some(sec(60)), || {
        let m = JonesMonoid::new(4).unwrap();
        let elems: Vec<usize> = (0..m.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut disagreements, mut holds) = (0, 0);
        let total = 1_000;
        for _ in 0..total {
            let id = random_identity(&mut rng, 3, 12);
            let brute =
                oracle_finite_monoid(&id, "J4", &elems, |a, b| m.mul(*a, *b).0, |a| m.label(*a), 1 << 20).unwrap();
            holds += brute.holds as usize;
            if brute.holds != check_j4(&id).holds {
                disagreements += 1;
            }
        }
        outcome(
            disagreements == 0 && m.len() == 14,
            format!("{total} identities over J4 ({holds} hold), {disagreements} disagreements"),
        )
    });

    all &= criterion(8, "rms-failure-witnesses", None, || {
        let s = builtin(Builtin::Separator);
        let (mut rejected, mut witnessed) = (0, 0);
        for (id, v) in ids.iter().zip(&verdicts) {
            let Some(Witness::Failing { y, condition, .. }) = &v.witness else { continue };
            rejected += 1;
            if *condition == Condition::Content {
                // z -> (1,e,1) and everything else -> 1 in S^1: one side is a
                // power of (1,e,1), the other is empty.
                let z = id.lhs.content().symmetric_difference(&id.rhs.content()).next().copied().unwrap();
                let others: BTreeSet<Letter> = id.letters().into_iter().filter(|&l| l != z).collect();
                let (l, r) = (delete_letters(id.lhs.letters(), &others), delete_letters(id.rhs.letters(), &others));
                witnessed += (l.is_empty() != r.is_empty()) as usize;
                continue;
            }
            let (u, u_prime) = (delete_letters(id.lhs.letters(), y), delete_letters(id.rhs.letters(), y));
            let reduced = Identity::new(u.into_word().unwrap(), u_prime.into_word().unwrap());
            if let Some(w) = witness_rms(&reduced) {
                let lhs = s.evaluate(&reduced.lhs, &w.assignment).unwrap();
                let rhs = s.evaluate(&reduced.rhs, &w.assignment).unwrap();
                witnessed += (lhs != rhs && lhs == w.lhs && rhs == w.rhs) as usize;
            }
        }
        outcome(rejected == witnessed, format!("{witnessed}/{rejected} rejections witnessed"))
    });

    all &= criterion(9, "k4-falsifier-consistency", None, || {
        let f = Falsifier::new(4).unwrap();
        let mut accepted = 0;
        let mut found = Vec::new();
        for (id, v) in ids.iter().zip(&verdicts) {
            if v.holds {
                accepted += 1;
                if let Some(w) = f.run(id, 10_000, 0) {
                    found.push(format!("{id}: {w}"));
                }
            }
        }
        outcome(
            found.is_empty(),
            format!("{accepted} accepted identities, {} counterexamples {:?}", found.len(), found.first()),
        )
    });

    all &= criterion(10, "performance", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let small = long_identity(&mut rng, 100_000);
        let large = long_identity(&mut rng, 200_000);
        let random = Identity::new(
            Word::new(word(&mut rng, 10, 100_000)).unwrap(),
            Word::new(word(&mut rng, 10, 100_000)).unwrap(),
        );
        let t_small = elapsed_best_of(3, || {
            profile_and_check(&small);
        });
        let t_large = elapsed_best_of(3, || {
            profile_and_check(&large);
        });
        let t_random = elapsed_best_of(3, || {
            profile_and_check(&random);
        });
        let ratio = t_large.as_secs_f64() / t_small.as_secs_f64();
        let worst = t_large.max(t_random);
        outcome(
            worst < sec(5) && ratio < 3.0,
            format!(
                "|ww'| = 2e5: near-copy {t_large:.2?}, random {t_random:.2?}; 1e5 {t_small:.2?}; doubling ratio {ratio:.2}"
            ),
        )
    });

    assert!(all, "some acceptance criteria failed");
}
