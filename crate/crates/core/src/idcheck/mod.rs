//! Identity checking for `K_3`, `K_4` and `J_4`, with brute-force oracles and
//! a randomized falsifier for `K_n`, `n ≥ 5`.
//!
//! For both checkers the quantifier over deletion sets `Y ⊂ al(w)` is folded
//! into two fingerprints of each side: the first/last occurrence orders (for
//! conditions (a) and (b)) and the cut-pair profile (for (c), or its
//! ⊆-minimal between-sets for (c')).

mod falsify;
mod oracle;
mod profile;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::rees::factor_counts;
use crate::word::{delete_letters, Identity, Letter};

pub use falsify::{falsify_kn, falsify_kn_seeded, Falsifier};
pub use oracle::{oracle_all_y, oracle_all_y_bounded, oracle_finite_monoid, OracleError, OracleMode, DEFAULT_ALPHABET_BOUND};
pub use profile::{profile, profile_reference, CutPair, CutPairProfile, OccurrenceOrders};

use profile::{bits_members, bits_subset, raw_orders, raw_profile, Alphabet, Bits, RawProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// The two sides have different content.
    #[serde(rename = "content")]
    Content,
    /// First letters of `w_Y`, `w'_Y` differ.
    #[serde(rename = "a")]
    A,
    /// Last letters differ.
    #[serde(rename = "b")]
    B,
    /// Some length-2 factor occurs a different number of times.
    #[serde(rename = "c")]
    C,
    /// Some length-2 factor occurs on one side only.
    #[serde(rename = "c'")]
    CPrime,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Content => "content",
            Condition::A => "(a)",
            Condition::B => "(b)",
            Condition::C => "(c)",
            Condition::CPrime => "(c')",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `w_Y ≐ w'_Y` violates `condition`.
    Failing { y: BTreeSet<Letter>, condition: Condition, u: String, u_prime: String },
    /// Evaluating both sides under `assignment` gives different values.
    Substitution { assignment: Vec<(Letter, String)>, lhs_value: String, rhs_value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub monoid: String,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(monoid: &str) -> Verdict {
        Verdict { holds: true, monoid: monoid.to_string(), witness: None }
    }

    pub fn fails(monoid: &str, witness: Witness) -> Verdict {
        Verdict { holds: false, monoid: monoid.to_string(), witness: Some(witness) }
    }

    pub fn with_monoid(mut self, monoid: &str) -> Verdict {
        self.monoid = monoid.to_string();
        self
    }

    /// The failing deletion set and condition, when the witness is of that kind.
    pub fn failing(&self) -> Option<(&BTreeSet<Letter>, Condition)> {
        match &self.witness {
            Some(Witness::Failing { y, condition, .. }) => Some((y, *condition)),
            _ => None,
        }
    }
}

fn set_string(y: &BTreeSet<Letter>) -> String {
    let names: Vec<&str> = y.iter().map(|l| l.name()).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Failing { condition: Condition::Content, u, u_prime, .. } => {
                write!(f, "content {u} vs {u_prime}")
            }
            Witness::Failing { y, condition, u, u_prime } => {
                write!(f, "Y={} {condition} {u} = {u_prime}", set_string(y))
            }
            Witness::Substitution { assignment, .. } => {
                let parts: Vec<String> = assignment.iter().map(|(l, v)| format!("{l}->{v}")).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.witness, self.holds) {
            (_, true) => f.write_str("HOLDS"),
            (Some(w), false) => write!(f, "FAILS {} {w}", self.monoid),
            (None, false) => write!(f, "FAILS {}", self.monoid),
        }
    }
}

/// The first condition among (a), (b) and (c)/(c') violated by `w_Y ≐ w'_Y`.
pub(crate) fn violated_at(id: &Identity, y: &BTreeSet<Letter>, mode: OracleMode) -> Option<Witness> {
    let u = delete_letters(id.lhs.letters(), y);
    let v = delete_letters(id.rhs.letters(), y);
    let (ul, vl) = (u.letters(), v.letters());
    let condition = if ul.first() != vl.first() {
        Some(Condition::A)
    } else if ul.last() != vl.last() {
        Some(Condition::B)
    } else {
        let (fu, fv) = (factor_counts(ul), factor_counts(vl));
        match mode {
            OracleMode::Counts => (fu != fv).then_some(Condition::C),
            OracleMode::Sets => {
                let ku: BTreeSet<_> = fu.keys().collect();
                let kv: BTreeSet<_> = fv.keys().collect();
                (ku != kv).then_some(Condition::CPrime)
            }
        }
    };
    condition.map(|condition| Witness::Failing {
        y: y.clone(),
        condition,
        u: u.to_string(),
        u_prime: v.to_string(),
    })
}

fn content_witness(id: &Identity) -> Witness {
    Witness::Failing {
        y: BTreeSet::new(),
        condition: Condition::Content,
        u: set_string(&id.lhs.content()),
        u_prime: set_string(&id.rhs.content()),
    }
}

struct Fingerprint {
    first: Vec<u32>,
    last: Vec<u32>,
    raw: RawProfile,
}

fn fingerprint(w: &[Letter], alphabet: &Alphabet) -> Fingerprint {
    let local = alphabet.encode(w);
    let (first, last) = raw_orders(&local, alphabet.len());
    Fingerprint { first, last, raw: raw_profile(&local, alphabet.len()) }
}

/// Running minimum of candidate deletion sets (sorted index lists) by size,
/// then lexicographically; index order is name order.
#[derive(Default)]
struct Smallest(Option<Vec<u32>>);

impl Smallest {
    fn offer_bits(&mut self, b: &Bits) {
        let size = b.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if self.0.as_ref().is_none_or(|best| size <= best.len()) {
            self.offer(bits_members(b));
        }
    }

    fn offer(&mut self, y: Vec<u32>) {
        let better = match &self.0 {
            None => true,
            Some(best) => (y.len(), &y) < (best.len(), best),
        };
        if better {
            self.0 = Some(y);
        }
    }
}

/// Minimal deletion sets making the first letters of the two sides differ:
/// `pre_f(p) ∪ pre_g(q)` for `p ≠ q` not swallowed by it.
fn order_candidates(f: &[u32], g: &[u32], out: &mut Smallest) {
    if f == g {
        return;
    }
    for (pf, &p) in f.iter().enumerate() {
        for (pg, &q) in g.iter().enumerate() {
            if p == q || f[..pf].contains(&q) || g[..pg].contains(&p) {
                continue;
            }
            let mut y: Vec<u32> = f[..pf].iter().chain(&g[..pg]).copied().collect();
            y.sort_unstable();
            y.dedup();
            out.offer(y);
        }
    }
}

fn reversed(v: &[u32]) -> Vec<u32> {
    v.iter().rev().copied().collect()
}

/// Groups a sorted raw profile by `(x, y)`.
fn by_pair(raw: &RawProfile) -> BTreeMap<(u32, u32), Vec<(&Bits, u64)>> {
    let mut out: BTreeMap<(u32, u32), Vec<(&Bits, u64)>> = BTreeMap::new();
    for (x, y, b, m) in raw {
        out.entry((*x, *y)).or_default().push((b, *m));
    }
    out
}

/// Between-sets whose multiplicity differs; the smallest is the smallest
/// deletion set violating (c).
fn count_candidates(l: &RawProfile, r: &RawProfile, out: &mut Smallest) {
    let (mut i, mut j) = (0, 0);
    while i < l.len() || j < r.len() {
        let ord = match (l.get(i), r.get(j)) {
            (Some(a), Some(b)) => (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.offer_bits(&l[i].2);
                i += 1;
            }
            Ordering::Greater => {
                out.offer_bits(&r[j].2);
                j += 1;
            }
            Ordering::Equal => {
                if l[i].3 != r[j].3 {
                    out.offer_bits(&l[i].2);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

fn minimal_sets<'a>(sets: &[(&'a Bits, u64)]) -> Vec<&'a Bits> {
    let mut sorted: Vec<&Bits> = sets.iter().map(|s| s.0).collect();
    sorted.sort_by_key(|b| b.iter().map(|w| w.count_ones()).sum::<u32>());
    let mut kept: Vec<&Bits> = Vec::new();
    for b in sorted {
        if !kept.iter().any(|k| bits_subset(k, b)) {
            kept.push(b);
        }
    }
    kept.sort();
    kept
}

/// Minimal between-sets of one side not above any minimal between-set of the
/// other; each is a minimal deletion set violating (c'). Returns whether the
/// antichains agree.
fn set_candidates(l: &RawProfile, r: &RawProfile, out: &mut Smallest) -> bool {
    let (gl, gr) = (by_pair(l), by_pair(r));
    let keys: BTreeSet<&(u32, u32)> = gl.keys().chain(gr.keys()).collect();
    let mut agree = true;
    for key in keys {
        let al = gl.get(key).map_or_else(Vec::new, |s| minimal_sets(s));
        let ar = gr.get(key).map_or_else(Vec::new, |s| minimal_sets(s));
        if al == ar {
            continue;
        }
        agree = false;
        for (mine, theirs) in [(&al, &ar), (&ar, &al)] {
            for a in mine.iter() {
                if !theirs.iter().any(|t| bits_subset(t, a)) {
                    out.offer_bits(a);
                }
            }
        }
    }
    agree
}

fn check(id: &Identity, mode: OracleMode, monoid: &str) -> Verdict {
    let content = id.lhs.content();
    if content != id.rhs.content() {
        return Verdict::fails(monoid, content_witness(id));
    }
    let alphabet = Alphabet::new(&content);
    let l = fingerprint(id.lhs.letters(), &alphabet);
    let r = fingerprint(id.rhs.letters(), &alphabet);
    let mut candidates = Smallest::default();
    order_candidates(&l.first, &r.first, &mut candidates);
    order_candidates(&reversed(&l.last), &reversed(&r.last), &mut candidates);
    let third_agrees = match mode {
        OracleMode::Counts => {
            count_candidates(&l.raw, &r.raw, &mut candidates);
            l.raw == r.raw
        }
        OracleMode::Sets => set_candidates(&l.raw, &r.raw, &mut candidates),
    };
    if l.first == r.first && l.last == r.last && third_agrees {
        return Verdict::holds(monoid);
    }
    Verdict::fails(monoid, smallest_failing(id, &alphabet, candidates, mode))
}

fn smallest_failing(id: &Identity, alphabet: &Alphabet, candidates: Smallest, mode: OracleMode) -> Witness {
    let best = candidates.0.expect("a failing fingerprint yields a candidate");
    let y: BTreeSet<Letter> = best.iter().map(|&i| alphabet.letters[i as usize]).collect();
    violated_at(id, &y, mode)
        .or_else(|| {
            oracle::oracle_all_y(id, mode).ok().and_then(|v| v.witness)
        })
        .expect("candidate deletion set violates a condition")
}

/// Decides whether `id` holds in `K_3`, equivalently in `K_4`.
pub fn check_k3_k4(id: &Identity) -> Verdict {
    check(id, OracleMode::Counts, "K4")
}

/// Decides whether `id` holds in `J_4`.
pub fn check_j4(id: &Identity) -> Verdict {
    check(id, OracleMode::Sets, "J4")
}
