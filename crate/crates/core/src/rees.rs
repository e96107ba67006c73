//! Rees matrix semigroups over cyclic groups, the named instances that occur
//! in the structure of `J_4` and `K̂_4`, and the verifications of both
//! subdirect decompositions.
//!
//! Group elements are written multiplicatively as powers `c^k` of a fixed
//! generator; `e = c^0`. Indices `i ∈ I` and `λ ∈ Λ` are 1-based.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::jones::{self, j4_named, JonesElement, J4_LOWER_MATRIX, J4_UPPER_MATRIX};
use crate::kauffman::{self, ExtKauffmanElement};
use crate::report::Report;
use crate::word::{first_last, Identity, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReesError {
    #[error("index ({i}, {lambda}) out of range for {name}")]
    IndexOutOfRange { name: String, i: usize, lambda: usize },
    #[error("group element {0} does not belong to the group of {1}")]
    GroupMismatch(AbelianGroupElement, String),
    #[error("unknown Rees matrix semigroup {0:?}")]
    UnknownName(String),
    #[error("letter {0} has no assigned value")]
    UnassignedLetter(Letter),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbelianGroupElement {
    /// `c^residue` in the cyclic group of order `modulus`.
    CyclicMod { modulus: u64, residue: u64 },
    /// `c^k` in the infinite cyclic group.
    CyclicInt(i64),
}

impl AbelianGroupElement {
    pub fn trivial() -> Self {
        AbelianGroupElement::CyclicMod { modulus: 1, residue: 0 }
    }

    pub fn power(k: i64) -> Self {
        AbelianGroupElement::CyclicInt(k)
    }

    pub fn modular(modulus: u64, k: i64) -> Self {
        AbelianGroupElement::CyclicMod { modulus, residue: k.rem_euclid(modulus as i64) as u64 }
    }

    pub fn exponent(&self) -> i64 {
        match *self {
            AbelianGroupElement::CyclicMod { residue, .. } => residue as i64,
            AbelianGroupElement::CyclicInt(k) => k,
        }
    }

    pub fn combine(&self, other: &Self) -> Option<Self> {
        use AbelianGroupElement::*;
        match (*self, *other) {
            (CyclicInt(a), CyclicInt(b)) => Some(CyclicInt(a + b)),
            (CyclicMod { modulus: m, residue: a }, CyclicMod { modulus: n, residue: b }) if m == n => {
                Some(CyclicMod { modulus: m, residue: (a + b) % m })
            }
            _ => None,
        }
    }
}

impl fmt::Display for AbelianGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            0 => f.write_str("e"),
            1 => f.write_str("c"),
            k => write!(f, "c^{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Cyclic of the given order; order 1 is the trivial group.
    Cyclic(u64),
    Infinite,
}

impl GroupKind {
    fn contains(&self, g: &AbelianGroupElement) -> bool {
        match (self, g) {
            (GroupKind::Infinite, AbelianGroupElement::CyclicInt(_)) => true,
            (GroupKind::Cyclic(m), AbelianGroupElement::CyclicMod { modulus, residue }) => modulus == m && residue < m,
            _ => false,
        }
    }

    fn element(&self, k: i64) -> AbelianGroupElement {
        match *self {
            GroupKind::Infinite => AbelianGroupElement::power(k),
            GroupKind::Cyclic(m) => AbelianGroupElement::modular(m, k),
        }
    }
}

/// A `Λ × I` matrix over `G ∪ {0}`; `None` is the zero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Option<AbelianGroupElement>>,
}

impl SandwichMatrix {
    pub fn new(rows: Vec<Vec<Option<AbelianGroupElement>>>) -> SandwichMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged sandwich matrix");
        SandwichMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    /// `p_{λ i}`, 1-based.
    pub fn entry(&self, lambda: usize, i: usize) -> Option<AbelianGroupElement> {
        self.entries[(lambda - 1) * self.cols + (i - 1)]
    }

    pub fn has_zero(&self) -> bool {
        self.entries.iter().any(Option::is_none)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RmsElement {
    Zero,
    Triple { i: usize, g: AbelianGroupElement, lambda: usize },
}

impl RmsElement {
    pub fn triple(i: usize, g: AbelianGroupElement, lambda: usize) -> Self {
        RmsElement::Triple { i, g, lambda }
    }
}

impl fmt::Display for RmsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RmsElement::Zero => f.write_str("0"),
            RmsElement::Triple { i, g, lambda } => write!(f, "({i},{g},{lambda})"),
        }
    }
}

/// A Rees matrix semigroup `M⁰(I, G, Λ; P)`, or `M(I, G, Λ; P)` when `P` has no zero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSemigroup {
    pub name: String,
    pub group: GroupKind,
    pub sandwich: SandwichMatrix,
}

impl ReesSemigroup {
    pub fn new(name: &str, group: GroupKind, sandwich: SandwichMatrix) -> ReesSemigroup {
        ReesSemigroup { name: name.to_string(), group, sandwich }
    }

    /// `|I|`.
    pub fn index_count(&self) -> usize {
        self.sandwich.cols
    }

    /// `|Λ|`.
    pub fn lambda_count(&self) -> usize {
        self.sandwich.rows
    }

    pub fn has_zero(&self) -> bool {
        self.sandwich.has_zero()
    }

    fn check(&self, x: &RmsElement) -> Result<(), ReesError> {
        if let RmsElement::Triple { i, g, lambda } = *x {
            if i == 0 || i > self.index_count() || lambda == 0 || lambda > self.lambda_count() {
                return Err(ReesError::IndexOutOfRange { name: self.name.clone(), i, lambda });
            }
            if !self.group.contains(&g) {
                return Err(ReesError::GroupMismatch(g, self.name.clone()));
            }
        } else if !self.has_zero() {
            return Err(ReesError::IndexOutOfRange { name: self.name.clone(), i: 0, lambda: 0 });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &RmsElement, b: &RmsElement) -> Result<RmsElement, ReesError> {
        rms_multiply(self, a, b)
    }

    /// All elements whose group entry has an exponent in `exponents` (the
    /// whole group when it is finite), plus zero when present.
    pub fn elements(&self, exponents: RangeInclusive<i64>) -> Vec<RmsElement> {
        let group: Vec<AbelianGroupElement> = match self.group {
            GroupKind::Cyclic(m) => (0..m as i64).map(|k| self.group.element(k)).collect(),
            GroupKind::Infinite => exponents.map(AbelianGroupElement::power).collect(),
        };
        let mut out = Vec::new();
        if self.has_zero() {
            out.push(RmsElement::Zero);
        }
        for i in 1..=self.index_count() {
            for g in &group {
                for lambda in 1..=self.lambda_count() {
                    out.push(RmsElement::triple(i, *g, lambda));
                }
            }
        }
        out
    }

    pub fn evaluate(&self, w: &Word, phi: &BTreeMap<Letter, RmsElement>) -> Result<RmsElement, ReesError> {
        let lookup = |l: &Letter| phi.get(l).copied().ok_or(ReesError::UnassignedLetter(*l));
        let mut letters = w.letters().iter();
        let mut acc = lookup(letters.next().expect("nonempty word"))?;
        for l in letters {
            acc = self.multiply(&acc, &lookup(l)?)?;
        }
        Ok(acc)
    }
}

pub fn rms_multiply(s: &ReesSemigroup, a: &RmsElement, b: &RmsElement) -> Result<RmsElement, ReesError> {
    s.check(a)?;
    s.check(b)?;
    match (*a, *b) {
        (RmsElement::Triple { i, g, lambda }, RmsElement::Triple { i: j, g: h, lambda: mu }) => {
            match s.sandwich.entry(lambda, j) {
                None => Ok(RmsElement::Zero),
                Some(p) => {
                    let mid = g
                        .combine(&p)
                        .and_then(|x| x.combine(&h))
                        .ok_or_else(|| ReesError::GroupMismatch(p, s.name.clone()))?;
                    Ok(RmsElement::triple(i, mid, mu))
                }
            }
        }
        _ => Ok(RmsElement::Zero),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    M3,
    RC2,
    MC3,
    RB2x2,
    /// `M({1,2}, C∞, {1,2}; (e c / e e))`, the semigroup separating every
    /// identity that fails in some Rees matrix semigroup over an abelian group.
    Separator,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [Builtin::M3, Builtin::RC2, Builtin::MC3, Builtin::RB2x2, Builtin::Separator];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::M3 => "M3",
            Builtin::RC2 => "RC2",
            Builtin::MC3 => "MC3",
            Builtin::RB2x2 => "RB2x2",
            Builtin::Separator => "S",
        }
    }

    pub fn from_name(name: &str) -> Result<Builtin, ReesError> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| ReesError::UnknownName(name.to_string()))
    }
}

pub fn builtin(which: Builtin) -> ReesSemigroup {
    let e = Some(AbelianGroupElement::trivial());
    let c = |k: i64| Some(AbelianGroupElement::power(k));
    let (group, rows) = match which {
        Builtin::M3 => (GroupKind::Cyclic(1), vec![vec![e, e, None], vec![e, e, e], vec![None, e, e]]),
        Builtin::RB2x2 => (GroupKind::Cyclic(1), vec![vec![e, e], vec![e, e]]),
        Builtin::RC2 => (GroupKind::Infinite, vec![vec![c(2), c(1)], vec![c(1), c(2)]]),
        Builtin::MC3 => (
            GroupKind::Infinite,
            vec![vec![c(1), c(0), None], vec![c(0), c(1), c(0)], vec![None, c(0), c(1)]],
        ),
        Builtin::Separator => (GroupKind::Infinite, vec![vec![c(0), c(1)], vec![c(0), c(0)]]),
    };
    ReesSemigroup::new(which.name(), group, SandwichMatrix::new(rows))
}

pub fn builtin_named(name: &str) -> Result<ReesSemigroup, ReesError> {
    Ok(builtin(Builtin::from_name(name)?))
}

/// Length-2 factor counts of `w`.
pub(crate) fn factor_counts(w: &[Letter]) -> BTreeMap<(Letter, Letter), usize> {
    let mut counts = BTreeMap::new();
    for p in w.windows(2) {
        *counts.entry((p[0], p[1])).or_insert(0) += 1;
    }
    counts
}

/// Whether `id` holds in every Rees matrix semigroup over an abelian group:
/// same first letter, same last letter, same count of every length-2 factor.
pub fn check_identity_rms_abelian(id: &Identity) -> bool {
    let (l, r) = (id.lhs.letters(), id.rhs.letters());
    first_last(l) == first_last(r) && factor_counts(l) == factor_counts(r)
}

/// Which of the four separating substitutions produced a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstitutionKind {
    /// First letters differ.
    Alpha,
    /// Last letters differ.
    Omega,
    /// Counts of the factor `yz`, `y ≠ z`, differ.
    Theta(Letter, Letter),
    /// Counts of the factor `yy` differ.
    Psi(Letter),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmsWitness {
    pub kind: SubstitutionKind,
    pub assignment: BTreeMap<Letter, RmsElement>,
    pub lhs: RmsElement,
    pub rhs: RmsElement,
}

impl fmt::Display for RmsWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subst: Vec<String> = self.assignment.iter().map(|(l, v)| format!("{l}->{v}")).collect();
        write!(f, "{} gives {} vs {}", subst.join(" "), self.lhs, self.rhs)
    }
}

/// A substitution into [`Builtin::Separator`] under which the two sides of
/// `id` take different values, or `None` when `id` satisfies the
/// first-letter, last-letter and factor-count conditions.
pub fn witness_rms(id: &Identity) -> Option<RmsWitness> {
    let s = builtin(Builtin::Separator);
    let e = AbelianGroupElement::power(0);
    let t = |i, l| RmsElement::triple(i, e, l);
    let letters = id.letters();
    let try_kind = |kind: SubstitutionKind, value: &dyn Fn(Letter) -> RmsElement| {
        let assignment: BTreeMap<Letter, RmsElement> = letters.iter().map(|&l| (l, value(l))).collect();
        let lhs = s.evaluate(&id.lhs, &assignment).expect("total assignment");
        let rhs = s.evaluate(&id.rhs, &assignment).expect("total assignment");
        (lhs != rhs).then_some(RmsWitness { kind, assignment, lhs, rhs })
    };

    let (lf, ll) = first_last(id.lhs.letters()).expect("nonempty");
    let (rf, rl) = first_last(id.rhs.letters()).expect("nonempty");
    if lf != rf {
        return try_kind(SubstitutionKind::Alpha, &|x| if x == lf { t(1, 1) } else { t(2, 2) });
    }
    if ll != rl {
        return try_kind(SubstitutionKind::Omega, &|x| if x == ll { t(1, 1) } else { t(2, 2) });
    }
    let (lc, rc) = (factor_counts(id.lhs.letters()), factor_counts(id.rhs.letters()));
    let factors: BTreeSet<(Letter, Letter)> = lc.keys().chain(rc.keys()).copied().collect();
    for (y, z) in factors {
        if lc.get(&(y, z)) == rc.get(&(y, z)) {
            continue;
        }
        let found = if y == z {
            try_kind(SubstitutionKind::Psi(y), &|x| if x == y { t(2, 1) } else { t(1, 2) })
        } else {
            try_kind(SubstitutionKind::Theta(y, z), &|x| {
                if x == y {
                    t(1, 1)
                } else if x == z {
                    t(2, 2)
                } else {
                    t(1, 2)
                }
            })
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Position of each named diagram in a label matrix, 1-based.
fn positions<const R: usize, const C: usize>(matrix: &[[&str; C]; R]) -> HashMap<JonesElement, (usize, usize)> {
    let mut out = HashMap::new();
    for (r, row) in matrix.iter().enumerate() {
        for (c, name) in row.iter().enumerate() {
            out.insert(j4_named(name).expect("figure label"), (r + 1, c + 1));
        }
    }
    out
}

fn j4_flat() -> Vec<JonesElement> {
    jones::enumerate_jones(4)
        .expect("rank 4")
        .into_iter()
        .filter(|e| !e.is_identity())
        .collect()
}

/// Checks that `x ↦ (x cut, x mod I_4)` embeds `J_4♭` into `RB2x2 × M3` as a
/// subdirect product: retraction onto the ideal `I_4`, homomorphism on all
/// pairs, injectivity and surjectivity of both projections.
pub fn verify_structure_j4() -> Report {
    let mut report = Report::new();
    let flat = j4_flat();
    let (m3, rb) = (builtin(Builtin::M3), builtin(Builtin::RB2x2));
    let upper = positions(&J4_UPPER_MATRIX);
    let lower = positions(&J4_LOWER_MATRIX);
    let e = AbelianGroupElement::trivial();
    let jm = |a: &JonesElement, b: &JonesElement| jones::jmultiply(a, b).expect("rank 4").result;
    let cut = |x: &JonesElement| jones::cut_j(x).expect("flat element");

    let ideal: Vec<&JonesElement> = flat.iter().filter(|x| x.t_wire_count() == 0).collect();
    let image: HashSet<JonesElement> = flat.iter().map(cut).collect();
    let mut violations = Vec::new();
    if image.len() != 4 || !ideal.iter().all(|x| image.contains(*x) && &cut(x) == *x) {
        violations.push(format!("image has {} elements", image.len()));
    }
    for x in &flat {
        for y in &ideal {
            for p in [jm(x, y), jm(y, x)] {
                if p.t_wire_count() != 0 {
                    violations.push(format!("{x:?}·{y:?} leaves the ideal"));
                }
            }
        }
    }
    report.push_violations("j4-retraction-onto-ideal", flat.len() * ideal.len(), violations);

    let to_band = |x: &JonesElement| {
        let (i, j) = lower[&cut(x)];
        RmsElement::triple(i, e, j)
    };
    let to_m3 = |x: &JonesElement| match upper.get(x) {
        Some(&(i, j)) => RmsElement::triple(i, e, j),
        None => RmsElement::Zero,
    };
    let embed = |x: &JonesElement| (to_band(x), to_m3(x));

    let mut violations = Vec::new();
    for x in &flat {
        for y in &flat {
            let (bx, mx) = embed(x);
            let (by, my) = embed(y);
            let expected = (rb.multiply(&bx, &by).expect("band"), m3.multiply(&mx, &my).expect("M3"));
            let got = embed(&jm(x, y));
            if got != expected {
                violations.push(format!(
                    "{}·{}: {} {} vs {} {}",
                    label(x),
                    label(y),
                    got.0,
                    got.1,
                    expected.0,
                    expected.1
                ));
            }
        }
    }
    report.push_violations("j4-homomorphism", flat.len() * flat.len(), violations);

    let images: HashSet<(RmsElement, RmsElement)> = flat.iter().map(embed).collect();
    report.push(
        "j4-injective",
        images.len() == flat.len(),
        format!("{} distinct images of {}", images.len(), flat.len()),
    );
    let band_hit: HashSet<RmsElement> = images.iter().map(|p| p.0).collect();
    let m3_hit: HashSet<RmsElement> = images.iter().map(|p| p.1).collect();
    let band_all = rb.elements(0..=0).len();
    let m3_all = m3.elements(0..=0).len();
    report.push(
        "j4-band-projection-surjective",
        band_hit.len() == band_all,
        format!("{} of {band_all} hit", band_hit.len()),
    );
    report.push(
        "j4-m3-projection-surjective",
        m3_hit.len() == m3_all,
        format!("{} of {m3_all} hit", m3_hit.len()),
    );
    report
}

fn label(x: &JonesElement) -> String {
    jones::j4_label(x).map_or_else(|| format!("{x:?}"), str::to_string)
}

/// Checks that `ξ ↦ (ξ cut ∈ RC2, ξ mod Î_4 ∈ MC3)` is an injective
/// homomorphism on `K̂_4♭` restricted to circle counts in `circles`, with both
/// projections hitting every sampled target element.
pub fn verify_structure_ext_k4(circles: RangeInclusive<i64>) -> Report {
    let mut report = Report::new();
    let flat = j4_flat();
    let (rc2, mc3) = (builtin(Builtin::RC2), builtin(Builtin::MC3));
    let upper = positions(&J4_UPPER_MATRIX);
    let lower = positions(&J4_LOWER_MATRIX);
    let grid: Vec<ExtKauffmanElement> = flat
        .iter()
        .flat_map(|j| circles.clone().map(move |m| ExtKauffmanElement::new(j.clone(), m)))
        .collect();
    let kmul = |a: &ExtKauffmanElement, b: &ExtKauffmanElement| kauffman::ext_kmultiply(a, b).expect("rank 4");
    let cut = |x: &ExtKauffmanElement| kauffman::cut_k(x).expect("flat element");

    let mut violations = Vec::new();
    for x in &grid {
        let cx = cut(x);
        if cx.t_wire_count() != 0 || cut(&cx) != cx {
            violations.push(format!("cut of {x} is not a fixed t-wire-free element"));
        }
    }
    report.push_violations("k4-retraction", grid.len(), violations);

    let to_rc2 = |x: &ExtKauffmanElement| {
        let cx = cut(x);
        let (i, j) = lower[&cx.jones];
        RmsElement::triple(i, AbelianGroupElement::power(cx.circles), j)
    };
    let to_mc3 = |x: &ExtKauffmanElement| match upper.get(&x.jones) {
        Some(&(k, l)) => RmsElement::triple(k, AbelianGroupElement::power(x.circles), l),
        None => RmsElement::Zero,
    };
    let embed = |x: &ExtKauffmanElement| (to_rc2(x), to_mc3(x));

    let mut rc2_violations = Vec::new();
    let mut mc3_violations = Vec::new();
    for x in &grid {
        for y in &grid {
            let xy = kmul(x, y);
            let (rx, mx) = embed(x);
            let (ry, my) = embed(y);
            let (rxy, mxy) = embed(&xy);
            let r_expected = rc2.multiply(&rx, &ry).expect("RC2");
            let m_expected = mc3.multiply(&mx, &my).expect("MC3");
            if rxy != r_expected {
                rc2_violations.push(format!("{x}·{y}: {rxy} vs {r_expected}"));
            }
            if mxy != m_expected {
                mc3_violations.push(format!("{x}·{y}: {mxy} vs {m_expected}"));
            }
        }
    }
    let pairs = grid.len() * grid.len();
    report.push_violations("k4-rc2-homomorphism", pairs, rc2_violations);
    report.push_violations("k4-mc3-homomorphism", pairs, mc3_violations);

    let images: HashSet<(RmsElement, RmsElement)> = grid.iter().map(embed).collect();
    report.push(
        "k4-injective",
        images.len() == grid.len(),
        format!("{} distinct images of {}", images.len(), grid.len()),
    );
    // Cutting spends a circle, so the RC2 images of the grid are the exponents
    // shifted down by one on the two-t-wire layer; compare against that window.
    let (lo, hi) = (*circles.start(), *circles.end());
    let rc2_hit: HashSet<RmsElement> = images.iter().map(|p| p.0).collect();
    let rc2_target: Vec<RmsElement> = rc2.elements(lo..=hi).into_iter().collect();
    let rc2_missing = rc2_target.iter().filter(|t| !rc2_hit.contains(t)).count();
    report.push(
        "k4-rc2-projection-covers-window",
        rc2_missing == 0,
        format!("{} of {} window elements hit", rc2_target.len() - rc2_missing, rc2_target.len()),
    );
    let mc3_hit: HashSet<RmsElement> = images.iter().map(|p| p.1).collect();
    let mc3_target = mc3.elements(lo..=hi);
    let mc3_missing = mc3_target.iter().filter(|t| !mc3_hit.contains(t)).count();
    report.push(
        "k4-mc3-projection-covers-window",
        mc3_missing == 0,
        format!("{} of {} window elements hit", mc3_target.len() - mc3_missing, mc3_target.len()),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(k: i64) -> AbelianGroupElement {
        AbelianGroupElement::power(k)
    }

    fn id(l: &str, r: &str) -> Identity {
        Identity::from_chars(l, r).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let m3 = builtin(Builtin::M3);
        let e = AbelianGroupElement::trivial();
        assert_eq!(
            m3.multiply(&RmsElement::triple(1, e, 1), &RmsElement::triple(3, e, 2)).unwrap(),
            RmsElement::Zero
        );
        let rc2 = builtin(Builtin::RC2);
        for (a, b) in [(0, 0), (2, -5), (-1, 3)] {
            assert_eq!(
                rc2.multiply(&RmsElement::triple(1, c(a), 2), &RmsElement::triple(1, c(b), 2)).unwrap(),
                RmsElement::triple(1, c(a + b + 1), 2)
            );
        }
        let x = RmsElement::triple(2, e, 3);
        assert_eq!(m3.multiply(&RmsElement::Zero, &x).unwrap(), RmsElement::Zero);
        assert_eq!(m3.multiply(&x, &RmsElement::Zero).unwrap(), RmsElement::Zero);
    }

    #[test]
    fn multiply_rejects_foreign_elements() {
        let m3 = builtin(Builtin::M3);
        let e = AbelianGroupElement::trivial();
        assert!(matches!(
            m3.multiply(&RmsElement::triple(4, e, 1), &RmsElement::triple(1, e, 1)),
            Err(ReesError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            m3.multiply(&RmsElement::triple(1, c(1), 1), &RmsElement::triple(1, e, 1)),
            Err(ReesError::GroupMismatch(..))
        ));
        let rc2 = builtin(Builtin::RC2);
        assert!(rc2.multiply(&RmsElement::Zero, &RmsElement::triple(1, c(0), 1)).is_err());
    }

    #[test]
    fn builtin_shapes() {
        assert_eq!(builtin(Builtin::M3).elements(0..=0).len(), 10);
        assert_eq!(builtin(Builtin::RB2x2).elements(0..=0).len(), 4);
        let mc3 = builtin(Builtin::MC3);
        for k in 1..=3 {
            assert_eq!(mc3.sandwich.entry(k, k), Some(c(1)));
        }
        assert_eq!(mc3.sandwich.entry(1, 3), None);
        assert!(builtin_named("M4").is_err());
        assert_eq!(builtin_named("RC2").unwrap(), builtin(Builtin::RC2));
        let m3 = builtin(Builtin::M3);
        let rb = builtin(Builtin::RB2x2);
        let e = AbelianGroupElement::trivial();
        for (i, j, k, l) in itertools_product() {
            let (a, b) = (RmsElement::triple(i, e, j), RmsElement::triple(k, e, l));
            assert_eq!(m3.multiply(&a, &b).unwrap(), rb.multiply(&a, &b).unwrap());
            assert_eq!(rb.multiply(&a, &b).unwrap(), RmsElement::triple(i, e, l));
        }
    }

    fn itertools_product() -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        v.push((i, j, k, l));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn abelian_check_examples() {
        assert!(check_identity_rms_abelian(&id("xyx", "xyx")));
        assert!(check_identity_rms_abelian(&id("xxyx", "xyxx")));
        assert!(!check_identity_rms_abelian(&id("xy", "yx")));
    }

    #[test]
    fn witness_examples() {
        let w = witness_rms(&id("xy", "yx")).unwrap();
        assert_eq!(w.kind, SubstitutionKind::Alpha);
        let e = c(0);
        assert_eq!(w.assignment[&Letter::new("x")], RmsElement::triple(1, e, 1));
        assert_eq!(w.assignment[&Letter::new("y")], RmsElement::triple(2, e, 2));
        assert!(matches!(w.lhs, RmsElement::Triple { i: 1, .. }));
        assert!(matches!(w.rhs, RmsElement::Triple { i: 2, .. }));

        let w = witness_rms(&id("xyx", "xxy")).unwrap();
        assert_eq!(w.kind, SubstitutionKind::Omega);
        let w = witness_rms(&id("xyx", "xxyx")).unwrap();
        assert_eq!(w.kind, SubstitutionKind::Psi(Letter::new("x")));
        let w = witness_rms(&id("xyzx", "xzyx")).unwrap();
        assert_eq!(w.kind, SubstitutionKind::Theta(Letter::new("x"), Letter::new("y")));
        match (w.lhs, w.rhs) {
            (RmsElement::Triple { g: a, .. }, RmsElement::Triple { g: b, .. }) => {
                assert_eq!((a.exponent(), b.exponent()), (1, 0));
            }
            _ => panic!("no zero in S"),
        }

        let w = witness_rms(&id("xx", "x")).unwrap();
        assert_eq!(w.kind, SubstitutionKind::Psi(Letter::new("x")));
        assert_eq!(w.lhs, RmsElement::triple(2, c(1), 1));
        assert_eq!(w.rhs, RmsElement::triple(2, c(0), 1));
        assert!(witness_rms(&id("xxyx", "xyxx")).is_none());
    }

    #[test]
    fn structure_reports_pass() {
        let r = verify_structure_j4();
        assert!(r.passed(), "{r}");
        assert_eq!(r.lines.len(), 5);
        let r = verify_structure_ext_k4(-3..=3);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn rc2_component_of_product() {
        let h13 = j4_named("h1h3").unwrap();
        let removed = jones::jmultiply(&h13, &h13).unwrap().removed as i64;
        assert_eq!(removed, 2);
        let x = ExtKauffmanElement::new(h13.clone(), 2);
        let y = ExtKauffmanElement::new(h13, 0);
        let prod = kauffman::ext_kmultiply(&x, &y).unwrap();
        assert_eq!(prod.circles, 2 + removed);
        let rc2 = builtin(Builtin::RC2);
        let got = rc2.multiply(&RmsElement::triple(1, c(2), 1), &RmsElement::triple(1, c(0), 1)).unwrap();
        assert_eq!(got, RmsElement::triple(1, c(2 + removed), 1));
    }

    #[test]
    fn leaving_two_t_wire_layer_maps_to_zero() {
        let mc3 = builtin(Builtin::MC3);
        let h1 = j4_named("h1").unwrap();
        let h3 = j4_named("h3").unwrap();
        assert_eq!(jones::jmultiply(&h1, &h3).unwrap().result.t_wire_count(), 0);
        // h1 is row 3 column 3, h3 row 1 column 1; p_{3,1} = 0.
        let got = mc3.multiply(&RmsElement::triple(3, c(0), 3), &RmsElement::triple(1, c(0), 1)).unwrap();
        assert_eq!(got, RmsElement::Zero);
    }

    fn arb_element(which: Builtin) -> impl Strategy<Value = RmsElement> {
        let elems = builtin(which).elements(-4..=4);
        proptest::sample::select(elems)
    }

    proptest! {
        #[test]
        fn associative(which in proptest::sample::select(Builtin::ALL.to_vec()), seed in any::<u64>()) {
            let s = builtin(which);
            let elems = s.elements(-4..=4);
            let pick = |k: u64| elems[(k % elems.len() as u64) as usize];
            let (a, b, c) = (pick(seed), pick(seed / 7 + 3), pick(seed / 131 + 11));
            let left = s.multiply(&s.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = s.multiply(&a, &s.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn mc3_associative(a in arb_element(Builtin::MC3), b in arb_element(Builtin::MC3), c in arb_element(Builtin::MC3)) {
            let s = builtin(Builtin::MC3);
            prop_assert_eq!(
                s.multiply(&s.multiply(&a, &b).unwrap(), &c).unwrap(),
                s.multiply(&a, &s.multiply(&b, &c).unwrap()).unwrap()
            );
        }
    }
}
