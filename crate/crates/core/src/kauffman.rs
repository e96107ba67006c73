//! Kauffman monoids `K_n` and their extensions `K̂_n` in coordinates: a Jones
//! element together with a circle count (nonnegative for `K_n`, any integer
//! for `K̂_n`, where negative counts are negative circles).
//!
//! The product law is `(a, s)(b, t) = (ab, s + t + r)` with `r` the number of
//! circles erased while forming the Jones product `ab`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{DiagramError, WireDiagram};
use crate::jones::{self, JonesElement, JonesError};
use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KauffmanError {
    #[error(transparent)]
    Jones(#[from] JonesError),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("letter {0} has no assigned value")]
    UnassignedLetter(Letter),
    #[error("{0} is not a generator of K3")]
    NotK3Generator(Generator),
    #[error("cutting on extended Kauffman monoids is defined for rank 4 only, got {0}")]
    UnsupportedRank(usize),
}

impl From<DiagramError> for KauffmanError {
    fn from(e: DiagramError) -> Self {
        KauffmanError::Jones(e.into())
    }
}

/// An element of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KauffmanElement {
    pub jones: JonesElement,
    pub circles: u64,
}

/// An element of `K̂_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtKauffmanElement {
    pub jones: JonesElement,
    pub circles: i64,
}

pub type GeneratorAssignment = BTreeMap<Letter, ExtKauffmanElement>;

impl KauffmanElement {
    pub fn new(jones: JonesElement, circles: u64) -> Self {
        KauffmanElement { jones, circles }
    }

    pub fn identity(n: usize) -> Result<Self, KauffmanError> {
        Ok(KauffmanElement::new(JonesElement::identity(n)?, 0))
    }

    /// Coordinates of a planar wire diagram.
    pub fn from_diagram(d: &WireDiagram) -> Result<Self, KauffmanError> {
        Ok(KauffmanElement::new(JonesElement::erase(d)?, d.circles()))
    }

    pub fn to_diagram(&self) -> WireDiagram {
        self.jones.diagram().with_circles(self.circles)
    }

    pub fn rank(&self) -> usize {
        self.jones.rank()
    }

    pub fn extend(&self) -> ExtKauffmanElement {
        ExtKauffmanElement::new(self.jones.clone(), self.circles as i64)
    }
}

impl ExtKauffmanElement {
    pub fn new(jones: JonesElement, circles: i64) -> Self {
        ExtKauffmanElement { jones, circles }
    }

    pub fn identity(n: usize) -> Result<Self, KauffmanError> {
        Ok(ExtKauffmanElement::new(JonesElement::identity(n)?, 0))
    }

    pub fn rank(&self) -> usize {
        self.jones.rank()
    }

    pub fn t_wire_count(&self) -> usize {
        self.jones.t_wire_count()
    }

    /// Back into `K_n` when the circle count is nonnegative.
    pub fn to_kauffman(&self) -> Option<KauffmanElement> {
        u64::try_from(self.circles).ok().map(|c| KauffmanElement::new(self.jones.clone(), c))
    }
}

impl fmt::Display for KauffmanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.jones, self.circles)
    }
}

impl fmt::Display for ExtKauffmanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.jones, self.circles)
    }
}

/// Product in `K_n` coordinates.
pub fn kmultiply(a: &KauffmanElement, b: &KauffmanElement) -> Result<KauffmanElement, KauffmanError> {
    let p = jones::jmultiply(&a.jones, &b.jones)?;
    Ok(KauffmanElement::new(p.result, a.circles + b.circles + p.removed))
}

/// Product in `K̂_n` coordinates.
pub fn ext_kmultiply(a: &ExtKauffmanElement, b: &ExtKauffmanElement) -> Result<ExtKauffmanElement, KauffmanError> {
    let p = jones::jmultiply(&a.jones, &b.jones)?;
    Ok(ExtKauffmanElement::new(p.result, a.circles + b.circles + p.removed as i64))
}

/// A generator of `K̂_n`: the circle `c`, its inverse `d`, or a hook `h_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    C,
    D,
    Hook(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::C => f.write_str("c"),
            Generator::D => f.write_str("d"),
            Generator::Hook(i) => write!(f, "h{i}"),
        }
    }
}

impl Generator {
    pub fn element(self, n: usize) -> Result<ExtKauffmanElement, KauffmanError> {
        match self {
            Generator::C => Ok(ExtKauffmanElement::new(JonesElement::identity(n)?, 1)),
            Generator::D => Ok(ExtKauffmanElement::new(JonesElement::identity(n)?, -1)),
            Generator::Hook(i) => Ok(ExtKauffmanElement::new(JonesElement::hook(n, i)?, 0)),
        }
    }
}

/// Looks up `c`, `d` or `h<i>` as an element of `K̂_n`.
pub fn generator(n: usize, name: &str) -> Result<ExtKauffmanElement, KauffmanError> {
    let g = match name {
        "c" => Generator::C,
        "d" => Generator::D,
        _ => match name.strip_prefix('h').and_then(|i| i.parse::<usize>().ok()) {
            Some(i) => Generator::Hook(i),
            None => return Err(KauffmanError::UnknownGenerator(name.to_string())),
        },
    };
    g.element(n).map_err(|e| match e {
        KauffmanError::Jones(JonesError::Diagram(DiagramError::IndexOutOfRange { .. })) => {
            KauffmanError::UnknownGenerator(name.to_string())
        }
        other => other,
    })
}

/// Value of a generator word in `K̂_n`; the empty word is the identity.
pub fn evaluate_generators(n: usize, word: &[Generator]) -> Result<ExtKauffmanElement, KauffmanError> {
    let mut acc = ExtKauffmanElement::identity(n)?;
    for g in word {
        acc = ext_kmultiply(&acc, &g.element(n)?)?;
    }
    Ok(acc)
}

/// Value of `w` under the substitution `phi`, folding left to right.
pub fn evaluate(w: &Word, phi: &GeneratorAssignment) -> Result<ExtKauffmanElement, KauffmanError> {
    let mut letters = w.letters().iter();
    let first = letters.next().expect("words are nonempty");
    let mut acc = phi.get(first).ok_or(KauffmanError::UnassignedLetter(*first))?.clone();
    for l in letters {
        let v = phi.get(l).ok_or(KauffmanError::UnassignedLetter(*l))?;
        acc = ext_kmultiply(&acc, v)?;
    }
    Ok(acc)
}

/// The circle-aware cutting map on the two-t-wire layer of `K̂_4`: cut the
/// Jones part and spend one circle; diagrams without t-wires are fixed.
pub fn cut_k(x: &ExtKauffmanElement) -> Result<ExtKauffmanElement, KauffmanError> {
    if x.rank() != 4 {
        return Err(KauffmanError::UnsupportedRank(x.rank()));
    }
    match x.t_wire_count() {
        0 => Ok(x.clone()),
        2 => Ok(ExtKauffmanElement::new(jones::cut_j(&x.jones)?, x.circles - 1)),
        k => Err(JonesError::TooManyTWires(k).into()),
    }
}

/// Sends a word over `c, h1, h2` (an element of `K_3`) to the same word
/// evaluated in `K_4`.
pub fn embed_k3_in_k4(word: &[Generator]) -> Result<KauffmanElement, KauffmanError> {
    if let Some(&g) = word.iter().find(|g| !matches!(g, Generator::C | Generator::Hook(1) | Generator::Hook(2))) {
        return Err(KauffmanError::NotK3Generator(g));
    }
    let v = evaluate_generators(4, word)?;
    Ok(v.to_kauffman().expect("no d in the word"))
}

/// The two sides of `x²yx = xyx²` under `x ↦ h1h2h3`, `y ↦ h4` in `K_5`.
pub fn k5_counterexample() -> Result<(ExtKauffmanElement, ExtKauffmanElement), KauffmanError> {
    let (x, y) = (Letter::new("x"), Letter::new("y"));
    let phi: GeneratorAssignment = [
        (x, evaluate_generators(5, &[Generator::Hook(1), Generator::Hook(2), Generator::Hook(3)])?),
        (y, generator(5, "h4")?),
    ]
    .into_iter()
    .collect();
    let lhs = Word::new(vec![x, x, y, x]).expect("nonempty");
    let rhs = Word::new(vec![x, y, x, x]).expect("nonempty");
    Ok((evaluate(&lhs, &phi)?, evaluate(&rhs, &phi)?))
}
