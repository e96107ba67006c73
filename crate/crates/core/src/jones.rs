//! Jones monoids `J_n`: circle-free planar diagrams, multiplied by gluing and
//! then erasing the circles that form.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::diagram::{self, DiagramError, Point, WireDiagram, WireKind};

/// Largest rank accepted by [`enumerate_jones`].
pub const MAX_ENUMERATION_RANK: usize = 8;
/// Largest rank for which [`JonesMonoid`] builds a full multiplication table.
pub const MAX_TABLE_RANK: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JonesError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram is not a Jones element: {0}")]
    NotJones(&'static str),
    #[error("cutting needs at most two t-wires, diagram has {0}")]
    TooManyTWires(usize),
    #[error("cutting needs an even rank of at least 4, got {0}")]
    OddRank(usize),
    #[error("rank {0} exceeds the enumeration bound")]
    BoundExceeded(usize),
    #[error("unknown J4 element name {0:?}")]
    UnknownName(String),
}

/// A planar diagram without circles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JonesElement(WireDiagram);

/// Result of a Jones product: the erased diagram and how many circles were erased.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JonesProduct {
    pub result: JonesElement,
    pub removed: u64,
}

impl JonesElement {
    pub fn from_diagram(d: WireDiagram) -> Result<JonesElement, JonesError> {
        if d.circles() != 0 {
            return Err(JonesError::NotJones("has circles"));
        }
        if !d.is_planar() {
            return Err(JonesError::NotJones("wires cross"));
        }
        Ok(JonesElement(d))
    }

    /// Forgets the circles of a planar diagram.
    pub fn erase(d: &WireDiagram) -> Result<JonesElement, JonesError> {
        JonesElement::from_diagram(d.with_circles(0))
    }

    pub fn identity(n: usize) -> Result<JonesElement, JonesError> {
        Ok(JonesElement(diagram::identity_diagram(n)?))
    }

    pub fn hook(n: usize, i: usize) -> Result<JonesElement, JonesError> {
        Ok(JonesElement(diagram::hook(n, i)?))
    }

    /// Product of the hooks `h_{i_1} h_{i_2} …` (the identity for an empty list).
    pub fn from_hooks(n: usize, hooks: &[usize]) -> Result<JonesElement, JonesError> {
        let mut acc = JonesElement::identity(n)?;
        for &i in hooks {
            acc = jmultiply(&acc, &JonesElement::hook(n, i)?)?.result;
        }
        Ok(acc)
    }

    pub fn diagram(&self) -> &WireDiagram {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn t_wire_count(&self) -> usize {
        self.0.t_wire_count()
    }

    pub fn is_identity(&self) -> bool {
        self.t_wire_count() == self.rank()
    }

    pub fn l_wires(&self) -> Vec<(usize, usize)> {
        self.0.wires_of_kind(WireKind::LWire).into_iter().map(|(a, b)| (a.index, b.index)).collect()
    }

    pub fn r_wires(&self) -> Vec<(usize, usize)> {
        self.0.wires_of_kind(WireKind::RWire).into_iter().map(|(a, b)| (a.index, b.index)).collect()
    }

    pub fn t_wires(&self) -> Vec<(usize, usize)> {
        self.0.wires_of_kind(WireKind::TWire).into_iter().map(|(a, b)| (a.index, b.index)).collect()
    }
}

impl fmt::Debug for JonesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for JonesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn jmultiply(a: &JonesElement, b: &JonesElement) -> Result<JonesProduct, JonesError> {
    let glued = diagram::multiply(&a.0, &b.0)?;
    let removed = glued.circles();
    Ok(JonesProduct { result: JonesElement(glued.with_circles(0)), removed })
}

/// All elements of `J_n`, as the closure of the identity under right
/// multiplication by the hooks, in breadth-first order.
pub fn enumerate_jones(n: usize) -> Result<Vec<JonesElement>, JonesError> {
    Ok(closure(n)?.0)
}

type Closure = (Vec<JonesElement>, Vec<Vec<usize>>);

fn closure(n: usize) -> Result<Closure, JonesError> {
    if n > MAX_ENUMERATION_RANK {
        return Err(JonesError::BoundExceeded(n));
    }
    let id = JonesElement::identity(n)?;
    let hooks: Vec<JonesElement> = (1..n).map(|i| JonesElement::hook(n, i)).collect::<Result<_, _>>()?;
    let mut seen: HashMap<JonesElement, usize> = HashMap::new();
    let mut elements = vec![id.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (i, h) in hooks.iter().enumerate() {
            let next = jmultiply(&elements[k], h)?.result;
            if !seen.contains_key(&next) {
                let mut word = words[k].clone();
                word.push(i + 1);
                seen.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(word);
            }
        }
    }
    Ok((elements, words))
}

/// Replaces the two t-wires of `x` by an l-wire joining their left points and
/// an r-wire joining their right points; fixes diagrams without t-wires.
pub fn cut_j(x: &JonesElement) -> Result<JonesElement, JonesError> {
    let n = x.rank();
    if n % 2 == 1 || n < 4 {
        return Err(JonesError::OddRank(n));
    }
    match x.t_wire_count() {
        0 => Ok(x.clone()),
        2 => {
            let t = x.t_wires();
            let mut pairs: Vec<(Point, Point)> = x
                .0
                .wires()
                .into_iter()
                .filter(|&(a, b)| a.side == b.side)
                .collect();
            pairs.push((Point::left(t[0].0), Point::left(t[1].0)));
            pairs.push((Point::right(t[0].1), Point::right(t[1].1)));
            JonesElement::from_diagram(diagram::make_diagram(n, &pairs, 0)?)
        }
        k => Err(JonesError::TooManyTWires(k)),
    }
}

/// `g` matches `d` when every r-wire `{i', j'}` of `g` has `{i, j}` as an
/// l-wire of `d`. Not symmetric.
pub fn matches(g: &JonesElement, d: &JonesElement) -> Result<bool, JonesError> {
    if g.rank() != d.rank() {
        return Err(DiagramError::RankMismatch(g.rank(), d.rank()).into());
    }
    let l = d.l_wires();
    Ok(g.r_wires().iter().all(|w| l.contains(w)))
}

/// `J_n` with a precomputed multiplication table over element indices.
#[derive(Clone, Debug)]
pub struct JonesMonoid {
    rank: usize,
    elements: Vec<JonesElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<JonesElement, usize>,
    /// `table[a * len + b] = (index of ab, circles removed)`.
    table: Vec<(u32, u32)>,
}

impl JonesMonoid {
    pub fn new(n: usize) -> Result<JonesMonoid, JonesError> {
        if n > MAX_TABLE_RANK {
            return Err(JonesError::BoundExceeded(n));
        }
        let (elements, words) = closure(n)?;
        let index: HashMap<JonesElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let len = elements.len();
        let mut table = Vec::with_capacity(len * len);
        for a in &elements {
            for b in &elements {
                let p = jmultiply(a, b)?;
                table.push((index[&p.result] as u32, p.removed as u32));
            }
        }
        Ok(JonesMonoid { rank: n, elements, words, index, table })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[JonesElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &JonesElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &JonesElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Index of the identity element (always 0).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn hook_index(&self, i: usize) -> usize {
        self.index[&JonesElement::hook(self.rank, i).expect("hook in range")]
    }

    /// A shortest hook word for element `i`, as hook indices.
    pub fn hook_word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Element label: the J4 figure name when rank is 4, otherwise a shortest hook word.
    pub fn label(&self, i: usize) -> String {
        if self.rank == 4 {
            if let Some(name) = j4_label(&self.elements[i]) {
                return name.to_string();
            }
        }
        hook_word_label(&self.words[i])
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> (usize, u64) {
        let (p, r) = self.table[a * self.elements.len() + b];
        (p as usize, r as u64)
    }
}

pub(crate) fn hook_word_label(word: &[usize]) -> String {
    if word.is_empty() {
        "id".to_string()
    } else {
        word.iter().map(|i| format!("h{i}")).collect()
    }
}

/// The 3×3 block of two-t-wire diagrams of `J_4`, row by row. Row `i` holds
/// the diagrams with l-wire `{4-i, 5-i}` (top row `{3,4}`), column `j`
/// those with r-wire `{(4-j)', (5-j)'}`.
pub const J4_UPPER_MATRIX: [[&str; 3]; 3] = [
    ["h3", "h3h2", "h3h2h1"],
    ["h2h3", "h2", "h2h1"],
    ["h1h2h3", "h1h2", "h1"],
];

/// The 2×2 block of t-wire-free diagrams of `J_4`. Row 1 has l-wires
/// `{1,2},{3,4}`, row 2 has `{1,4},{2,3}`; columns likewise for r-wires.
pub const J4_LOWER_MATRIX: [[&str; 2]; 2] = [["h1h3", "h1h3h2"], ["h2h1h3", "h2h1h3h2"]];

/// Names of all 14 elements of `J_4`.
pub fn j4_names() -> Vec<&'static str> {
    let mut names = vec!["id"];
    names.extend(J4_UPPER_MATRIX.iter().flatten());
    names.extend(J4_LOWER_MATRIX.iter().flatten());
    names
}

fn parse_hook_label(label: &str) -> Option<Vec<usize>> {
    if label == "id" {
        return Some(vec![]);
    }
    let mut out = Vec::new();
    for part in label.split('h').skip(1) {
        out.push(part.parse().ok()?);
    }
    if !label.starts_with('h') || out.is_empty() {
        return None;
    }
    Some(out)
}

/// Looks up a `J_4` element by its figure label, e.g. `"h2h1h3h2"` or `"id"`.
pub fn j4_named(label: &str) -> Result<JonesElement, JonesError> {
    if !j4_names().contains(&label) {
        return Err(JonesError::UnknownName(label.to_string()));
    }
    let hooks = parse_hook_label(label).ok_or_else(|| JonesError::UnknownName(label.to_string()))?;
    JonesElement::from_hooks(4, &hooks)
}

pub fn j4_label(x: &JonesElement) -> Option<&'static str> {
    if x.rank() != 4 {
        return None;
    }
    j4_names()
        .into_iter()
        .find(|name| j4_named(name).map(|e| &e == x).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn j(label: &str) -> JonesElement {
        j4_named(label).unwrap()
    }

    fn lit(pairs: &[(&str, &str)]) -> JonesElement {
        let pt = |s: &str| match s.strip_suffix('\'') {
            Some(i) => Point::right(i.parse().unwrap()),
            None => Point::left(s.parse().unwrap()),
        };
        let pairs: Vec<_> = pairs.iter().map(|&(a, b)| (pt(a), pt(b))).collect();
        JonesElement::from_diagram(diagram::make_diagram(4, &pairs, 0).unwrap()).unwrap()
    }

    fn nonidentity_j4() -> Vec<JonesElement> {
        j4_names().into_iter().skip(1).map(j).collect()
    }

    #[test]
    fn figure4_reconstruction() {
        let drawn = [
            ("h3", lit(&[("1", "1'"), ("2", "2'"), ("3", "4"), ("3'", "4'")])),
            ("h3h2", lit(&[("1", "1'"), ("2", "4'"), ("3", "4"), ("2'", "3'")])),
            ("h3h2h1", lit(&[("1", "3'"), ("2", "4'"), ("3", "4"), ("1'", "2'")])),
            ("h2h3", lit(&[("1", "1'"), ("2", "3"), ("4", "2'"), ("3'", "4'")])),
            ("h2", lit(&[("1", "1'"), ("2", "3"), ("2'", "3'"), ("4", "4'")])),
            ("h2h1", lit(&[("1", "3'"), ("2", "3"), ("4", "4'"), ("1'", "2'")])),
            ("h1h2h3", lit(&[("1", "2"), ("3", "1'"), ("4", "2'"), ("3'", "4'")])),
            ("h1h2", lit(&[("1", "2"), ("3", "1'"), ("4", "4'"), ("2'", "3'")])),
            ("h1", lit(&[("1", "2"), ("1'", "2'"), ("3", "3'"), ("4", "4'")])),
            ("h1h3", lit(&[("1", "2"), ("3", "4"), ("1'", "2'"), ("3'", "4'")])),
            ("h1h3h2", lit(&[("1", "2"), ("3", "4"), ("1'", "4'"), ("2'", "3'")])),
            ("h2h1h3", lit(&[("1", "4"), ("2", "3"), ("1'", "2'"), ("3'", "4'")])),
            ("h2h1h3h2", lit(&[("1", "4"), ("2", "3"), ("1'", "4'"), ("2'", "3'")])),
        ];
        for (name, d) in drawn {
            assert_eq!(j(name), d, "{name}");
        }
    }

    #[test]
    fn j4_layers() {
        let all = enumerate_jones(4).unwrap();
        assert_eq!(all.len(), 14);
        let count = |k| all.iter().filter(|e| e.t_wire_count() == k).count();
        assert_eq!((count(4), count(2), count(0)), (1, 9, 4));
        for name in J4_UPPER_MATRIX.iter().flatten() {
            assert_eq!(j(name).t_wire_count(), 2);
        }
        for name in J4_LOWER_MATRIX.iter().flatten() {
            assert_eq!(j(name).t_wire_count(), 0);
        }
        assert!(j4_named("h4").is_err());
    }

    #[test]
    fn jmultiply_examples() {
        let p = jmultiply(&j("h1"), &j("h1")).unwrap();
        assert_eq!(p, JonesProduct { result: j("h1"), removed: 1 });
        let p = jmultiply(&j("h1"), &j("h2")).unwrap();
        assert_eq!(p, JonesProduct { result: j("h1h2"), removed: 0 });
        let p = jmultiply(&j("id"), &j("h2h1h3")).unwrap();
        assert_eq!(p, JonesProduct { result: j("h2h1h3"), removed: 0 });
    }

    #[test]
    fn catalan_counts() {
        let expected = [2, 5, 14, 42, 132, 429];
        for (n, &c) in (2..=7).zip(expected.iter()) {
            assert_eq!(enumerate_jones(n).unwrap().len(), c, "n={n}");
        }
        assert_eq!(enumerate_jones(9), Err(JonesError::BoundExceeded(9)));
    }

    #[test]
    fn cutting_examples() {
        for corner in ["h3", "h3h2h1", "h1h2h3", "h1"] {
            assert_eq!(cut_j(&j(corner)).unwrap(), j("h1h3"), "{corner}");
        }
        for side in ["h2h3", "h2h1"] {
            assert_eq!(cut_j(&j(side)).unwrap(), j("h2h1h3"), "{side}");
        }
        for side in ["h3h2", "h1h2"] {
            assert_eq!(cut_j(&j(side)).unwrap(), j("h1h3h2"), "{side}");
        }
        assert_eq!(cut_j(&j("h2")).unwrap(), j("h2h1h3h2"));
        for name in J4_LOWER_MATRIX.iter().flatten() {
            assert_eq!(cut_j(&j(name)).unwrap(), j(name));
        }
        assert_eq!(cut_j(&j("id")), Err(JonesError::TooManyTWires(4)));
        assert_eq!(cut_j(&JonesElement::hook(5, 1).unwrap()), Err(JonesError::OddRank(5)));
    }

    #[test]
    fn cutting_is_endomorphism_on_j4_flat() {
        let flat = nonidentity_j4();
        assert_eq!(flat.len(), 13);
        for x in &flat {
            for y in &flat {
                let xy = jmultiply(x, y).unwrap().result;
                let lhs = cut_j(&xy).unwrap();
                let rhs = jmultiply(&cut_j(x).unwrap(), &cut_j(y).unwrap()).unwrap().result;
                assert_eq!(lhs, rhs, "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn matches_examples() {
        assert!(matches(&j("h1"), &j("h1h2")).unwrap());
        assert!(matches(&j("h1"), &j("h1h3")).unwrap());
        assert!(!matches(&j("h1"), &j("h3")).unwrap());
        assert!(matches(&cut_j(&j("h1")).unwrap(), &cut_j(&j("h3")).unwrap()).unwrap());
        assert!(!matches(&j("h1"), &j("h2")).unwrap());
        assert!(!matches(&cut_j(&j("h1")).unwrap(), &cut_j(&j("h2")).unwrap()).unwrap());
        assert!(matches(&j("h1"), &JonesElement::hook(5, 1).unwrap()).is_err());
    }

    #[test]
    fn hooks_idempotent() {
        for n in 2..=7 {
            for i in 1..n {
                let h = JonesElement::hook(n, i).unwrap();
                assert_eq!(jmultiply(&h, &h).unwrap().result, h);
            }
        }
    }

    #[test]
    fn x_squared_is_x_in_j3_but_not_j4() {
        let j3 = enumerate_jones(3).unwrap();
        assert_eq!(j3.len(), 5);
        assert!(j3.iter().all(|x| &jmultiply(x, x).unwrap().result == x));
        let j4 = enumerate_jones(4).unwrap();
        assert!(j4.iter().any(|x| &jmultiply(x, x).unwrap().result != x));
    }

    #[test]
    fn table_agrees_with_direct_products() {
        let m = JonesMonoid::new(4).unwrap();
        assert_eq!(m.len(), 14);
        for a in 0..m.len() {
            for b in 0..m.len() {
                let p = jmultiply(m.element(a), m.element(b)).unwrap();
                assert_eq!(m.mul(a, b), (m.index_of(&p.result).unwrap(), p.removed));
            }
        }
        assert_eq!(m.label(m.hook_index(2)), "h2");
        assert!(m.element(m.identity()).is_identity());
    }

    fn j6_flat_element() -> impl Strategy<Value = JonesElement> {
        proptest::collection::vec(1usize..6, 2..10)
            .prop_map(|w| JonesElement::from_hooks(6, &w).unwrap())
            .prop_filter("at most two t-wires", |e| e.t_wire_count() <= 2)
    }

    proptest! {
        #[test]
        fn cutting_is_endomorphism_on_j6_flat(x in j6_flat_element(), y in j6_flat_element()) {
            let xy = jmultiply(&x, &y).unwrap().result;
            let lhs = cut_j(&xy).unwrap();
            let rhs = jmultiply(&cut_j(&x).unwrap(), &cut_j(&y).unwrap()).unwrap().result;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
