//! Wire diagrams: perfect matchings on `2n` boundary points together with a
//! number of floating circles, multiplied by gluing.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("rank must be at least 2, got {0}")]
    BadRank(usize),
    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("hook index {index} out of range for rank {rank}")]
    IndexOutOfRange { rank: usize, index: usize },
    #[error("{0} is not a wire of the diagram")]
    NotAWire(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A boundary point; `index` is 1-based. `Right` points are the primed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub side: Side,
    pub index: usize,
}

impl Point {
    pub fn left(index: usize) -> Point {
        Point { side: Side::Left, index }
    }

    pub fn right(index: usize) -> Point {
        Point { side: Side::Right, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "{}", self.index),
            Side::Right => write!(f, "{}'", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireKind {
    LWire,
    RWire,
    TWire,
}

/// An element of the wire monoid `W_n`.
///
/// The matching is stored as a partner table over slots `0..2n`: slot `i - 1`
/// is the left point `i`, slot `n + i - 1` the right point `i'`. The table is
/// a canonical form, so derived equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WireDiagram {
    rank: usize,
    partner: Vec<u32>,
    circles: u64,
}

impl WireDiagram {
    pub fn new(rank: usize, pairs: &[(Point, Point)], circles: u64) -> Result<WireDiagram, DiagramError> {
        make_diagram(rank, pairs, circles)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn circles(&self) -> u64 {
        self.circles
    }

    pub fn with_circles(&self, circles: u64) -> WireDiagram {
        WireDiagram { circles, ..self.clone() }
    }

    fn slot(&self, p: Point) -> Option<usize> {
        if p.index == 0 || p.index > self.rank {
            return None;
        }
        Some(match p.side {
            Side::Left => p.index - 1,
            Side::Right => self.rank + p.index - 1,
        })
    }

    fn point(&self, slot: usize) -> Point {
        if slot < self.rank {
            Point::left(slot + 1)
        } else {
            Point::right(slot - self.rank + 1)
        }
    }

    /// The point joined to `p`, if `p` is a valid point of this rank.
    pub fn partner_of(&self, p: Point) -> Option<Point> {
        self.slot(p).map(|s| self.point(self.partner[s] as usize))
    }

    /// All wires in canonical order: each pair ordered (left before right,
    /// ascending index), the list sorted.
    pub fn wires(&self) -> Vec<(Point, Point)> {
        (0..2 * self.rank)
            .filter(|&s| (self.partner[s] as usize) > s)
            .map(|s| (self.point(s), self.point(self.partner[s] as usize)))
            .collect()
    }

    pub fn wires_of_kind(&self, kind: WireKind) -> Vec<(Point, Point)> {
        self.wires().into_iter().filter(|&(a, b)| kind_of(a, b) == kind).collect()
    }

    pub fn classify_wire(&self, pair: (Point, Point)) -> Result<WireKind, DiagramError> {
        let (a, b) = pair;
        if self.partner_of(a) != Some(b) {
            return Err(DiagramError::NotAWire(format!("{{{a},{b}}}")));
        }
        Ok(kind_of(a, b))
    }

    pub fn t_wire_count(&self) -> usize {
        (0..self.rank).filter(|&s| self.partner[s] as usize >= self.rank).count()
    }

    /// Noncrossing test with the boundary read in the circular order
    /// `1, …, n, n', …, 1'`.
    pub fn is_planar(&self) -> bool {
        let n = self.rank;
        let position = |slot: usize| if slot < n { slot } else { 3 * n - 1 - slot };
        let mut at = vec![0usize; 2 * n];
        for s in 0..2 * n {
            at[position(s)] = s;
        }
        let mut open: Vec<usize> = Vec::new();
        for (pos, &slot) in at.iter().enumerate() {
            let other = position(self.partner[slot] as usize);
            if other > pos {
                open.push(pos);
            } else if open.pop() != Some(other) {
                return false;
            }
        }
        true
    }

    pub fn multiply(&self, other: &WireDiagram) -> Result<WireDiagram, DiagramError> {
        multiply(self, other)
    }
}

fn kind_of(a: Point, b: Point) -> WireKind {
    match (a.side, b.side) {
        (Side::Left, Side::Left) => WireKind::LWire,
        (Side::Right, Side::Right) => WireKind::RWire,
        _ => WireKind::TWire,
    }
}

pub fn make_diagram(rank: usize, pairs: &[(Point, Point)], circles: u64) -> Result<WireDiagram, DiagramError> {
    if rank < 2 {
        return Err(DiagramError::BadRank(rank));
    }
    let mut d = WireDiagram { rank, partner: vec![u32::MAX; 2 * rank], circles };
    for &(a, b) in pairs {
        let (sa, sb) = match (d.slot(a), d.slot(b)) {
            (Some(sa), Some(sb)) => (sa, sb),
            _ => {
                return Err(DiagramError::NotPerfectMatching(format!(
                    "pair {{{a},{b}}} has a point outside rank {rank}"
                )))
            }
        };
        if sa == sb {
            return Err(DiagramError::NotPerfectMatching(format!("point {a} paired with itself")));
        }
        for (s, p) in [(sa, a), (sb, b)] {
            if d.partner[s] != u32::MAX {
                return Err(DiagramError::NotPerfectMatching(format!("point {p} used twice")));
            }
        }
        d.partner[sa] = sb as u32;
        d.partner[sb] = sa as u32;
    }
    if let Some(s) = d.partner.iter().position(|&p| p == u32::MAX) {
        return Err(DiagramError::NotPerfectMatching(format!("point {} missing", d.point(s))));
    }
    Ok(d)
}

enum Cursor {
    /// At a slot of the left factor, about to follow its wire.
    First(usize),
    /// At a slot of the right factor, about to follow its wire.
    Second(usize),
}

/// Glues the right points of `a` to the left points of `b`.
///
/// Every maximal glued path between surviving boundary points becomes a wire
/// of the product; every closed cycle in the middle layer (alternating
/// r-wires of `a` and l-wires of `b`) becomes a new circle.
pub fn multiply(a: &WireDiagram, b: &WireDiagram) -> Result<WireDiagram, DiagramError> {
    if a.rank != b.rank {
        return Err(DiagramError::RankMismatch(a.rank, b.rank));
    }
    let n = a.rank;
    let (pa, pb) = (&a.partner, &b.partner);
    let mut partner = vec![u32::MAX; 2 * n];
    let mut middle_seen = vec![false; n];

    for start in 0..2 * n {
        if partner[start] != u32::MAX {
            continue;
        }
        let mut cursor = if start < n { Cursor::First(start) } else { Cursor::Second(start) };
        let end = loop {
            cursor = match cursor {
                Cursor::First(s) => {
                    let t = pa[s] as usize;
                    if t < n {
                        break t;
                    }
                    middle_seen[t - n] = true;
                    Cursor::Second(t - n)
                }
                Cursor::Second(s) => {
                    let t = pb[s] as usize;
                    if t >= n {
                        break t;
                    }
                    middle_seen[t] = true;
                    Cursor::First(n + t)
                }
            };
        };
        partner[start] = end as u32;
        partner[end] = start as u32;
    }

    let mut new_circles = 0u64;
    for m in 0..n {
        if middle_seen[m] {
            continue;
        }
        let mut cur = m;
        loop {
            middle_seen[cur] = true;
            let other = pb[cur] as usize;
            middle_seen[other] = true;
            cur = pa[n + other] as usize - n;
            if cur == m {
                break;
            }
        }
        new_circles += 1;
    }

    Ok(WireDiagram { rank: n, partner, circles: a.circles + b.circles + new_circles })
}

pub fn identity_diagram(n: usize) -> Result<WireDiagram, DiagramError> {
    if n < 2 {
        return Err(DiagramError::BadRank(n));
    }
    let partner = (0..2 * n).map(|s| ((s + n) % (2 * n)) as u32).collect();
    Ok(WireDiagram { rank: n, partner, circles: 0 })
}

/// The hook `h_i`: wires `{i, i+1}`, `{i', (i+1)'}` and `{j, j'}` elsewhere.
pub fn hook(n: usize, i: usize) -> Result<WireDiagram, DiagramError> {
    let mut d = identity_diagram(n)?;
    if i == 0 || i >= n {
        return Err(DiagramError::IndexOutOfRange { rank: n, index: i });
    }
    let (l, r) = (i - 1, n + i - 1);
    d.partner[l] = (l + 1) as u32;
    d.partner[l + 1] = l as u32;
    d.partner[r] = (r + 1) as u32;
    d.partner[r + 1] = r as u32;
    Ok(d)
}

/// The identity matching with one circle.
pub fn circle_gen(n: usize) -> Result<WireDiagram, DiagramError> {
    Ok(identity_diagram(n)?.with_circles(1))
}

impl fmt::Display for WireDiagram {
    /// Diagram literal, e.g. `{n: 2, pairs: [[1,2],["1'","2'"]], circles: 0}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_point = |p: Point| match p.side {
            Side::Left => p.index.to_string(),
            Side::Right => format!("\"{}'\"", p.index),
        };
        let pairs: Vec<String> = self
            .wires()
            .into_iter()
            .map(|(a, b)| format!("[{},{}]", fmt_point(a), fmt_point(b)))
            .collect();
        write!(f, "{{n: {}, pairs: [{}], circles: {}}}", self.rank, pairs.join(","), self.circles)
    }
}
