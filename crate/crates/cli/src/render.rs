//! Schematic drawings of wire diagrams.
//!
//! Left points run down the left edge and right points down the right edge.
//! l-wires are arcs hugging the left edge, r-wires arcs hugging the right
//! edge, t-wires cross the middle; each t-wire that changes height gets its
//! own vertical lane. Circles are listed beside the drawing.

use std::fmt::Write as _;

use kauffman::diagram::{Side, WireDiagram, WireKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

struct Layout {
    n: usize,
    /// `(top, bottom, depth)` per l-wire; depth starts at 1.
    left: Vec<(usize, usize, usize)>,
    right: Vec<(usize, usize, usize)>,
    /// `(from, to, lane)`; lane is `None` for level t-wires.
    through: Vec<(usize, usize, Option<usize>)>,
    circles: u64,
}

/// Depths for arcs over `1..=n`: an arc sits outside every arc it contains
/// and never shares a depth with an arc it overlaps.
fn arc_depths(mut arcs: Vec<(usize, usize)>) -> Vec<(usize, usize, usize)> {
    arcs.sort_by_key(|&(a, b)| (b - a, a));
    let mut placed: Vec<(usize, usize, usize)> = Vec::new();
    for (a, b) in arcs {
        let inner = placed.iter().filter(|p| a < p.0 && p.1 < b).map(|p| p.2).max().unwrap_or(0);
        let mut d = inner + 1;
        while placed.iter().any(|p| p.2 == d && p.0 <= b && a <= p.1) {
            d += 1;
        }
        placed.push((a, b, d));
    }
    placed.sort();
    placed
}

fn layout(d: &WireDiagram) -> Layout {
    let ends = |kind| -> Vec<(usize, usize)> {
        d.wires_of_kind(kind)
            .into_iter()
            .map(|(p, q)| (p.index.min(q.index), p.index.max(q.index)))
            .collect()
    };
    let mut lane = 0;
    let through = d
        .wires_of_kind(WireKind::TWire)
        .into_iter()
        .map(|(p, q)| {
            let (from, to) = if p.side == Side::Left { (p.index, q.index) } else { (q.index, p.index) };
            let l = (from != to).then(|| {
                lane += 1;
                lane - 1
            });
            (from, to, l)
        })
        .collect();
    Layout {
        n: d.rank(),
        left: arc_depths(ends(WireKind::LWire)),
        right: arc_depths(ends(WireKind::RWire)),
        through,
        circles: d.circles(),
    }
}

struct Grid {
    cells: Vec<Vec<char>>,
}

impl Grid {
    fn put(&mut self, row: usize, col: usize, c: char) {
        let cell = &mut self.cells[row][col];
        *cell = match (*cell, c) {
            (' ', c) => c,
            (old, new) if old == new => new,
            _ => '+',
        };
    }

    fn hline(&mut self, row: usize, from: usize, to: usize) {
        for col in from.min(to)..=from.max(to) {
            self.put(row, col, '-');
        }
    }

    fn vline(&mut self, col: usize, from: usize, to: usize) {
        for row in from.min(to) + 1..from.max(to) {
            self.put(row, col, '|');
        }
    }
}

fn circle_summary(circles: u64) -> String {
    let shown = circles.min(8) as usize;
    let mut s = format!("circles: {circles}");
    if shown > 0 {
        s.push(' ');
        s.push_str(&vec!["O"; shown].join(" "));
    }
    if circles > 8 {
        s.push_str(" ...");
    }
    s
}

pub fn render_ascii(d: &WireDiagram) -> String {
    let lay = layout(d);
    let dl = lay.left.iter().map(|a| a.2).max().unwrap_or(0);
    let dr = lay.right.iter().map(|a| a.2).max().unwrap_or(0);
    let lanes = lay.through.iter().filter(|t| t.2.is_some()).count();
    let left_width = 2 * dl + 1;
    let mid_width = 2 * lanes + 3;
    let width = left_width + mid_width + 2 * dr + 1;
    let last = width - 1;
    let rows = 2 * lay.n - 1;
    let row = |i: usize| 2 * (i - 1);
    let mut g = Grid { cells: vec![vec![' '; width]; rows] };

    for &(a, b, depth) in &lay.left {
        let col = 2 * depth;
        g.hline(row(a), 1, col - 1);
        g.hline(row(b), 1, col - 1);
        g.put(row(a), col, '.');
        g.put(row(b), col, '\'');
        g.vline(col, row(a), row(b));
    }
    for &(a, b, depth) in &lay.right {
        let col = last - 2 * depth;
        g.hline(row(a), col + 1, last - 1);
        g.hline(row(b), col + 1, last - 1);
        g.put(row(a), col, '.');
        g.put(row(b), col, '\'');
        g.vline(col, row(a), row(b));
    }
    for &(from, to, lane) in &lay.through {
        match lane {
            None => g.hline(row(from), 1, last - 1),
            Some(k) => {
                let col = left_width + 2 * k + 2;
                g.hline(row(from), 1, col - 1);
                g.hline(row(to), col + 1, last - 1);
                let (top, bottom) = if from < to { ('.', '\'') } else { ('\'', '.') };
                g.put(row(from), col, top);
                g.put(row(to), col, bottom);
                g.vline(col, row(from), row(to));
            }
        }
    }
    for i in 1..=lay.n {
        g.put(row(i), 0, 'o');
        g.put(row(i), last, 'o');
    }

    let label = lay.n.to_string().len();
    let mut out = format!("n: {}  {}\n", lay.n, circle_summary(lay.circles));
    for (r, cells) in g.cells.iter().enumerate() {
        let body: String = cells.iter().collect();
        let line = if r % 2 == 0 {
            let i = r / 2 + 1;
            format!("{i:>label$} {body} {i}'")
        } else {
            format!("{:label$} {body}", "")
        };
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn render_svg(d: &WireDiagram) -> String {
    let lay = layout(d);
    let dl = lay.left.iter().map(|a| a.2).max().unwrap_or(0);
    let dr = lay.right.iter().map(|a| a.2).max().unwrap_or(0);
    let lanes = lay.through.iter().filter(|t| t.2.is_some()).count();
    const STEP: usize = 40;
    const ARC: usize = 24;
    const MARGIN: usize = 30;
    let xl = MARGIN;
    let mid = STEP * (lanes + 2);
    let xr = xl + ARC * dl + mid + ARC * dr;
    let y = |i: usize| MARGIN + STEP * (i - 1);
    let circle_row = y(lay.n) + STEP;
    let width = xr + MARGIN;
    let height = circle_row + if lay.circles > 0 { MARGIN } else { 0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(s, "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">");
    for &(a, b, depth) in &lay.left {
        let bulge = xl + ARC * depth;
        let _ = writeln!(s, "<path d=\"M {xl} {} C {bulge} {}, {bulge} {}, {xl} {}\"/>", y(a), y(a), y(b), y(b));
    }
    for &(a, b, depth) in &lay.right {
        let bulge = xr - ARC * depth;
        let _ = writeln!(s, "<path d=\"M {xr} {} C {bulge} {}, {bulge} {}, {xr} {}\"/>", y(a), y(a), y(b), y(b));
    }
    for &(from, to, _) in &lay.through {
        if from == to {
            let _ = writeln!(s, "<line x1=\"{xl}\" y1=\"{}\" x2=\"{xr}\" y2=\"{}\"/>", y(from), y(to));
        } else {
            let c1 = xl + (xr - xl) / 3;
            let c2 = xr - (xr - xl) / 3;
            let _ = writeln!(s, "<path d=\"M {xl} {} C {c1} {}, {c2} {}, {xr} {}\"/>", y(from), y(from), y(to), y(to));
        }
    }
    for k in 0..lay.circles.min(64) as usize {
        let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{circle_row}\" r=\"8\"/>", xl + 10 + 24 * k);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g fill=\"black\">");
    for i in 1..=lay.n {
        let _ = writeln!(s, "<circle cx=\"{xl}\" cy=\"{}\" r=\"4\"/>", y(i));
        let _ = writeln!(s, "<circle cx=\"{xr}\" cy=\"{}\" r=\"4\"/>", y(i));
    }
    let _ = writeln!(s, "</g>");
    if lay.circles > 64 {
        let _ = writeln!(s, "<text x=\"{xl}\" y=\"{}\">{} circles</text>", circle_row + 20, lay.circles);
    }
    s.push_str("</svg>\n");
    s
}

pub fn render(d: &WireDiagram, format: Format) -> String {
    match format {
        Format::Ascii => render_ascii(d),
        Format::Svg => render_svg(d),
    }
}
