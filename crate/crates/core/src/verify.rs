//! Named verification suites, each producing a [`Report`].

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::diagram::{self, circle_gen, hook, Point, WireDiagram};
use crate::jones::{self, cut_j, enumerate_jones, jmultiply, matches, JonesElement, MAX_ENUMERATION_RANK};
use crate::kauffman::{self, cut_k, ext_kmultiply, ExtKauffmanElement, Generator};
use crate::rees;
use crate::report::Report;

/// Circle counts swept by the `K̂_4` suites.
pub const CIRCLE_RANGE: RangeInclusive<i64> = -3..=3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    CuttingJ4,
    CuttingK4,
    StructureJ4,
    StructureK4,
    K5Counterexample,
    Catalan,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::CuttingJ4,
        Suite::CuttingK4,
        Suite::StructureJ4,
        Suite::StructureK4,
        Suite::K5Counterexample,
        Suite::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::CuttingJ4 => "cutting-j4",
            Suite::CuttingK4 => "cutting-k4",
            Suite::StructureJ4 => "structure-j4",
            Suite::StructureK4 => "structure-k4",
            Suite::K5Counterexample => "k5-counterexample",
            Suite::Catalan => "catalan",
        }
    }

    /// `max` is the largest rank for `catalan` and `relations`; other suites ignore it.
    pub fn run(self, max: Option<usize>) -> Report {
        match self {
            Suite::Relations => verify_relations(max.unwrap_or(6)),
            Suite::CuttingJ4 => verify_cutting_j4(),
            Suite::CuttingK4 => verify_cutting_k4(CIRCLE_RANGE),
            Suite::StructureJ4 => rees::verify_structure_j4(),
            Suite::StructureK4 => rees::verify_structure_ext_k4(CIRCLE_RANGE),
            Suite::K5Counterexample => verify_k5_counterexample(),
            Suite::Catalan => verify_catalan(max.unwrap_or(7)),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

fn wmul(a: &WireDiagram, b: &WireDiagram) -> WireDiagram {
    diagram::multiply(a, b).expect("equal ranks")
}

fn kwords(n: usize, w: &[Generator]) -> ExtKauffmanElement {
    kauffman::evaluate_generators(n, w).expect("valid generators")
}

/// Relations (1)-(3) in `W_n` and in `K̂_n` coordinates, `cd = dc = 1` and
/// `dh_i = h_id` in `K̂_n`, for ranks `2..=max_n`.
pub fn verify_relations(max_n: usize) -> Report {
    let mut report = Report::new();
    let (mut far, mut near, mut square, mut units) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let (mut far_n, mut near_n, mut square_n, mut units_n) = (0, 0, 0, 0);
    let h = Generator::Hook;
    for n in 2..=max_n {
        let c = circle_gen(n).expect("rank");
        let kone = ExtKauffmanElement::identity(n).expect("rank");
        for (l, r) in [(vec![Generator::C, Generator::D], "cd"), (vec![Generator::D, Generator::C], "dc")] {
            units_n += 1;
            if kwords(n, &l) != kone {
                units.push(format!("n={n}: {r} != 1"));
            }
        }
        for i in 1..n {
            let hi = hook(n, i).expect("hook");
            square_n += 1;
            if wmul(&hi, &hi) != wmul(&c, &hi) || wmul(&c, &hi) != wmul(&hi, &c) {
                square.push(format!("n={n} W: h{i}^2, ch{i}, h{i}c differ"));
            }
            if kwords(n, &[h(i), h(i)]) != kwords(n, &[Generator::C, h(i)])
                || kwords(n, &[Generator::C, h(i)]) != kwords(n, &[h(i), Generator::C])
            {
                square.push(format!("n={n} K: h{i}^2, ch{i}, h{i}c differ"));
            }
            units_n += 1;
            if kwords(n, &[Generator::D, h(i)]) != kwords(n, &[h(i), Generator::D]) {
                units.push(format!("n={n}: dh{i} != h{i}d"));
            }
            for j in 1..n {
                let hj = hook(n, j).expect("hook");
                if i.abs_diff(j) >= 2 {
                    far_n += 1;
                    if wmul(&hi, &hj) != wmul(&hj, &hi) || kwords(n, &[h(i), h(j)]) != kwords(n, &[h(j), h(i)]) {
                        far.push(format!("n={n}: h{i}h{j} != h{j}h{i}"));
                    }
                }
                if i.abs_diff(j) == 1 {
                    near_n += 1;
                    if wmul(&wmul(&hi, &hj), &hi) != hi || kwords(n, &[h(i), h(j), h(i)]) != kwords(n, &[h(i)]) {
                        near.push(format!("n={n}: h{i}h{j}h{i} != h{i}"));
                    }
                }
            }
        }
    }
    report.push_violations("relation-far-hooks-commute", far_n, far);
    report.push_violations("relation-adjacent-hooks", near_n, near);
    report.push_violations("relation-hook-square", square_n, square);
    report.push_violations("relation-units", units_n, units);
    report
}

fn j4_flat() -> Vec<JonesElement> {
    enumerate_jones(4).expect("rank 4").into_iter().filter(|e| !e.is_identity()).collect()
}

fn label(x: &JonesElement) -> String {
    jones::j4_label(x).map_or_else(|| x.to_string(), str::to_string)
}

/// `cut_j` is multiplicative on all pairs of nonidentity elements of `J_4`.
pub fn verify_cutting_j4() -> Report {
    let flat = j4_flat();
    let mut violations = Vec::new();
    for x in &flat {
        for y in &flat {
            let lhs = cut_j(&jmultiply(x, y).expect("rank").result).expect("flat");
            let rhs = jmultiply(&cut_j(x).expect("flat"), &cut_j(y).expect("flat")).expect("rank").result;
            if lhs != rhs {
                violations.push(format!("{}·{}", label(x), label(y)));
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("cutting-j4-endomorphism", flat.len() * flat.len(), violations);
    report
}

/// `cut_k` is multiplicative on `J_4♭ × circles`, and the three-way case
/// split on pairs whose left factor has two t-wires holds with the expected
/// removed-circle counts.
pub fn verify_cutting_k4(circles: RangeInclusive<i64>) -> Report {
    let flat = j4_flat();
    let mut violations = Vec::new();
    let mut checked = 0;
    for a in &flat {
        for b in &flat {
            for s in circles.clone() {
                for t in circles.clone() {
                    checked += 1;
                    let x = ExtKauffmanElement::new(a.clone(), s);
                    let y = ExtKauffmanElement::new(b.clone(), t);
                    let lhs = cut_k(&ext_kmultiply(&x, &y).expect("rank")).expect("flat");
                    let rhs = ext_kmultiply(&cut_k(&x).expect("flat"), &cut_k(&y).expect("flat")).expect("rank");
                    if lhs != rhs {
                        violations.push(format!("{x}·{y}: {lhs} vs {rhs}"));
                    }
                }
            }
        }
    }
    let mut report = Report::new();
    report.push_violations("cutting-k4-endomorphism", checked, violations);

    let mut cases = Vec::new();
    let mut counts = [0usize; 3];
    let mut pairs = 0;
    for a in flat.iter().filter(|a| a.t_wire_count() == 2) {
        for b in &flat {
            pairs += 1;
            let (ca, cb) = (cut_j(a).expect("flat"), cut_j(b).expect("flat"));
            let direct = matches(a, b).expect("rank");
            let after_cut = matches(&ca, &cb).expect("rank");
            let (case, expected) = match (direct, after_cut) {
                (true, _) => (0, 2),
                (false, true) => (1, 2),
                (false, false) => (2, 1),
            };
            counts[case] += 1;
            let removed = jmultiply(&ca, &cb).expect("rank").removed;
            if removed != expected {
                cases.push(format!("case {} {}·{}: {removed} removed, expected {expected}", case + 1, label(a), label(b)));
            }
        }
    }
    report.push_violations("cutting-k4-case-split", pairs, cases);
    report.push(
        "cutting-k4-case-counts",
        counts.iter().all(|&c| c > 0) && counts.iter().sum::<usize>() == pairs,
        format!("cases 1/2/3: {}/{}/{}", counts[0], counts[1], counts[2]),
    );
    report
}

/// `x²yx` and `xyx²` differ under `x ↦ h1h2h3`, `y ↦ h4` in `K_5`, computed
/// both in coordinates and by raw diagram multiplication.
pub fn verify_k5_counterexample() -> Report {
    let mut report = Report::new();
    let (lhs, rhs) = kauffman::k5_counterexample().expect("rank 5");
    let h = |i| hook(5, i).expect("hook");
    let x = wmul(&wmul(&h(1), &h(2)), &h(3));
    let y = h(4);
    let chain = |ds: [&WireDiagram; 4]| ds[1..].iter().fold(ds[0].clone(), |acc, d| wmul(&acc, d));
    let (ld, rd) = (chain([&x, &x, &y, &x]), chain([&x, &y, &x, &x]));
    let agree = lhs.to_kauffman().map(|k| k.to_diagram()) == Some(ld.clone())
        && rhs.to_kauffman().map(|k| k.to_diagram()) == Some(rd.clone());
    report.push("k5-coordinates-match-diagrams", agree, format!("x^2yx = {ld}; xyx^2 = {rd}"));
    let mut parts = Vec::new();
    if lhs.jones != rhs.jones {
        let t = |d: &WireDiagram| d.partner_of(Point::left(5)).map_or("-".to_string(), |p| p.to_string());
        parts.push(format!("jones part (5 -> {} vs 5 -> {})", t(&ld), t(&rd)));
    }
    if lhs.circles != rhs.circles {
        parts.push(format!("circles ({} vs {})", lhs.circles, rhs.circles));
    }
    report.push("k5-sides-differ", !parts.is_empty(), format!("differ in {}", parts.join(" and ")));
    report
}

fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// `|J_n|` equals the `n`-th Catalan number for `n = 2..=max` (capped at the enumeration bound).
pub fn verify_catalan(max: usize) -> Report {
    let mut report = Report::new();
    if max > MAX_ENUMERATION_RANK {
        report.push("catalan-bound", false, format!("max {max} exceeds {MAX_ENUMERATION_RANK}"));
        return report;
    }
    for n in 2..=max {
        let got = enumerate_jones(n).expect("within bound").len() as u64;
        let want = catalan(n);
        report.push(format!("catalan-{n}"), got == want, format!("{got} elements, expected {want}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kauffman::generator;

    #[test]
    fn catalan_numbers() {
        let got: Vec<u64> = (2..=8).map(catalan).collect();
        assert_eq!(got, vec![2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn every_suite_passes() {
        for s in Suite::ALL {
            let r = s.run(None);
            assert!(r.passed(), "{s}:\n{r}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("cutting".parse::<Suite>().is_err());
    }

    #[test]
    fn cutting_reports_169() {
        let r = verify_cutting_j4();
        assert_eq!(r.lines[0].detail, "169 checked");
        let r = verify_cutting_k4(CIRCLE_RANGE);
        assert_eq!(r.line("cutting-k4-endomorphism").unwrap().detail, format!("{} checked", 169 * 49));
        assert_eq!(r.line("cutting-k4-case-split").unwrap().detail, "117 checked");
    }

    #[test]
    fn catalan_over_bound_fails() {
        assert!(!verify_catalan(9).passed());
    }

    #[test]
    fn generator_lookup_is_consistent() {
        assert_eq!(generator(4, "h2").unwrap(), kwords(4, &[Generator::Hook(2)]));
    }
}
