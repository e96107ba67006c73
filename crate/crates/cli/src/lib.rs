//! Command-line front end: identity checks, products, enumeration,
//! verification suites and diagram drawings.
//!
//! Exit codes: 0 holds or passes, 1 fails, 2 usage or parse error,
//! 3 inconclusive (search budget exhausted without a verdict).

pub mod render;
pub mod syntax;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use kauffman::diagram::{self, WireDiagram};
use kauffman::idcheck::{self, Falsifier, OracleError, Verdict, Witness};
use kauffman::jones::{self, JonesMonoid, MAX_TABLE_RANK};
use kauffman::kauffman::{evaluate_generators, ext_kmultiply, ExtKauffmanElement, Generator, KauffmanElement};
use kauffman::rees;
use kauffman::verify::Suite;
use kauffman::word::Identity;

use render::Format;
use syntax::Operand;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kauffman", version, about = "Diagram monoid arithmetic and identity checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or search for a counterexample to an identity.
    Check {
        /// K3, K4, J4, J3, Jn:<n>, Kn:<n> or RMS.
        #[arg(long, default_value = "K4")]
        monoid: String,
        /// Substitutions tried by brute-force and randomized searches.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
        identity: String,
    },
    /// Multiply diagram literals or generator words left to right.
    Multiply {
        #[arg(long)]
        rank: Option<usize>,
        #[arg(required = true)]
        operands: Vec<String>,
    },
    /// List the elements of the Jones monoid of rank N.
    Enumerate { n: usize },
    /// Run a verification suite.
    Verify {
        /// relations, cutting-j4, cutting-k4, structure-j4, structure-k4,
        /// k5-counterexample or catalan.
        suite: String,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Draw a diagram.
    Render {
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        operand: String,
    },
}

/// What `--monoid` selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Checker(usize),
    J4,
    JonesBrute(usize),
    Falsify(usize),
    Rms,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Target, String> {
        let rank = |r: &str| r.parse::<usize>().map_err(|_| format!("bad rank in monoid {s:?}"));
        match s {
            "K3" => Ok(Target::Checker(3)),
            "K4" => Ok(Target::Checker(4)),
            "J4" => Ok(Target::J4),
            "J3" => Ok(Target::JonesBrute(3)),
            "RMS" => Ok(Target::Rms),
            _ => {
                if let Some(r) = s.strip_prefix("Jn:") {
                    match rank(r)? {
                        n @ 1..=MAX_TABLE_RANK => Ok(Target::JonesBrute(n)),
                        n => Err(format!("Jn:{n} needs a rank in 1..={MAX_TABLE_RANK}")),
                    }
                } else if let Some(r) = s.strip_prefix("Kn:") {
                    match rank(r)? {
                        n @ (3 | 4) => Ok(Target::Checker(n)),
                        n if n >= 2 => Ok(Target::Falsify(n)),
                        n => Err(format!("Kn:{n} needs a rank of at least 2")),
                    }
                } else {
                    Err(format!("unknown monoid {s:?}; expected K3, K4, J4, J3, Jn:<n>, Kn:<n> or RMS"))
                }
            }
        }
    }
}

enum Outcome {
    Verdict(Verdict),
    Inconclusive(String),
}

fn check(target: Target, id: &Identity, budget: u64, seed: u64) -> Result<Outcome, String> {
    Ok(match target {
        Target::Checker(n) => Outcome::Verdict(idcheck::check_k3_k4(id).with_monoid(&format!("K{n}"))),
        Target::J4 => Outcome::Verdict(idcheck::check_j4(id)),
        Target::JonesBrute(n) => {
            let m = JonesMonoid::new(n).map_err(|e| e.to_string())?;
            let elems: Vec<usize> = (0..m.len()).collect();
            let name = format!("J{n}");
            match idcheck::oracle_finite_monoid(id, &name, &elems, |a, b| m.mul(*a, *b).0, |a| m.label(*a), budget) {
                Ok(v) => Outcome::Verdict(v),
                Err(e @ OracleError::BudgetExceeded { .. }) => Outcome::Inconclusive(format!("{name}: {e}")),
                Err(e) => return Err(e.to_string()),
            }
        }
        Target::Falsify(n) => {
            let f = Falsifier::new(n).map_err(|e| e.to_string())?;
            let name = format!("K{n}");
            match f.run(id, budget, seed) {
                Some(w) => Outcome::Verdict(Verdict::fails(&name, w)),
                None => Outcome::Inconclusive(format!("{name} after {budget} substitutions")),
            }
        }
        Target::Rms => Outcome::Verdict(match rees::witness_rms(id) {
            None => Verdict::holds("S"),
            Some(w) => Verdict::fails(
                "S",
                Witness::Substitution {
                    assignment: w.assignment.iter().map(|(l, v)| (*l, v.to_string())).collect(),
                    lhs_value: w.lhs.to_string(),
                    rhs_value: w.rhs.to_string(),
                },
            ),
        }),
    })
}

fn cmd_check(
    out: &mut dyn Write,
    monoid: &str,
    identity: &str,
    budget: u64,
    seed: u64,
    json: bool,
) -> Result<i32, Failure> {
    let target: Target = monoid.parse().map_err(Failure::Usage)?;
    let id = syntax::parse_identity(identity).map_err(|e| Failure::Usage(e.to_string()))?;
    let outcome = check(target, &id, budget, seed).map_err(Failure::Usage)?;
    let verdict = match outcome {
        Outcome::Inconclusive(why) => {
            if json {
                let value = serde_json::json!({ "inconclusive": why });
                writeln!(out, "{value}")?;
            } else {
                writeln!(out, "NO COUNTEREXAMPLE {why}")?;
            }
            return Ok(EXIT_INCONCLUSIVE);
        }
        Outcome::Verdict(v) => v,
    };
    if json {
        writeln!(out, "{}", serde_json::to_string(&verdict).expect("verdicts serialize"))?;
    } else {
        writeln!(out, "{verdict}")?;
        if let Some(Witness::Substitution { lhs_value, rhs_value, .. }) = &verdict.witness {
            writeln!(out, "values {lhs_value} vs {rhs_value}")?;
        }
    }
    Ok(if verdict.holds { EXIT_OK } else { EXIT_FAIL })
}

/// Smallest rank that contains every hook of `word`.
fn inferred_rank(word: &[Generator]) -> usize {
    word.iter()
        .map(|g| match g {
            Generator::Hook(i) => i + 1,
            _ => 2,
        })
        .max()
        .unwrap_or(2)
}

fn operands(texts: &[String], rank: Option<usize>) -> Result<(usize, Vec<Operand>), Failure> {
    let ops: Vec<Operand> = texts
        .iter()
        .map(|t| syntax::parse_operand(t))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let diagram_rank = ops.iter().find_map(|o| match o {
        Operand::Diagram(d) => Some(d.rank()),
        _ => None,
    });
    let n = match (rank, diagram_rank) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => ops
            .iter()
            .map(|o| match o {
                Operand::Generators(w) => inferred_rank(w),
                Operand::Diagram(d) => d.rank(),
            })
            .max()
            .unwrap_or(2),
    };
    for o in &ops {
        if let Operand::Diagram(d) = o {
            if d.rank() != n {
                return Err(Failure::Usage(format!("diagram of rank {} in a rank {n} product", d.rank())));
            }
        }
    }
    Ok((n, ops))
}

fn generators_value(n: usize, w: &[Generator]) -> Result<ExtKauffmanElement, Failure> {
    evaluate_generators(n, w).map_err(|e| Failure::Usage(e.to_string()))
}

fn as_diagram(n: usize, op: &Operand) -> Result<WireDiagram, Failure> {
    match op {
        Operand::Diagram(d) => Ok(d.clone()),
        Operand::Generators(w) => match generators_value(n, w)?.to_kauffman() {
            Some(k) => Ok(k.to_diagram()),
            None => Err(Failure::Usage("a negative circle count has no wire diagram".into())),
        },
    }
}

fn cmd_multiply(out: &mut dyn Write, texts: &[String], rank: Option<usize>) -> Result<i32, Failure> {
    let (n, ops) = operands(texts, rank)?;
    if ops.iter().all(|o| matches!(o, Operand::Generators(_))) {
        let mut acc = ExtKauffmanElement::identity(n).map_err(|e| Failure::Usage(e.to_string()))?;
        for o in &ops {
            let Operand::Generators(w) = o else { unreachable!() };
            acc = ext_kmultiply(&acc, &generators_value(n, w)?).map_err(|e| Failure::Usage(e.to_string()))?;
        }
        match acc.to_kauffman() {
            Some(k) => writeln!(out, "{}", k.to_diagram())?,
            None => writeln!(out, "circles {} (extended monoid only)", acc.circles)?,
        }
        writeln!(out, "coordinates {acc}")?;
        return Ok(EXIT_OK);
    }
    let mut acc = diagram::identity_diagram(n).map_err(|e| Failure::Usage(e.to_string()))?;
    for o in &ops {
        acc = diagram::multiply(&acc, &as_diagram(n, o)?).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    writeln!(out, "{acc}")?;
    if acc.is_planar() {
        let k = KauffmanElement::from_diagram(&acc).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(out, "coordinates {k}")?;
    } else {
        writeln!(out, "not planar")?;
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(out: &mut dyn Write, n: usize) -> Result<i32, Failure> {
    let elements = jones::enumerate_jones(n).map_err(|e| Failure::Usage(e.to_string()))?;
    if n <= MAX_TABLE_RANK {
        let m = JonesMonoid::new(n).map_err(|e| Failure::Usage(e.to_string()))?;
        for (i, e) in m.elements().iter().enumerate() {
            writeln!(out, "{} {e}", m.label(i))?;
        }
    } else {
        for e in &elements {
            writeln!(out, "{e}")?;
        }
    }
    writeln!(out, "total {}", elements.len())?;
    Ok(EXIT_OK)
}

fn cmd_verify(out: &mut dyn Write, suite: &str, max: Option<usize>) -> Result<i32, Failure> {
    let suite = suite.parse::<Suite>().map_err(|e| Failure::Usage(e.to_string()))?;
    let report = suite.run(max);
    write!(out, "{report}")?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_render(out: &mut dyn Write, text: &str, rank: Option<usize>, format: Format) -> Result<i32, Failure> {
    let (n, ops) = operands(std::slice::from_ref(&text.to_string()), rank)?;
    let d = as_diagram(n, &ops[0])?;
    write!(out, "{}", render::render(&d, format))?;
    Ok(EXIT_OK)
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs one command line (including the program name) and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check { monoid, budget, seed, json, identity } => {
            cmd_check(out, monoid, identity, *budget, *seed, *json)
        }
        Command::Multiply { rank, operands } => cmd_multiply(out, operands, *rank),
        Command::Enumerate { n } => cmd_enumerate(out, *n),
        Command::Verify { suite, max } => cmd_verify(out, suite, *max),
        Command::Render { rank, format, operand } => cmd_render(out, operand, *rank, *format),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
