//! Text grammar for identities, generator words and diagram literals.
//!
//! ```text
//! identity  := word ('=' | '≐') word
//! word      := factor+          factor := letter ('^' int)?
//! letter    := [a-z][0-9]*
//! gens      := 'id' | '1' | gfactor+   gfactor := ('c' | 'd' | 'h' int) ('^' int)?
//! diagram   := '{' 'n' ':' int ',' 'pairs' ':' '[' pair (',' pair)* ']' (',' 'circles' ':' int)? '}'
//! pair      := '[' point ',' point ']'   point := int "'"? | '"' int "'"? '"'
//! ```
//!
//! Whitespace is allowed between tokens. Columns in errors are 1-based
//! character positions.

use std::fmt;

use kauffman::diagram::{make_diagram, Point, WireDiagram};
use kauffman::kauffman::Generator;
use kauffman::word::{Identity, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: expected {}, found {}", self.column, self.expected, self.found)
    }
}

impl std::error::Error for ParseError {}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(s: &str) -> Cursor {
        Cursor { chars: s.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError { column: self.pos + 1, expected: expected.to_string(), found }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("{c:?}")))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        for expected in word.chars() {
            if self.peek_raw() != Some(expected) {
                self.pos = start;
                return Err(self.error(&format!("{word:?}")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self, what: &str) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error(what));
        }
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error(&format!("{what} that fits in 64 bits"))
        })
    }

    fn positive_exponent(&mut self) -> Result<u64, ParseError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let k = self.int("exponent")?;
        if k == 0 {
            self.pos = start;
            return Err(self.error("positive exponent"));
        }
        Ok(k)
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of input")),
        }
    }
}

/// Upper limit on the length of any parsed word after expanding exponents.
pub const MAX_EXPANDED_LENGTH: u64 = 10_000_000;

fn word_at(cur: &mut Cursor) -> Result<Word, ParseError> {
    let mut letters: Vec<Letter> = Vec::new();
    while cur.peek().is_some_and(|c| c.is_ascii_lowercase()) {
        let start = cur.pos;
        cur.pos += 1;
        cur.digits();
        let name: String = cur.chars[start..cur.pos].iter().collect();
        let k = cur.positive_exponent()?;
        if letters.len() as u64 + k > MAX_EXPANDED_LENGTH {
            return Err(cur.error(&format!("words of at most {MAX_EXPANDED_LENGTH} letters")));
        }
        let l = Letter::new(&name);
        letters.extend(std::iter::repeat_n(l, k as usize));
    }
    Word::new(letters).map_err(|_| cur.error("letter"))
}

pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(s);
    let w = word_at(&mut cur)?;
    cur.end()?;
    Ok(w)
}

pub fn parse_identity(s: &str) -> Result<Identity, ParseError> {
    let mut cur = Cursor::new(s);
    let lhs = word_at(&mut cur)?;
    match cur.peek() {
        Some('=') | Some('≐') => cur.pos += 1,
        _ => return Err(cur.error("letter, '=' or '≐'")),
    }
    let rhs = word_at(&mut cur)?;
    cur.end()?;
    Ok(Identity::new(lhs, rhs))
}

/// A generator word over `c`, `d`, `h1`, `h2`, ...; `id` and `1` are the empty word.
pub fn parse_generators(s: &str) -> Result<Vec<Generator>, ParseError> {
    let mut cur = Cursor::new(s);
    if cur.peek() == Some('1') {
        cur.pos += 1;
        cur.end()?;
        return Ok(Vec::new());
    }
    if cur.keyword("id").is_ok() {
        cur.end()?;
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        let g = match cur.peek() {
            Some('c') => {
                cur.pos += 1;
                Generator::C
            }
            Some('d') => {
                cur.pos += 1;
                Generator::D
            }
            Some('h') => {
                cur.pos += 1;
                let start = cur.pos;
                let i = cur.digits();
                match i.parse::<usize>() {
                    Ok(i) if i >= 1 => Generator::Hook(i),
                    _ => {
                        cur.pos = start;
                        return Err(cur.error("hook index"));
                    }
                }
            }
            None if !out.is_empty() => break,
            _ => return Err(cur.error("'c', 'd' or 'h<index>'")),
        };
        let k = cur.positive_exponent()?;
        if out.len() as u64 + k > MAX_EXPANDED_LENGTH {
            return Err(cur.error(&format!("words of at most {MAX_EXPANDED_LENGTH} generators")));
        }
        out.extend(std::iter::repeat_n(g, k as usize));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

fn point_at(cur: &mut Cursor) -> Result<Point, ParseError> {
    let quoted = cur.peek() == Some('"');
    if quoted {
        cur.pos += 1;
    }
    let start = cur.pos;
    let index = cur.int("point index")?;
    if index == 0 {
        cur.pos = start;
        return Err(cur.error("point index of at least 1"));
    }
    let right = cur.peek_raw() == Some('\'');
    if right {
        cur.pos += 1;
    }
    if quoted {
        if cur.peek_raw() != Some('"') {
            return Err(cur.error("'\"'"));
        }
        cur.pos += 1;
    }
    let index = index as usize;
    Ok(if right { Point::right(index) } else { Point::left(index) })
}

/// A diagram literal such as `{n: 2, pairs: [[1,2],["1'","2'"]], circles: 1}`.
pub fn parse_diagram(s: &str) -> Result<WireDiagram, ParseError> {
    let mut cur = Cursor::new(s);
    cur.expect('{')?;
    cur.keyword("n")?;
    cur.expect(':')?;
    let n_col = cur.pos;
    let n = cur.int("rank")? as usize;
    cur.expect(',')?;
    cur.keyword("pairs")?;
    cur.expect(':')?;
    cur.expect('[')?;
    let mut pairs = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            cur.expect('[')?;
            let a = point_at(&mut cur)?;
            cur.expect(',')?;
            let b = point_at(&mut cur)?;
            cur.expect(']')?;
            pairs.push((a, b));
            if cur.peek() == Some(',') {
                cur.pos += 1;
            } else {
                break;
            }
        }
    }
    cur.expect(']')?;
    let mut circles = 0;
    if cur.peek() == Some(',') {
        cur.pos += 1;
        cur.keyword("circles")?;
        cur.expect(':')?;
        circles = cur.int("circle count")?;
    }
    cur.expect('}')?;
    cur.end()?;
    make_diagram(n, &pairs, circles).map_err(|e| ParseError {
        column: n_col + 1,
        expected: "a perfect matching of the 2n boundary points".to_string(),
        found: e.to_string(),
    })
}

/// A multiplication or rendering operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operand {
    Diagram(WireDiagram),
    Generators(Vec<Generator>),
}

pub fn parse_operand(s: &str) -> Result<Operand, ParseError> {
    if s.trim_start().starts_with('{') {
        parse_diagram(s).map(Operand::Diagram)
    } else {
        parse_generators(s).map(Operand::Generators)
    }
}
