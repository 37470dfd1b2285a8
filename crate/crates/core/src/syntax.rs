//! Text syntax for terms.
//!
//! ```text
//! sum     := ['-'] product { ('+' | '-') product }
//! product := factor { ['*'] factor }
//! factor  := primary [ '^' digits ]
//! primary := letter | '_' digits | digits | '(' sum ')'
//! ```
//!
//! Letters `a`, `b`, `c`, … are variables 0, 1, 2, …; `_n` is variable `n`.
//! Juxtaposition and `*` multiply, `1` is the unit (or the point of a pointed
//! set), `0` the additive zero. A number `n >= 2` at the start of a product
//! is a coefficient (`2ab` is `ab+ab`); elsewhere it stands for `1+…+1`.
//! Sums and products associate to the right, matching the shape of normal
//! forms, so printing a normal form and parsing it back is the identity.

use std::fmt::Write;

use thiserror::Error;

use crate::term::ops::*;
use crate::term::{Op, Term, TermError, TheorySpec};

/// How variables are spelled when printing (and read when parsing).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// a, b, c, …, z
    Abc,
    /// x, y, z, w, u, v, s, t; used for the middle object of a factorization.
    Xyz,
}

const XYZ: [char; 8] = ['x', 'y', 'z', 'w', 'u', 'v', 's', 't'];

impl Alphabet {
    fn letter(self, i: usize) -> Option<char> {
        match self {
            Alphabet::Abc if i < 26 => Some((b'a' + i as u8) as char),
            Alphabet::Xyz => XYZ.get(i).copied(),
            _ => None,
        }
    }

    fn index(self, c: char) -> Option<usize> {
        match self {
            Alphabet::Abc if c.is_ascii_lowercase() => Some((c as u8 - b'a') as usize),
            Alphabet::Xyz => XYZ.iter().position(|&x| x == c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable `{name}` at position {position} exceeds the declared arity {arity}")]
    VariableOutOfRange { name: String, position: usize, arity: usize },
    #[error(transparent)]
    Term(#[from] TermError),
}

pub fn print_term(t: &Term) -> String {
    print_term_with(t, Alphabet::Abc)
}

pub fn print_term_with(t: &Term, alphabet: Alphabet) -> String {
    let mut out = String::new();
    write_term(&mut out, t, alphabet, Level::Sum);
    out
}

/// `{t1, t2, …}`
pub fn print_tuple(ts: &[Term], alphabet: Alphabet) -> String {
    let parts: Vec<String> = ts.iter().map(|t| print_term_with(t, alphabet)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Product,
    Atom,
}

fn is_mul(op: &Op) -> bool {
    *op == MUL || *op == SEMI_MUL
}

fn is_add(op: &Op) -> bool {
    *op == ADD || *op == CADD
}

fn write_var(out: &mut String, i: usize, alphabet: Alphabet) {
    match alphabet.letter(i) {
        Some(c) => out.push(c),
        None => {
            let _ = write!(out, "_{i}");
        }
    }
}

fn write_term(out: &mut String, t: &Term, alphabet: Alphabet, level: Level) {
    match t {
        Term::Var(i) => write_var(out, *i, alphabet),
        Term::App(op, args) if args.is_empty() => {
            out.push_str(match *op {
                UNIT | POINT => "1",
                ZERO | CZERO => "0",
                _ => op.name,
            });
        }
        Term::App(op, args) if is_add(op) => {
            let paren = level > Level::Sum;
            if paren {
                out.push('(');
            }
            write_signed(out, &args[0], alphabet, true);
            let mut rest = &args[1];
            loop {
                match rest {
                    Term::App(op2, a2) if op2 == op => {
                        write_signed(out, &a2[0], alphabet, false);
                        rest = &a2[1];
                    }
                    _ => {
                        write_signed(out, rest, alphabet, false);
                        break;
                    }
                }
            }
            if paren {
                out.push(')');
            }
        }
        Term::App(op, args) if *op == NEG => {
            let paren = level > Level::Sum;
            if paren {
                out.push('(');
            }
            out.push('-');
            write_term(out, &args[0], alphabet, Level::Product);
            if paren {
                out.push(')');
            }
        }
        Term::App(op, args) if is_mul(op) => {
            let paren = level > Level::Product;
            if paren {
                out.push('(');
            }
            write_term(out, &args[0], alphabet, Level::Atom);
            write_term(out, &args[1], alphabet, Level::Product);
            if paren {
                out.push(')');
            }
        }
        Term::App(op, args) => {
            out.push_str(op.name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_term(out, a, alphabet, Level::Sum);
            }
            out.push(')');
        }
    }
}

fn write_signed(out: &mut String, t: &Term, alphabet: Alphabet, first: bool) {
    match t {
        Term::App(op, args) if *op == NEG => {
            out.push('-');
            write_term(out, &args[0], alphabet, Level::Product);
        }
        _ => {
            if !first {
                out.push('+');
            }
            write_term(out, t, alphabet, Level::Product);
        }
    }
}

/// Parses `text` in the notation of `theory` over `arity` variables and
/// returns the normal form.
pub fn parse_term(text: &str, theory: &TheorySpec, arity: usize) -> Result<Term, ParseError> {
    parse_term_with(text, theory, arity, Alphabet::Abc)
}

pub fn parse_term_with(
    text: &str,
    theory: &TheorySpec,
    arity: usize,
    alphabet: Alphabet,
) -> Result<Term, ParseError> {
    let raw = parse_raw(text, theory, arity, alphabet)?;
    Ok(theory.normalize(&raw)?)
}

/// Parses without normalizing; the result still only uses the theory's
/// operations.
pub fn parse_raw(
    text: &str,
    theory: &TheorySpec,
    arity: usize,
    alphabet: Alphabet,
) -> Result<Term, ParseError> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        offsets: text.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(i, _)| i).collect(),
        len: text.len(),
        pos: 0,
        theory,
        arity,
        alphabet,
    };
    if p.chars.is_empty() {
        return Err(p.error("empty input"));
    }
    let t = p.sum()?;
    if p.pos < p.chars.len() {
        return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(t)
}

struct Parser<'a> {
    chars: Vec<char>,
    offsets: Vec<usize>,
    len: usize,
    pos: usize,
    theory: &'a TheorySpec,
    arity: usize,
    alphabet: Alphabet,
}

impl Parser<'_> {
    fn position(&self) -> usize {
        self.offsets.get(self.pos).copied().unwrap_or(self.len)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.position(), message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn op(&self, op: Option<Op>, what: &str) -> Result<Op, ParseError> {
        op.ok_or_else(|| self.error(&format!("theory `{}` has no {what}", self.theory.name())))
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let n = self.theory.notation();
        let mut summands = Vec::new();
        let mut negate = false;
        if self.peek() == Some('-') {
            self.op(n.neg, "negation")?;
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.product()?;
            summands.push(if negate { Term::unary(n.neg.expect("checked"), t) } else { t });
            match self.peek() {
                Some(c @ ('+' | '-')) => {
                    self.op(n.add, "addition")?;
                    if c == '-' {
                        self.op(n.neg, "negation")?;
                    }
                    self.pos += 1;
                    negate = c == '-';
                }
                _ => break,
            }
        }
        let mut it = summands.into_iter().rev();
        let last = it.next().expect("at least one summand");
        Ok(it.fold(last, |acc, s| Term::binary(n.add.expect("checked"), s, acc)))
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '(' || c == '_')
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let n = self.theory.notation();
        let mut coefficient = None;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let value = self.number()?;
            if value >= 2 && (self.starts_factor() || self.peek() == Some('*')) {
                coefficient = Some(value);
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
            } else {
                self.pos = start;
            }
        }
        let mut factors = vec![self.factor()?];
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
            } else if !self.starts_factor() {
                break;
            }
            self.op(n.mul, "multiplication")?;
            factors.push(self.factor()?);
        }
        let mut it = factors.into_iter().rev();
        let last = it.next().expect("one factor");
        let product = it.fold(last, |acc, f| Term::binary(n.mul.expect("checked"), f, acc));
        match coefficient {
            None => Ok(product),
            Some(c) => self.repeat_sum(product, c),
        }
    }

    fn repeat_sum(&self, t: Term, times: u64) -> Result<Term, ParseError> {
        let add = self.op(self.theory.notation().add, "addition")?;
        let mut acc = t.clone();
        for _ in 1..times {
            acc = Term::binary(add, t.clone(), acc);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.error("expected exponent"));
        }
        let e = self.number()?;
        let n = self.theory.notation();
        if e == 0 {
            return Ok(Term::constant(self.op(n.one, "unit")?));
        }
        let mul = self.op(n.mul, "multiplication")?;
        let mut acc = base.clone();
        for _ in 1..e {
            acc = Term::binary(mul, base.clone(), acc);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| ParseError::Syntax {
            position: self.offsets[start],
            message: "number too large".into(),
        })
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let n = self.theory.notation();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some('_') => {
                let at = self.position();
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    return Err(self.error("expected variable index after `_`"));
                }
                let i = self.number()? as usize;
                self.variable(i, format!("_{i}"), at)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let at = self.position();
                self.pos += 1;
                let i = self
                    .alphabet
                    .index(c)
                    .ok_or_else(|| ParseError::Syntax { position: at, message: format!("`{c}` is not a variable") })?;
                self.variable(i, c.to_string(), at)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.number()?;
                match value {
                    0 => Ok(Term::constant(self.op(n.zero, "zero")?)),
                    1 => Ok(Term::constant(self.op(n.one, "unit")?)),
                    v => {
                        let one = Term::constant(self.op(n.one, "unit")?);
                        self.repeat_sum(one, v)
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&self, i: usize, name: String, position: usize) -> Result<Term, ParseError> {
        if i >= self.arity {
            return Err(ParseError::VariableOutOfRange { name, position, arity: self.arity });
        }
        Ok(Term::Var(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono() -> TheorySpec {
        TheorySpec::monoid()
    }

    #[test]
    fn single_variable() {
        assert_eq!(parse_term("a", &mono(), 1).unwrap(), Term::Var(0));
    }

    #[test]
    fn words_print_plainly() {
        let t = parse_term("(ab)(c a)", &mono(), 3).unwrap();
        assert_eq!(print_term(&t), "abca");
        let t = parse_term("a^2 b", &mono(), 2).unwrap();
        assert_eq!(print_term(&t), "aab");
        assert_eq!(print_term(&parse_term("1", &mono(), 0).unwrap()), "1");
    }

    #[test]
    fn abelian_signs() {
        let g = TheorySpec::abelian_group();
        let t = parse_term("a-b+c-a", &g, 3).unwrap();
        assert_eq!(print_term(&t), "-b+c");
        let t = parse_term("-(a+b)+b", &g, 2).unwrap();
        assert_eq!(print_term(&t), "-a");
        assert_eq!(print_term(&parse_term("a-a", &g, 1).unwrap()), "0");
    }

    #[test]
    fn variable_beyond_arity() {
        let err = parse_term("ab+c", &mono(), 2).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. } | ParseError::VariableOutOfRange { .. }));
        let err = parse_term("ab", &mono(), 1).unwrap_err();
        assert_eq!(err, ParseError::VariableOutOfRange { name: "b".into(), position: 1, arity: 1 });
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_term("a(b", &mono(), 2).unwrap_err();
        assert_eq!(err, ParseError::Syntax { position: 3, message: "expected `)`".into() });
        assert!(parse_term("", &mono(), 2).is_err());
        assert!(parse_term("a)", &mono(), 2).is_err());
    }

    #[test]
    fn raw_printing_keeps_structure() {
        let t = Term::binary(MUL, Term::binary(MUL, Term::Var(0), Term::Var(1)), Term::Var(2));
        assert_eq!(print_term(&t), "(ab)c");
        let t = Term::binary(MUL, Term::unary(NEG, Term::Var(0)), Term::Var(1));
        assert_eq!(print_term(&t), "(-a)b");
        let t = Term::unary(NEG, Term::unary(NEG, Term::Var(0)));
        assert_eq!(print_term(&t), "-(-a)");
    }

    #[test]
    fn xyz_alphabet() {
        let g = TheorySpec::abelian_group();
        let t = parse_term_with("x+y", &g, 2, Alphabet::Xyz).unwrap();
        assert_eq!(print_term_with(&t, Alphabet::Xyz), "x+y");
        assert_eq!(print_term(&Term::Var(30)), "_30");
    }
}
