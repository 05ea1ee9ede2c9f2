//! A small text format for recurrence initial value problems.
//!
//! ```text
//! program   := stmt (";" stmt)*
//! stmt      := recurrence | initial | option
//! recurrence:= "a[n+" INT "]" "=" expr
//! expr      := ("-")? term (("+" | "-") term)*
//! term      := RATIONAL? ("*"? atom)?
//! atom      := "a[n+" INT "]" | "a[n]" | "n" ("^" INT)?
//!            | RATIONAL "^n" | "(" RATIONAL ")" "^n" | RATIONAL
//! initial   := "a[" INT "]" "=" "-"? RATIONAL
//! option    := NAME "=" text up to the next ";"
//! RATIONAL  := INT ("/" INT)?
//! ```
//!
//! Whitespace is insignificant, empty statements are ignored and `#` starts
//! a comment running to the end of the line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::Rational;
use crate::recurrence::{ForcingKind, ForcingTerm, RecurrenceSpec};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
}

type DslResult<T> = std::result::Result<T, DslError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `a[n+j]`
    Shift(u64),
    /// `n^p`
    Power(u32),
    /// `b^n`
    Geometric(Rational),
    /// A bare constant.
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: Rational,
    pub atom: Atom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslProgram {
    /// `k` in the left-hand side `a[n+k]`.
    pub order: u64,
    pub rhs: Vec<Term>,
    /// `(index, value)` pairs in source order.
    pub initials: Vec<(u64, Rational)>,
    pub options: BTreeMap<String, String>,
}

impl DslProgram {
    /// Collects like terms into a [`RecurrenceSpec`].
    pub fn to_spec(&self) -> crate::error::Result<RecurrenceSpec> {
        let k = self.order as usize;
        let mut coefficients = vec![Rational::zero(); k];
        let mut powers: BTreeMap<u32, Rational> = BTreeMap::new();
        let mut geometric: Vec<(Rational, Rational)> = Vec::new();
        for term in &self.rhs {
            let c = term.coefficient.clone();
            match &term.atom {
                Atom::Shift(j) => coefficients[*j as usize] += c,
                Atom::Power(p) => *powers.entry(*p).or_insert_with(Rational::zero) += c,
                Atom::One => *powers.entry(0).or_insert_with(Rational::zero) += c,
                Atom::Geometric(b) => match geometric.iter_mut().find(|(base, _)| base == b) {
                    Some((_, acc)) => *acc += c,
                    None => geometric.push((b.clone(), c)),
                },
            }
        }
        let mut forcing: Vec<ForcingTerm> = powers
            .into_iter()
            .map(|(p, c)| ForcingTerm::power(c, p))
            .collect();
        forcing.extend(
            geometric
                .into_iter()
                .map(|(b, c)| ForcingTerm::geometric(c, b)),
        );
        let mut initials = self.initials.clone();
        initials.sort_by_key(|(i, _)| *i);
        RecurrenceSpec::new(
            coefficients,
            forcing,
            initials.into_iter().map(|(_, v)| v).collect(),
        )
    }

    /// The program describing `spec`, with no options.
    pub fn from_spec(spec: &RecurrenceSpec) -> Self {
        let mut rhs: Vec<Term> = spec
            .coefficients()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Term {
                coefficient: c.clone(),
                atom: Atom::Shift(j as u64),
            })
            .collect();
        rhs.extend(spec.forcing().iter().map(|t| Term {
            coefficient: t.coefficient.clone(),
            atom: match &t.kind {
                ForcingKind::Power(0) => Atom::One,
                ForcingKind::Power(p) => Atom::Power(*p),
                ForcingKind::Geometric(b) => Atom::Geometric(b.clone()),
            },
        }));
        if rhs.is_empty() {
            rhs.push(Term {
                coefficient: Rational::zero(),
                atom: Atom::One,
            });
        }
        DslProgram {
            order: spec.order() as u64,
            rhs,
            initials: spec
                .initials()
                .iter()
                .enumerate()
                .map(|(i, v)| (i as u64 + 1, v.clone()))
                .collect(),
            options: BTreeMap::new(),
        }
    }

    pub fn option(&self, name: &str) -> Option<&str> {
        self.options.get(name).map(String::as_str)
    }
}

fn render_rational_factor(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("({r})")
    }
}

fn render_term(term: &Term) -> String {
    let magnitude = term.coefficient.abs();
    let atom = match &term.atom {
        Atom::Shift(0) => "a[n]".to_string(),
        Atom::Shift(j) => format!("a[n+{j}]"),
        Atom::Power(1) => "n".to_string(),
        Atom::Power(p) => format!("n^{p}"),
        Atom::Geometric(b) => format!("{}^n", render_rational_factor(b)),
        Atom::One => return magnitude.to_string(),
    };
    if magnitude.is_one() {
        atom
    } else {
        format!("{magnitude}*{atom}")
    }
}

impl fmt::Display for DslProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[n+{}] =", self.order)?;
        for (i, term) in self.rhs.iter().enumerate() {
            let negative = term.coefficient.is_negative();
            let sign = match (i, negative) {
                (0, false) => " ",
                (0, true) => " -",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sign}{}", render_term(term))?;
        }
        for (index, value) in &self.initials {
            write!(f, "; a[{index}] = {value}")?;
        }
        for (name, value) in &self.options {
            write!(f, "; {name} = {value}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    start: usize,
}

fn lex(text: &str) -> DslResult<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&(start, c)) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                advance(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while chars.peek().is_some_and(|&(_, c)| c.is_ascii_digit()) {
                digits.push(advance(&mut chars));
            }
            tokens.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                line: tok_line,
                col: tok_col,
                start,
            });
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while chars
                .peek()
                .is_some_and(|&(_, c)| c.is_alphanumeric() || c == '_')
            {
                name.push(advance(&mut chars));
            }
            tokens.push(Token {
                tok: Tok::Ident(name),
                line: tok_line,
                col: tok_col,
                start,
            });
        } else if "[]+-*/^=;(),.".contains(c) {
            advance(&mut chars);
            tokens.push(Token {
                tok: Tok::Sym(c),
                line: tok_line,
                col: tok_col,
                start,
            });
        } else {
            return Err(DslError::Parse {
                line: tok_line,
                col: tok_col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

enum Stmt {
    Recurrence(u64, Vec<Term>, (usize, usize)),
    Initial(u64, Rational, (usize, usize)),
    Option(String, String),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn location(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => {
                let line = self.text.lines().count().max(1);
                let col = self.text.lines().last().map_or(0, |l| l.chars().count()) + 1;
                (line, col)
            }
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> DslResult<T> {
        let (line, col) = self.location();
        let found = match self.peek() {
            Some(Tok::Int(i)) => format!("'{i}'"),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Sym(c)) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Err(DslError::Parse {
            line,
            col,
            message: format!("{}, found {found}", message.into()),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> DslResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn is_ident(&self, offset: usize, name: &str) -> bool {
        matches!(self.peek_at(offset), Some(Tok::Ident(s)) if s == name)
    }

    fn expect_ident(&mut self, name: &str) -> DslResult<()> {
        if self.is_ident(0, name) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{name}'"))
        }
    }

    fn int(&mut self) -> DslResult<BigInt> {
        match self.peek() {
            Some(Tok::Int(i)) => {
                let i = i.clone();
                self.pos += 1;
                Ok(i)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small_int<T: TryFrom<u64>>(&mut self, what: &str) -> DslResult<T> {
        let (line, col) = self.location();
        let value = self.int()?;
        value
            .to_u64()
            .and_then(|v| T::try_from(v).ok())
            .ok_or_else(|| DslError::Parse {
                line,
                col,
                message: format!("{what} {value} is too large"),
            })
    }

    fn rational(&mut self) -> DslResult<Rational> {
        let numer = self.int()?;
        if self.eat_sym('/') {
            let (line, col) = self.location();
            let denom = self.int()?;
            if denom.is_zero() {
                return Err(DslError::Parse {
                    line,
                    col,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn signed_rational(&mut self) -> DslResult<Rational> {
        let negative = self.eat_sym('-');
        let r = self.rational()?;
        Ok(if negative { -r } else { r })
    }

    fn program(&mut self) -> DslResult<Vec<Stmt>> {
        let mut stmts = Vec::new();
        loop {
            while self.eat_sym(';') {}
            if self.peek().is_none() {
                return Ok(stmts);
            }
            stmts.push(self.stmt()?);
            if self.peek().is_some() {
                self.expect_sym(';')?;
            }
        }
    }

    fn stmt(&mut self) -> DslResult<Stmt> {
        let at = self.location();
        if self.is_ident(0, "a") && self.peek_at(1) == Some(&Tok::Sym('[')) {
            self.pos += 2;
            if self.is_ident(0, "n") {
                self.pos += 1;
                let k = if self.eat_sym('+') {
                    self.small_int::<u64>("shift")?
                } else {
                    0
                };
                self.expect_sym(']')?;
                self.expect_sym('=')?;
                let rhs = self.expr()?;
                return Ok(Stmt::Recurrence(k, rhs, at));
            }
            let index = self.small_int::<u64>("index")?;
            self.expect_sym(']')?;
            self.expect_sym('=')?;
            let value = self.signed_rational()?;
            return Ok(Stmt::Initial(index, value, at));
        }
        match self.peek() {
            Some(Tok::Ident(name)) if name != "n" && name != "a" => {
                let name = name.clone();
                self.pos += 1;
                self.expect_sym('=')?;
                let start = self.tokens.get(self.pos).map(|t| t.start);
                while self.peek().is_some_and(|t| *t != Tok::Sym(';')) {
                    self.pos += 1;
                }
                let end = self
                    .tokens
                    .get(self.pos)
                    .map_or(self.text.len(), |t| t.start);
                let Some(start) = start.filter(|&s| s < end) else {
                    return self.error(format!("expected a value for option '{name}'"));
                };
                Ok(Stmt::Option(name, self.text[start..end].trim().to_string()))
            }
            _ => self.error(
                "expected a recurrence 'a[n+k] = ...', an initial value 'a[j] = ...' or an option",
            ),
        }
    }

    fn expr(&mut self) -> DslResult<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = self.eat_sym('-');
        if !negative {
            self.eat_sym('+');
        }
        loop {
            let mut term = self.term()?;
            if negative {
                term.coefficient = -term.coefficient;
            }
            terms.push(term);
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn geometric_tail(&mut self) -> DslResult<()> {
        self.expect_sym('^')?;
        self.expect_ident("n")
    }

    fn term(&mut self) -> DslResult<Term> {
        let mut coefficient = None;
        if matches!(self.peek(), Some(Tok::Int(_))) {
            let r = self.rational()?;
            if self.peek() == Some(&Tok::Sym('^')) {
                self.geometric_tail()?;
                return Ok(Term {
                    coefficient: Rational::one(),
                    atom: Atom::Geometric(r),
                });
            }
            coefficient = Some(r);
        }
        let starred = coefficient.is_some() && self.eat_sym('*');
        if let Some(c) = coefficient
            .clone()
            .filter(|_| matches!(self.peek(), Some(Tok::Int(_))))
        {
            // RATIONAL "*"? RATIONAL: either a constant product or c * b^n
            let r = self.rational()?;
            if self.peek() == Some(&Tok::Sym('^')) {
                self.geometric_tail()?;
                return Ok(Term {
                    coefficient: c,
                    atom: Atom::Geometric(r),
                });
            }
            return Ok(Term {
                coefficient: c * r,
                atom: Atom::One,
            });
        }
        match (self.atom()?, coefficient) {
            (Some(atom), coefficient) => Ok(Term {
                coefficient: coefficient.unwrap_or_else(Rational::one),
                atom,
            }),
            (None, Some(_)) if starred => self.error("expected a term after '*'"),
            (None, Some(c)) => Ok(Term {
                coefficient: c,
                atom: Atom::One,
            }),
            (None, None) => self.error("expected a term"),
        }
    }

    /// Parses a non-constant atom, or returns `None` when the next token
    /// does not start one.
    fn atom(&mut self) -> DslResult<Option<Atom>> {
        if self.is_ident(0, "a") {
            self.pos += 1;
            self.expect_sym('[')?;
            self.expect_ident("n")?;
            let j = if self.eat_sym('+') {
                self.small_int::<u64>("shift")?
            } else {
                0
            };
            self.expect_sym(']')?;
            return Ok(Some(Atom::Shift(j)));
        }
        if self.is_ident(0, "n") {
            self.pos += 1;
            let p = if self.eat_sym('^') {
                self.small_int::<u32>("exponent")?
            } else {
                1
            };
            return Ok(Some(Atom::Power(p)));
        }
        if self.peek() == Some(&Tok::Sym('(')) {
            self.pos += 1;
            let base = self.signed_rational()?;
            self.expect_sym(')')?;
            self.geometric_tail()?;
            return Ok(Some(Atom::Geometric(base)));
        }
        Ok(None)
    }
}

/// Parses and validates a program.
pub fn parse_dsl(text: &str) -> DslResult<DslProgram> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        text,
        tokens,
        pos: 0,
    };
    let stmts = parser.program()?;

    let mut recurrence: Option<(u64, Vec<Term>)> = None;
    let mut initials: Vec<(u64, Rational)> = Vec::new();
    let mut options = BTreeMap::new();
    for stmt in stmts {
        match stmt {
            Stmt::Recurrence(k, rhs, (line, col)) => {
                if recurrence.is_some() {
                    return Err(DslError::Semantic(format!(
                        "second recurrence at line {line}, column {col}"
                    )));
                }
                recurrence = Some((k, rhs));
            }
            Stmt::Initial(index, value, (line, col)) => {
                if initials.iter().any(|(i, _)| *i == index) {
                    return Err(DslError::Semantic(format!(
                        "duplicate initial value a[{index}] at line {line}, column {col}"
                    )));
                }
                initials.push((index, value));
            }
            Stmt::Option(name, value) => {
                if options.insert(name.clone(), value).is_some() {
                    return Err(DslError::Semantic(format!("duplicate option '{name}'")));
                }
            }
        }
    }

    let Some((order, rhs)) = recurrence else {
        return Err(DslError::Semantic(
            "missing recurrence 'a[n+k] = ...'".into(),
        ));
    };
    if order == 0 {
        return Err(DslError::Semantic(
            "left-hand side must be a[n+k] with k >= 1".into(),
        ));
    }
    for term in &rhs {
        match &term.atom {
            Atom::Shift(j) if *j >= order => {
                return Err(DslError::Semantic(format!(
                    "right-hand side uses a[n+{j}], which is not below the left-hand shift {order}"
                )))
            }
            Atom::Geometric(b) if !b.is_positive() => {
                return Err(DslError::Semantic(format!(
                    "geometric base {b} must be positive"
                )))
            }
            _ => {}
        }
    }
    if let Some((index, _)) = initials.iter().find(|(i, _)| *i == 0 || *i > order) {
        return Err(DslError::Semantic(format!(
            "initial value a[{index}] is outside 1..={order}"
        )));
    }
    if let Some(missing) = (1..=order).find(|j| initials.iter().all(|(i, _)| i != j)) {
        return Err(DslError::Semantic(format!(
            "missing initial value a[{missing}]"
        )));
    }
    Ok(DslProgram {
        order,
        rhs,
        initials,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn semantic(text: &str) -> String {
        match parse_dsl(text) {
            Err(DslError::Semantic(m)) => m,
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn fibonacci_program() {
        let program = parse_dsl("a[n+2] = a[n+1] + a[n]; a[1]=1; a[2]=1").unwrap();
        assert_eq!(program.to_spec().unwrap(), RecurrenceSpec::fibonacci());
    }

    #[test]
    fn affine_program() {
        let program = parse_dsl("a[n+1] = 3*a[n] + 1; a[1]=1").unwrap();
        assert_eq!(
            program.to_spec().unwrap(),
            RecurrenceSpec::affine(rat(3, 1), rat(1, 1), rat(1, 1))
        );
    }

    #[test]
    fn forcing_atoms() {
        let program = parse_dsl(
            "a[n+2] = -a[n] + 2a[n+1] + n^2 - 1/2^n + 3*(2/3)^n + 2*3 - n; a[2] = -1/3; a[1] = 0",
        )
        .unwrap();
        let spec = program.to_spec().unwrap();
        assert_eq!(spec.coefficients(), &[rat(-1, 1), rat(2, 1)]);
        assert_eq!(spec.initials(), &[rat(0, 1), rat(-1, 3)]);
        assert_eq!(
            spec.forcing(),
            &[
                ForcingTerm::power(rat(6, 1), 0),
                ForcingTerm::power(rat(-1, 1), 1),
                ForcingTerm::power(rat(1, 1), 2),
                ForcingTerm::geometric(rat(-1, 1), rat(1, 2)),
                ForcingTerm::geometric(rat(3, 1), rat(2, 3)),
            ]
        );
    }

    #[test]
    fn options_and_comments() {
        let program = parse_dsl(
            "# Fibonacci\na[n+2] = a[n+1] + a[n];\na[1] = 1; a[2] = 1;\nterms = 12; tol = 1e-9;\n",
        )
        .unwrap();
        assert_eq!(program.option("terms"), Some("12"));
        assert_eq!(program.option("tol"), Some("1e-9"));
    }

    #[test]
    fn semantic_errors() {
        assert!(semantic("a[n+2] = a[n]; a[1] = 1").contains("missing initial value a[2]"));
        assert!(semantic("a[n+1] = a[n]; a[1] = 1; a[1] = 2").contains("duplicate"));
        assert!(semantic("a[n+1] = a[n+1]; a[1] = 1").contains("not below"));
        assert!(semantic("a[n+1] = (-2)^n; a[1] = 1").contains("positive"));
        assert!(semantic("a[1] = 1").contains("missing recurrence"));
        assert!(semantic("a[n+1] = a[n]; a[1] = 1; a[2] = 1").contains("outside"));
        assert!(semantic("a[n] = 1").contains("k >= 1"));
    }

    #[test]
    fn parse_error_positions() {
        let err = parse_dsl("a[n+2] = a[n+1] +\n  * a[n]; a[1] = 1; a[2] = 1").unwrap_err();
        assert!(
            matches!(
                err,
                DslError::Parse {
                    line: 2,
                    col: 3,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_dsl("a[n+1] = a[n] $ 2").unwrap_err();
        assert!(matches!(
            err,
            DslError::Parse {
                line: 1,
                col: 15,
                ..
            }
        ));
        let err = parse_dsl("a[n+1] = 1/0; a[1] = 1").unwrap_err();
        assert!(matches!(
            err,
            DslError::Parse {
                line: 1,
                col: 12,
                ..
            }
        ));
        assert!(matches!(
            parse_dsl("a[n+1] = a[n-1]"),
            Err(DslError::Parse { .. })
        ));
    }

    #[test]
    fn render_matches_spec_display() {
        let spec = parse_dsl("a[n+1] = -1/2*a[n] + 3*n^2 - (1/2)^n; a[1] = 5")
            .unwrap()
            .to_spec()
            .unwrap();
        assert_eq!(DslProgram::from_spec(&spec).to_string(), spec.to_string());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..21, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    fn program_strategy() -> impl Strategy<Value = DslProgram> {
        (1u64..5).prop_flat_map(|order| {
            let atom = prop_oneof![
                (0..order).prop_map(Atom::Shift),
                (0u32..5).prop_map(Atom::Power),
                (1i64..9, 1i64..5).prop_map(|(n, d)| Atom::Geometric(rat(n, d))),
                Just(Atom::One),
            ];
            let term =
                (small_rational(), atom).prop_map(|(coefficient, atom)| Term { coefficient, atom });
            (
                prop::collection::vec(term, 1..6),
                prop::collection::vec(small_rational(), order as usize),
                prop::collection::btree_map("[b-m][a-z_]{0,6}", "[0-9][0-9.,]{0,5}", 0..3),
            )
                .prop_map(move |(rhs, values, options)| DslProgram {
                    order,
                    rhs,
                    initials: values
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| (i as u64 + 1, v))
                        .collect(),
                    options,
                })
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(program in program_strategy()) {
            let text = program.to_string();
            let parsed = parse_dsl(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(parsed, program);
        }
    }
}
