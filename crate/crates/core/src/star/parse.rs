//! Recursive-descent parser for star expressions.
//!
//! Grammar (LL(1), whitespace ignored):
//!
//! ```text
//! expr  := term (op term)*          -- all ops in one chain must be equal
//! term  := atom | '(' expr ')'
//! atom  := 'S' | 'B' | 'P' | 'W' '(' number ')' | 'G' '(' number ')'
//! op    := '^' | 'v'
//! number:= digits ('.' digits)?     -- non-negative decimal
//! ```
//!
//! There is no precedence between `^` and `v`; mixing them at one nesting
//! level is rejected and requires explicit parentheses.

use crate::real::Real;
use crate::star::ast::{Atom, StarExpr};

/// What the parser was prepared to accept when it failed.
pub type Expected = &'static [&'static str];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    AmbiguousPrecedence,
    UnexpectedToken,
    UnknownAtom,
    MalformedNumber,
    UnbalancedParen,
}

/// Parse failure with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{}", self.render())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub expected: Expected,
    pub found: String,
}

impl ParseError {
    fn render(&self) -> String {
        let what = match self.kind {
            ParseErrorKind::AmbiguousPrecedence => {
                return format!(
                    "ambiguous precedence at byte {}: mixing '^' and 'v' requires parentheses",
                    self.offset
                );
            }
            ParseErrorKind::UnknownAtom => "unknown atom",
            ParseErrorKind::MalformedNumber => "malformed number",
            ParseErrorKind::UnbalancedParen => "unbalanced parenthesis",
            ParseErrorKind::UnexpectedToken => "unexpected token",
        };
        format!(
            "{what} at byte {}: found {}, expected one of {}",
            self.offset,
            self.found,
            self.expected.join(", ")
        )
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const EXPECTED_TERM: Expected = &["'S'", "'B'", "'P'", "'W('", "'G('", "'('"];
const EXPECTED_AFTER_TERM: Expected = &["'^'", "'v'", "')'", "end of input"];

pub fn parse<F: Real>(text: &str) -> Result<StarExpr<F>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(expr),
        Some(b')') => Err(p.err(ParseErrorKind::UnbalancedParen, EXPECTED_AFTER_TERM)),
        Some(_) => Err(p.err(ParseErrorKind::UnexpectedToken, EXPECTED_AFTER_TERM)),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{}'", c as char),
            None => "end of input".to_string(),
        }
    }

    fn err(&self, kind: ParseErrorKind, expected: Expected) -> ParseError {
        ParseError { kind, offset: self.pos, expected, found: self.found() }
    }

    fn expr<F: Real>(&mut self) -> Result<StarExpr<F>, ParseError> {
        let first = self.term()?;
        let mut op: Option<u8> = None;
        let mut children = vec![first];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c @ (b'^' | b'v')) => {
                    if op.is_some_and(|prev| prev != c) {
                        return Err(self.err(
                            ParseErrorKind::AmbiguousPrecedence,
                            EXPECTED_AFTER_TERM,
                        ));
                    }
                    op = Some(c);
                    self.pos += 1;
                    children.push(self.term()?);
                }
                Some(b')') | None => break,
                Some(_) => return Err(self.err(ParseErrorKind::UnexpectedToken, EXPECTED_AFTER_TERM)),
            }
        }
        Ok(match op {
            None => children.pop().expect("chain holds at least one term"),
            Some(b'^') => StarExpr::avoid(children),
            Some(_) => StarExpr::overlap(children),
        })
    }

    fn term<F: Real>(&mut self) -> Result<StarExpr<F>, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(ParseError {
                        kind: ParseErrorKind::UnbalancedParen,
                        offset: open,
                        expected: &["')'"],
                        found: self.found(),
                    })
                }
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(StarExpr::Atom(Atom::SystemStrand))
            }
            Some(b'B') => {
                self.pos += 1;
                Ok(StarExpr::Atom(Atom::Brownian))
            }
            Some(b'P') => {
                self.pos += 1;
                Ok(StarExpr::Atom(Atom::Saw))
            }
            Some(b'W') => {
                self.pos += 1;
                let n = self.payload()?;
                Ok(StarExpr::Atom(Atom::Packet(n)))
            }
            Some(b'G') => {
                self.pos += 1;
                let x = self.payload()?;
                Ok(StarExpr::Atom(Atom::Generic(x)))
            }
            Some(c) if c.is_ascii_alphabetic() => Err(self.err(ParseErrorKind::UnknownAtom, EXPECTED_TERM)),
            _ => Err(self.err(ParseErrorKind::UnexpectedToken, EXPECTED_TERM)),
        }
    }

    fn payload<F: Real>(&mut self) -> Result<F, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Err(self.err(ParseErrorKind::UnexpectedToken, &["'('"]));
        }
        let open = self.pos;
        self.pos += 1;
        self.skip_ws();
        let value = self.number()?;
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(ParseError {
                kind: ParseErrorKind::UnbalancedParen,
                offset: open,
                expected: &["')'"],
                found: self.found(),
            });
        }
        self.pos += 1;
        Ok(value)
    }

    fn number<F: Real>(&mut self) -> Result<F, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ParseErrorKind::MalformedNumber, &["digit"]));
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == frac_start {
                return Err(self.err(ParseErrorKind::MalformedNumber, &["digit"]));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: f64 = text.parse().map_err(|_| ParseError {
            kind: ParseErrorKind::MalformedNumber,
            offset: start,
            expected: &["non-negative decimal"],
            found: format!("'{text}'"),
        })?;
        F::from_f64(value).ok_or(ParseError {
            kind: ParseErrorKind::MalformedNumber,
            offset: start,
            expected: &["representable decimal"],
            found: format!("'{text}'"),
        })
    }
}
