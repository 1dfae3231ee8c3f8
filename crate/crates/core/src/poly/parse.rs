//! Textual syntax for polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the algebra's generators plus the reserved constants
//! `t` (equal characteristic uniformizer), `z` (generator of 𝔽_q when
//! h > 1) and `i` (the Gaussian unit). Whitespace is insignificant.
//! Output uses descending graded-lex order and re-parses to the same value.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, PolyAlg, ResiduePoly};
use crate::coeff::RingKind;
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(parse_err(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Arc<PolyAlg>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u64 = n
                        .try_into()
                        .ok()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| parse_err(at, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(parse_err(at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.offset();
        let ring = self.alg.ring().clone();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.alg, ring.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.alg.generator_index(&name) {
                    return Ok(Poly::generator(self.alg, i));
                }
                let constant = match (name.as_str(), ring.kind()) {
                    ("t", RingKind::EqualChar) => Some(ring.pi()),
                    ("z", RingKind::EqualChar) => ring.field_generator(),
                    ("i", RingKind::MixedCharRamified) => ring.imaginary_unit(),
                    _ => None,
                };
                constant
                    .map(|c| Poly::constant(self.alg, c))
                    .ok_or_else(|| parse_err(at, format!("unknown identifier '{name}'")))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(parse_err(self.offset(), "expected ')'")),
                }
            }
            Some(_) => Err(parse_err(at, "expected a number, identifier or '('")),
            None => Err(parse_err(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` as an element of `alg`.
pub fn parse_poly(alg: &Arc<PolyAlg>, text: &str) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        alg,
        toks,
        pos: 0,
        end: text.len(),
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parse_err(parser.offset(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `text` and reduces it into A_0.
pub fn parse_residue_poly(alg: &Arc<PolyAlg>, text: &str) -> Result<ResiduePoly> {
    Ok(parse_poly(alg, text)?.to_residue())
}

/// Splits `"(a, b, c)"` into its top-level components together with their
/// byte offsets.
pub fn split_vector(text: &str) -> Result<Vec<(usize, &str)>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    if !body.starts_with('(') || !body.ends_with(')') || body.len() < 2 {
        return Err(parse_err(trimmed_start, "expected '(' component, ... ')'"));
    }
    let inner_start = trimmed_start + 1;
    let inner = &body[1..body.len() - 1];
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (k, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(parse_err(inner_start + k, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                parts.push((inner_start + last, &inner[last..k]));
                last = k + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(parse_err(text.len(), "unbalanced '('"));
    }
    parts.push((inner_start + last, &inner[last..]));
    if parts.iter().any(|(_, s)| s.trim().is_empty()) {
        return Err(parse_err(inner_start, "empty component"));
    }
    Ok(parts)
}

/// Renders a polynomial; see the module documentation.
pub(crate) fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let names = f.alg().names();
    let single = f.num_terms() == 1;
    let mut out = String::new();
    for (k, (mono, c)) in f.terms().rev().enumerate() {
        let (negative, body, compound) = ring.coefficient_parts(c);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        for (i, &e) in mono.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                e => factors.push(format!("{}^{e}", names[i])),
            }
        }
        let unit = body == "1";
        if factors.is_empty() {
            if compound && !single {
                write!(out, "({body})").unwrap();
            } else {
                out.push_str(&body);
            }
        } else {
            if !unit {
                if compound {
                    write!(out, "({body})*").unwrap();
                } else {
                    write!(out, "{body}*").unwrap();
                }
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
