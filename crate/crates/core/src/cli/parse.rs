//! Expression parser for polynomials and maps.
//!
//! Grammar: `+ - * / ^`, parentheses and unary minus, with explicit `*`.
//! Identifiers are the map variables `X, Y, W, Z1, Z2, ...` and the
//! parameter `t`. Expressions are evaluated over the fraction field, where
//! division by any nonzero scalar is allowed, and then contracted back to
//! the requested ring.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::render::var_index;
use crate::algebra::{DomainElem, MultiPoly, Ring};
use crate::polymap::{MapError, PolyMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at position {pos}: {msg}")]
    Semantic { pos: usize, msg: String },
    #[error("{0}")]
    Contract(String),
}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(src: &str) -> PResult<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    /// Evaluation ring (a field).
    field: Ring,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{c}'")))
        }
    }

    fn syntax(&self, msg: String) -> ParseError {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Sym(c) => format!("'{c}'"),
        };
        ParseError::Syntax { pos: self.pos(), msg: format!("{msg}, found {found}") }
    }

    fn expr(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(ParseError::Semantic { pos, msg: format!("division by the non-scalar {d}") });
                    }
                    let inv = d.constant_term().inverse().ok_or_else(|| ParseError::Semantic { pos, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(') => return Err(self.syntax("expected an operator ('*' is required)".into())),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<MultiPoly> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<MultiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let (pos, save) = (self.pos(), self.at);
        match self.bump() {
            Tok::Num(n) => {
                let e: u32 = (&n).try_into().map_err(|_| ParseError::Semantic { pos, msg: format!("exponent {n} is too large") })?;
                Ok(base.pow(e))
            }
            _ => {
                self.at = save;
                Err(self.syntax("expected a nonnegative integer exponent".into()))
            }
        }
    }

    fn atom(&mut self) -> PResult<MultiPoly> {
        let (pos, save) = (self.pos(), self.at);
        match self.bump() {
            Tok::Num(n) => Ok(MultiPoly::constant(DomainElem::from_bigint(self.field, n), self.nvars)),
            Tok::Ident(name) if name == "t" => DomainElem::t(self.field)
                .map(|t| MultiPoly::constant(t, self.nvars))
                .ok_or_else(|| ParseError::Semantic { pos, msg: format!("the parameter t is not available over {}", self.field) }),
            Tok::Ident(name) => match var_index(&name) {
                Some(i) if i < self.nvars => Ok(MultiPoly::var(self.field, self.nvars, i)),
                Some(_) => Err(ParseError::Semantic { pos, msg: format!("variable {name} is outside the {} map variables", self.nvars) }),
                None => Err(ParseError::Semantic { pos, msg: format!("unknown identifier {name}") }),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                self.at = save;
                Err(self.syntax("expected a number, variable or '('".into()))
            }
        }
    }

    fn finish(&self) -> PResult<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.syntax("unexpected trailing input".into())),
        }
    }
}

fn contract(p: MultiPoly, ring: Ring) -> PResult<MultiPoly> {
    if ring == p.ring() {
        return Ok(p);
    }
    p.to_ring(ring).map_err(|e| ParseError::Contract(format!("{p} is not a polynomial over {ring}: {e}")))
}

/// Parses a polynomial in `nvars` variables with coefficients in `ring`.
pub fn parse_poly(src: &str, ring: Ring, nvars: usize) -> PResult<MultiPoly> {
    let mut p = Parser { toks: tokenize(src)?, at: 0, field: ring.fraction_field(), nvars };
    let e = p.expr()?;
    p.finish()?;
    contract(e, ring)
}

/// Splits `(P1, ..., Pn)` or `P1, ..., Pn` at top-level commas, returning
/// each piece with its byte offset.
fn split_components(src: &str) -> PResult<Vec<(usize, &str)>> {
    let trimmed = src.trim();
    let lead = src.len() - src.trim_start().len();
    let (body, off) = match trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(inner) if balanced(inner) => (inner, lead + 1),
        _ => (trimmed, lead),
    };
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((off + start, &body[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((off + start, &body[start..]));
    if let Some((pos, _)) = parts.iter().find(|(_, s)| s.trim().is_empty()) {
        return Err(ParseError::Syntax { pos: *pos, msg: "empty map component".into() });
    }
    Ok(parts)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn shift(e: ParseError, off: usize) -> ParseError {
    match e {
        ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + off, msg },
        ParseError::Semantic { pos, msg } => ParseError::Semantic { pos: pos + off, msg },
        other => other,
    }
}

/// Parses a map `(P1, ..., Pn)`; the number of components fixes the number
/// of variables unless `nvars` is given.
pub fn parse_map(src: &str, ring: Ring, nvars: Option<usize>) -> PResult<PolyMap> {
    let parts = split_components(src)?;
    let n = nvars.unwrap_or(parts.len());
    if parts.len() != n {
        return Err(ParseError::Semantic { pos: 0, msg: format!("expected {n} components, found {}", parts.len()) });
    }
    let mut comps = Vec::with_capacity(n);
    for (off, text) in parts {
        comps.push(parse_poly(text, ring, n).map_err(|e| shift(e, off))?);
    }
    PolyMap::new(comps).map_err(|e: MapError| ParseError::Contract(e.to_string()))
}
