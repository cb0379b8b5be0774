//! Plain-text presentations.
//!
//! ```text
//! # comment
//! vertex 1
//! vertex 2
//! arrow a: 1 -> 2
//! relation 2*a.b + L*(c.d)^2.c = e(1) - a.b
//! ```
//!
//! A linear combination is a sum of terms; a term is a `*`-separated product
//! of rationals, `L` (the deformation parameter) and path expressions.
//! Paths are `.`-separated arrow names, `e(v)` stationary paths and
//! parenthesised groups with an optional `^k` exponent.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{is_negative, FieldSpec, Scalar};
use crate::quiver::{AlgebraElement, Path, Quiver};

use super::{Presentation, Relation};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
    Dot,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

fn tokenize(s: &str, line: usize, offset: usize) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '.' => Some(Tok::Dot),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        line,
        end_col: offset + chars.len() + 1,
    })
}

/// A parsed term factor: a scalar times an optional path.
struct Monomial {
    coeff: Scalar,
    path: Option<Path>,
}

struct Parser<'a> {
    lex: Lexer,
    quiver: &'a Quiver,
    field: &'a FieldSpec,
    /// endpoints of every term seen, for the parallelism check
    endpoints: Vec<(usize, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lex.toks.get(self.lex.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.lex
            .toks
            .get(self.lex.pos)
            .map_or(self.lex.end_col, |(_, c)| *c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.lex.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lex.toks.get(self.lex.pos).map(|(t, _)| t.clone());
        self.lex.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.lex.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {t:?}")))
        }
    }

    fn at_end(&self) -> bool {
        self.lex.pos >= self.lex.toks.len()
    }

    fn lincomb(&mut self) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        let mut first = true;
        loop {
            let mut sign = Scalar::one();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.lex.pos += 1;
                }
                Some(Tok::Minus) => {
                    self.lex.pos += 1;
                    sign = -sign;
                }
                _ if !first => break,
                _ => {}
            }
            first = false;
            let m = self.term()?;
            match m.path {
                Some(p) => {
                    self.endpoints.push((p.source(), p.target()));
                    out.add_term(p, &sign * &m.coeff);
                }
                None if m.coeff.is_zero() => {}
                None => return Err(self.err("a term needs a path (write e(v) for a vertex)")),
            }
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut m = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.lex.pos += 1;
            let f = self.factor()?;
            m.coeff = &m.coeff * &f.coeff;
            m.path = match (m.path, f.path) {
                (None, p) | (p, None) => p,
                (Some(a), Some(b)) => Some(self.compose(&a, &b)?),
            };
        }
        Ok(m)
    }

    fn compose(&self, a: &Path, b: &Path) -> Result<Path> {
        a.compose(b).ok_or_else(|| {
            Error::NotComposable(format!(
                "{} then {}",
                self.quiver.fmt_path(a),
                self.quiver.fmt_path(b)
            ))
        })
    }

    fn exponent(&mut self) -> Result<Option<u32>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.lex.pos += 1;
        match self.next() {
            Some(Tok::Num(n)) => n.parse().map(Some).map_err(|_| self.err("bad exponent")),
            _ => {
                self.lex.pos -= 1;
                Err(self.err("expected an exponent"))
            }
        }
    }

    fn factor(&mut self) -> Result<Monomial> {
        match self.peek() {
            Some(Tok::Num(_)) => {
                let Some(Tok::Num(n)) = self.next() else { unreachable!() };
                let mut text = n;
                if self.peek() == Some(&Tok::Slash) {
                    self.lex.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) => text = format!("{text}/{d}"),
                        _ => {
                            self.lex.pos -= 1;
                            return Err(self.err("expected a denominator"));
                        }
                    }
                }
                Ok(Monomial {
                    coeff: self.field.parse_scalar(&text)?,
                    path: None,
                })
            }
            Some(Tok::Ident(id)) if id == "L" => {
                self.lex.pos += 1;
                let k = self.exponent()?.unwrap_or(1);
                Ok(Monomial {
                    coeff: self.field.lambda().pow(k),
                    path: None,
                })
            }
            Some(Tok::Ident(_)) | Some(Tok::LParen) => Ok(Monomial {
                coeff: Scalar::one(),
                path: Some(self.path_expr()?),
            }),
            _ => Err(self.err("expected a coefficient or a path")),
        }
    }

    fn path_expr(&mut self) -> Result<Path> {
        let mut p = self.path_atom()?;
        while self.peek() == Some(&Tok::Dot) {
            self.lex.pos += 1;
            let q = self.path_atom()?;
            p = self.compose(&p, &q)?;
        }
        Ok(p)
    }

    fn path_atom(&mut self) -> Result<Path> {
        match self.next() {
            Some(Tok::LParen) => {
                let inner = self.path_expr()?;
                self.expect(Tok::RParen)?;
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) => inner.power(k as usize).ok_or_else(|| {
                        Error::NotComposable(format!(
                            "{} is not a cycle",
                            self.quiver.fmt_path(&inner)
                        ))
                    }),
                }
            }
            Some(Tok::Ident(id)) if id == "e" && self.peek() == Some(&Tok::LParen) => {
                self.lex.pos += 1;
                let name = match self.next() {
                    Some(Tok::Ident(v)) | Some(Tok::Num(v)) => v,
                    _ => {
                        self.lex.pos -= 1;
                        return Err(self.err("expected a vertex name"));
                    }
                };
                self.expect(Tok::RParen)?;
                Ok(Path::stationary(self.quiver.vertex(&name)?))
            }
            Some(Tok::Ident(id)) => Ok(self.quiver.arrow_path(self.quiver.arrow_id(&id)?)),
            _ => {
                self.lex.pos -= 1;
                Err(self.err("expected a path"))
            }
        }
    }
}

/// Parses `lhs = rhs` over a fixed quiver.
pub fn parse_relation(quiver: &Quiver, field: &FieldSpec, text: &str) -> Result<Relation> {
    let (l, r) = text.split_once('=').ok_or_else(|| Error::Syntax {
        line: 1,
        column: text.len() + 1,
        message: "expected '='".into(),
    })?;
    let (lhs, mut ends) = parse_side(quiver, field, l, 1, 0)?;
    let (rhs, more) = parse_side(quiver, field, r, 1, l.len() + 1)?;
    ends.extend(more);
    check_parallel(&ends, text)?;
    Ok(Relation { lhs, rhs })
}

/// Parses a linear combination such as `alpha.beta - 2*L*e(1)`.
pub fn parse_element(quiver: &Quiver, field: &FieldSpec, text: &str) -> Result<AlgebraElement> {
    let mut p = Parser {
        lex: tokenize(text, 1, 0)?,
        quiver,
        field,
        endpoints: Vec::new(),
    };
    let x = p.lincomb()?;
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    check_parallel(&p.endpoints, text)?;
    Ok(x)
}

fn check_parallel(endpoints: &[(usize, usize)], text: &str) -> Result<()> {
    if let Some(&first) = endpoints.first() {
        if endpoints.iter().any(|&e| e != first) {
            return Err(Error::NonParallelRelation(text.trim().to_string()));
        }
    }
    Ok(())
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str, field: &FieldSpec) -> Result<Presentation> {
    let mut quiver = Quiver::default();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        let indent = content.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_offset = indent + keyword.len() + (trimmed.len() - keyword.len() - rest.len());
        let syntax = |column: usize, message: &str| Error::Syntax {
            line,
            column,
            message: message.to_string(),
        };
        match keyword {
            "vertex" => {
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(syntax(rest_offset + 1, "expected a single vertex name"));
                }
                quiver.add_vertex(name)?;
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(rest_offset + 1, "expected 'name: source -> target'"))?;
                let (src, tgt) = ends
                    .split_once("->")
                    .ok_or_else(|| syntax(rest_offset + name.len() + 2, "expected '->'"))?;
                let name = name.trim();
                if name == "L" || name == "e" || !is_identifier(name) {
                    return Err(syntax(rest_offset + 1, "invalid arrow name"));
                }
                quiver.add_arrow(name, src.trim(), tgt.trim())?;
            }
            "relation" => {
                let (l, r) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(rest_offset + rest.len() + 1, "expected '='"))?;
                let lhs = parse_side(&quiver, field, l, line, rest_offset)?;
                let rhs = parse_side(&quiver, field, r, line, rest_offset + l.len() + 1)?;
                let rel = Relation {
                    lhs: lhs.0,
                    rhs: rhs.0,
                };
                let mut ends = lhs.1;
                ends.extend(rhs.1);
                check_parallel(&ends, rest)?;
                relations.push(rel);
            }
            _ => return Err(syntax(indent + 1, &format!("unknown keyword '{keyword}'"))),
        }
    }
    Ok(Presentation { quiver, relations })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_side(
    quiver: &Quiver,
    field: &FieldSpec,
    text: &str,
    line: usize,
    offset: usize,
) -> Result<(AlgebraElement, Vec<(usize, usize)>)> {
    let mut p = Parser {
        lex: tokenize(text, line, offset)?,
        quiver,
        field,
        endpoints: Vec::new(),
    };
    let x = p.lincomb()?;
    if !p.at_end() {
        return Err(p.err("unexpected token"));
    }
    Ok((x, p.endpoints))
}

/// Writes a presentation in the format read by [`parse_presentation`].
/// Coefficients are written out in the ground field.
pub fn serialize_presentation(p: &Presentation) -> String {
    let q = &p.quiver;
    let mut s = String::new();
    for v in q.vertices() {
        let _ = writeln!(s, "vertex {v}");
    }
    for a in q.arrows() {
        let _ = writeln!(
            s,
            "arrow {}: {} -> {}",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        );
    }
    for r in &p.relations {
        let _ = writeln!(s, "relation {} = {}", write_side(q, &r.lhs), write_side(q, &r.rhs));
    }
    s
}

fn write_side(q: &Quiver, x: &AlgebraElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (p, c)) in x.terms().iter().rev().enumerate() {
        let neg = is_negative(c);
        let mag = if neg { -c } else { c.clone() };
        if i > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if !mag.is_one() {
            let _ = write!(s, "{mag}*");
        }
        if p.is_stationary() {
            let _ = write!(s, "e({})", q.vertex_name(p.source()));
        } else {
            s.push_str(&q.fmt_path(p));
        }
    }
    s
}
