//! Expression parser: `+ - * ^`, rational literals `p/q`, generator names,
//! `I`, `sqrt(k)` and parentheses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, Result};
use crate::scalars::{CoeffRing, Poly, Scalar, ScalarKind};
use crate::superring::{SuperElement, SuperRing, SuperRingExt};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err(pos: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(err(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<SuperRing>,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<SuperElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperElement> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SuperElement> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SuperElement> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().1 {
            Tok::Num(n) => {
                let e = n.to_u32().ok_or_else(|| err(pos, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(err(pos, "exponent must be a non-negative integer literal")),
        }
    }

    fn scalar(&self, pos: usize, s: Result<Scalar>) -> Result<SuperElement> {
        s.map(|s| self.ring.constant(s)).map_err(|e| err(pos, e.to_string()))
    }

    fn atom(&mut self) -> Result<SuperElement> {
        let (pos, tok) = self.bump();
        let kind = self.ring.scalar_kind();
        match tok {
            Tok::Num(p) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let qpos = self.pos();
                    let Tok::Num(q) = self.bump().1 else {
                        return Err(err(qpos, "expected an integer denominator"));
                    };
                    if q == BigInt::from(0) {
                        return Err(err(qpos, "zero denominator"));
                    }
                    return self.scalar(pos, Scalar::from_rational(kind, &BigRational::new(p, q)));
                }
                self.scalar(pos, Scalar::from_rational(kind, &BigRational::from_integer(p)))
            }
            Tok::Ident(name) => {
                if let Ok(g) = self.ring.generator(&name) {
                    return Ok(g);
                }
                match name.as_str() {
                    "I" => self.scalar(pos, Scalar::imaginary_unit(kind)),
                    "sqrt" => {
                        self.expect(Tok::LParen, "`(` after sqrt")?;
                        let kpos = self.pos();
                        let Tok::Num(k) = self.bump().1 else {
                            return Err(err(kpos, "sqrt takes a non-negative integer literal"));
                        };
                        self.expect(Tok::RParen, "`)`")?;
                        let k = k.to_u64().ok_or_else(|| err(kpos, "sqrt argument too large"))?;
                        self.scalar(pos, Scalar::sqrt_int(kind, k))
                    }
                    _ => Err(AlgebraError::UnknownGenerator(format!("{name} (at position {pos})"))),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            other => Err(err(pos, format!("unexpected `{}`", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses `text` into a normal-form element of `ring`.
pub fn parse_element(ring: &Arc<SuperRing>, text: &str) -> Result<SuperElement> {
    let mut p = Parser { ring, toks: tokenize(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.pos(), format!("unexpected `{}`", describe(p.peek()))));
    }
    Ok(e)
}

/// Parses a polynomial over `coeffs` (no odd generators).
pub fn parse_poly(coeffs: &CoeffRing, text: &str) -> Result<Poly> {
    let ring = Arc::new(SuperRing::new(coeffs.clone(), &[])?);
    Ok(parse_element(&ring, text)?.coefficient(crate::multiindex::MultiIndex::EMPTY))
}

/// Parses a scalar constant such as `-3/4`, `1/2*I` or `2 + sqrt(3)`.
pub fn parse_scalar(kind: ScalarKind, text: &str) -> Result<Scalar> {
    let coeffs = CoeffRing::scalar(kind)?;
    let p = parse_poly(&coeffs, text)?;
    Ok(p.constant_term().cloned().unwrap_or_else(|| Scalar::zero(kind)))
}
