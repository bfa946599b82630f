//! Canonical text form: `b_3^(1) - ap_3*b_3^2`, `3/2*r_1*r_2^(2)`.

use super::frac::DiffFrac;
use super::indet::{Derivative, DiffIndet, IndetClass};
use super::poly::{DiffPoly, Monomial};
use crate::error::{Error, Result};
use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (k, (d, e)) in m.factors().iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        write!(f, "{d}")?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        write_monomial(f, self)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({})/({})", self.numer(), self.denom())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
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
    Prime,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
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
            '\'' => Tok::Prime,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            _ => return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

pub fn parse_indet(name: &str) -> Option<DiffIndet> {
    let (prefix, idx) = name.rsplit_once('_')?;
    let class = IndetClass::from_prefix(prefix)?;
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(DiffIndet::new(class, idx.parse().ok()?))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.at(), msg: msg.to_string() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.to_u32().map_or_else(|| self.err("exponent too large"), Ok)
            }
            _ => self.err("expected integer"),
        }
    }

    fn expr(&mut self) -> Result<DiffFrac> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffFrac> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(&Tok::Slash) {
                let at = self.at();
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<DiffFrac> {
        if self.eat(&Tok::Minus) {
            return Ok(self.factor()?.neg());
        }
        if self.eat(&Tok::Plus) {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.small_int()?;
            let mut p = DiffFrac::one();
            for _ in 0..e {
                p = p.mul(&base);
            }
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffFrac> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(DiffFrac::from_poly(DiffPoly::constant(Q::from_integer(n))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let Some(u) = parse_indet(&name) else { return self.err(&format!("unknown indeterminate {name}")) };
                self.pos += 1;
                let mut order = 0;
                while self.eat(&Tok::Prime) {
                    order += 1;
                }
                if order == 0
                    && self.peek() == Some(&Tok::Caret)
                    && self.toks.get(self.pos + 1).map(|(_, t)| t) == Some(&Tok::LParen)
                {
                    self.pos += 2;
                    order = self.small_int()?;
                    if !self.eat(&Tok::RParen) {
                        return self.err("expected ')' after derivative order");
                    }
                }
                Ok(DiffFrac::from_poly(DiffPoly::var(Derivative { indet: u, order })))
            }
            _ => self.err("expected a number, indeterminate or '('"),
        }
    }
}

/// Parses an expression that may contain divisions by polynomials.
pub fn parse_frac(s: &str) -> Result<DiffFrac> {
    let mut p = Parser { toks: lex(s)?, pos: 0, len: s.len() };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(s: &str) -> Result<DiffPoly> {
    parse_frac(s)?.as_poly().ok_or(Error::NotPolynomial)
}

impl std::str::FromStr for DiffPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}
