//! Infix polynomial syntax: `2*x*z - y^2`, `1/2*x + (y - 1)^3`.
//! Division is only allowed by nonzero constants.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use super::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("expected {0} at offset {1}")]
    Expected(&'static str, usize),
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("exponent too large")]
    ExponentTooLarge,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
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
            let text: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Num(text.parse().map_err(|_| ParseError::UnexpectedChar(c, pos))?), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|(_, c)| *c).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, pos));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = if self.eat('-') { -self.term()? } else { self.eat('+'); self.term()? };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(ParseError::BadDivision);
                }
                acc = acc.scale(&d.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some((Tok::Num(e), _)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| ParseError::ExponentTooLarge)?;
                    if e > 1000 {
                        return Err(ParseError::ExponentTooLarge);
                    }
                    Ok(base.pow(e))
                }
                _ => Err(ParseError::Expected("exponent", self.offset())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let Some((tok, pos)) = self.toks.get(self.pos).cloned() else { return Err(ParseError::UnexpectedEnd) };
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Polynomial::constant(self.n(), Rational::from_integer(v))),
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(Polynomial::var(self.n(), i)),
                None => Err(ParseError::UnknownVariable(name)),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError::Expected("')'", self.offset()));
                }
                Ok(e)
            }
            Tok::Op('-') => Ok(-self.power()?),
            Tok::Op(c) => Err(ParseError::UnexpectedChar(c, pos)),
        }
    }
}

/// Parses a polynomial over the given variable names.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(match &p.toks[p.pos].0 {
            Tok::Op(c) => ParseError::UnexpectedChar(*c, p.toks[p.pos].1),
            _ => ParseError::Expected("operator", p.offset()),
        });
    }
    Ok(e)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let p = parse_polynomial(text, &[])?;
    Ok(p.constant_term())
}

#[cfg(test)]
pub(crate) fn names_of(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| String::from(*s)).collect()
}
