//! Recursive-descent parser for the small polynomial expressions used by the
//! `.arr` and `.fam` formats.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'] factor)*        juxtaposition multiplies
//! factor  := '-' factor | power
//! power   := primary ['^' integer]
//! primary := number | ident | '(' expr ')'
//! number  := digits ['/' digits]
//! ident   := single letter; `i` is the imaginary unit
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{GaussianRational, Rational};

/// Values an expression can evaluate into.
pub trait Algebra: Sized + Clone {
    fn constant(c: GaussianRational) -> Self;
    /// `None` rejects the identifier.
    fn variable(name: char) -> Option<Self>;
    fn add(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn mul(self, rhs: Self) -> std::result::Result<Self, String>;
    fn pow(self, e: u32) -> std::result::Result<Self, String>;
    fn sub(self, rhs: Self) -> Self {
        self.add(rhs.neg())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Ident(char),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let mut value = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
                let mut small = num.parse::<u32>().ok();
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: String = chars[ds..i].iter().collect();
                    let den = den.parse::<BigInt>().expect("digits");
                    if den.is_zero() {
                        return Err(perr(col, "zero denominator"));
                    }
                    value = Rational::new(value.numer().clone(), den);
                    small = None;
                }
                match small {
                    Some(n) => out.push((Tok::Int(n), col)),
                    None => out.push((Tok::Num(value), col)),
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => out.push((Tok::Ident(c), col)),
            other => return Err(perr(col, &format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

fn perr(column: usize, message: &str) -> Error {
    Error::Parse { line: 1, column, message: message.to_string() }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn expr<A: Algebra>(&mut self) -> Result<A> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term::<A>()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<A: Algebra>(&mut self) -> Result<A> {
        let mut acc = self.factor::<A>()?;
        loop {
            let col = self.col();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(rhs).map_err(|m| perr(col, &m))?;
                }
                Some(Tok::Num(_)) | Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = acc.mul(rhs).map_err(|m| perr(col, &m))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<A: Algebra>(&mut self) -> Result<A> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.factor::<A>()?.neg());
        }
        self.power()
    }

    fn power<A: Algebra>(&mut self) -> Result<A> {
        let base = self.primary::<A>()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    return base.pow(e).map_err(|m| perr(col, &m));
                }
                _ => return Err(perr(col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary<A: Algebra>(&mut self) -> Result<A> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(A::constant(GaussianRational::from_int(i64::from(n))))
            }
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(A::constant(GaussianRational::real(r)))
            }
            Some(Tok::Ident('i')) => {
                self.pos += 1;
                Ok(A::constant(GaussianRational::i()))
            }
            Some(Tok::Ident(c)) => {
                self.pos += 1;
                A::variable(c).ok_or_else(|| perr(col, &format!("unknown variable `{c}`")))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(perr(self.col(), "expected `)`")),
                }
            }
            Some(t) => Err(perr(col, &format!("unexpected token {}", describe(&t)))),
            None => Err(perr(col, "unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(r) => format!("`{r}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(c) => format!("`{c}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses a whole expression; column numbers in errors are 1-based within
/// `src`.
pub fn parse<A: Algebra>(src: &str) -> Result<A> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(perr(1, "empty expression"));
    }
    let mut p = Parser { toks: &toks, pos: 0, end_col: src.chars().count() + 1 };
    let value = p.expr()?;
    if p.pos != toks.len() {
        let t = &toks[p.pos];
        return Err(perr(t.1, &format!("unexpected token {}", describe(&t.0))));
    }
    Ok(value)
}

/// A constant, used for coefficient literals such as `3+1/2i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constant(pub GaussianRational);

impl Algebra for Constant {
    fn constant(c: GaussianRational) -> Self {
        Constant(c)
    }
    fn variable(_: char) -> Option<Self> {
        None
    }
    fn add(self, rhs: Self) -> Self {
        Constant(&self.0 + &rhs.0)
    }
    fn neg(self) -> Self {
        Constant(-self.0)
    }
    fn mul(self, rhs: Self) -> std::result::Result<Self, String> {
        Ok(Constant(&self.0 * &rhs.0))
    }
    fn pow(self, e: u32) -> std::result::Result<Self, String> {
        Ok(Constant(self.0.pow(e)))
    }
}

/// `a·x + b·y + c` with multiplication restricted to keep the degree ≤ 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
}

impl LinearForm {
    fn is_constant(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn scale(&self, k: &GaussianRational) -> LinearForm {
        LinearForm { a: &self.a * k, b: &self.b * k, c: &self.c * k }
    }
}

impl Algebra for LinearForm {
    fn constant(c: GaussianRational) -> Self {
        LinearForm { a: GaussianRational::zero(), b: GaussianRational::zero(), c }
    }
    fn variable(name: char) -> Option<Self> {
        let one = GaussianRational::one;
        let zero = GaussianRational::zero;
        match name {
            'x' => Some(LinearForm { a: one(), b: zero(), c: zero() }),
            'y' => Some(LinearForm { a: zero(), b: one(), c: zero() }),
            _ => None,
        }
    }
    fn add(self, rhs: Self) -> Self {
        LinearForm { a: &self.a + &rhs.a, b: &self.b + &rhs.b, c: &self.c + &rhs.c }
    }
    fn neg(self) -> Self {
        LinearForm { a: -self.a, b: -self.b, c: -self.c }
    }
    fn mul(self, rhs: Self) -> std::result::Result<Self, String> {
        if self.is_constant() {
            Ok(rhs.scale(&self.c))
        } else if rhs.is_constant() {
            Ok(self.scale(&rhs.c))
        } else {
            Err("nonlinear term".into())
        }
    }
    fn pow(self, e: u32) -> std::result::Result<Self, String> {
        match e {
            0 => Ok(LinearForm::constant(GaussianRational::one())),
            1 => Ok(self),
            _ if self.is_constant() => Ok(LinearForm::constant(self.c.pow(e))),
            _ => Err("nonlinear term".into()),
        }
    }
}
