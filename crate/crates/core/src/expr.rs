//! Expressions for Koszul elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := int | gen | '(' expr ')'
//! gen    := 'a' digits | 't' '_'? name
//! ```
//!
//! Every `*` is the twisted product; `a1*a2*a3` with increasing indices is
//! the plain exterior monomial. Juxtaposition is an error.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::chain::BigradedComplex;
use crate::error::Error;
use crate::integer::Integer;
use crate::koszul::{KoszulComplex, KoszulElement};
use crate::product::TwistingData;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(Integer),
    /// `a<i>`, 1-based as written.
    Alpha(usize),
    /// `t_<name>`
    Poly(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(Integer),
    Alpha(usize),
    Poly(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Token::Plus, column)),
            '-' => out.push((Token::Minus, column)),
            '*' => out.push((Token::Star, column)),
            '^' => out.push((Token::Caret, column)),
            '(' => out.push((Token::Open, column)),
            ')' => out.push((Token::Close, column)),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value: Integer = digits.parse().expect("ascii digits");
                out.push((Token::Int(value), column));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push((generator(&word, column)?, column));
                continue;
            }
            other => {
                return Err(Error::Syntax { column, message: format!("unexpected character '{other}'") });
            }
        }
        i += 1;
    }
    Ok(out)
}

fn generator(word: &str, column: usize) -> Result<Token, Error> {
    let unknown = || Error::UnknownGenerator(format!("{word} (column {column})"));
    if let Some(rest) = word.strip_prefix('a') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let index: usize = rest.parse().map_err(|_| unknown())?;
            if index == 0 {
                return Err(unknown());
            }
            return Ok(Token::Alpha(index));
        }
    }
    if let Some(rest) = word.strip_prefix('t') {
        let name = rest.strip_prefix('_').unwrap_or(rest);
        if !name.is_empty() {
            return Ok(Token::Poly(name.to_string()));
        }
    }
    Err(unknown())
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { column: self.column(), message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    let exp = n.to_i64().filter(|&e| e <= u32::MAX as i64).ok_or_else(|| self.error("exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), exp as u32));
                }
                _ => return Err(self.error("expected a natural number after '^'")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let token = self.peek().cloned();
        match token {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Alpha(i)) => {
                self.pos += 1;
                Ok(Expr::Alpha(i))
            }
            Some(Token::Poly(name)) => {
                self.pos += 1;
                Ok(Expr::Poly(name))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(Token::Minus) => Err(self.error("unary minus is not supported; write 0 - x")),
            Some(_) => Err(self.error("expected a number, a generator or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses an expression; errors carry 1-based columns.
pub fn parse(text: &str) -> Result<Expr, Error> {
    let tokens = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        let message = match p.peek() {
            Some(Token::Close) => "unbalanced ')'",
            _ => "expected an operator; juxtaposition is not multiplication",
        };
        return Err(p.error(message));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(n) => write!(f, "{n}")?,
            Expr::Alpha(i) => write!(f, "a{i}")?,
            Expr::Poly(name) => write!(f, "t_{name}")?,
            Expr::Add(a, b) => {
                a.write(f, 1)?;
                f.write_str(" + ")?;
                b.write(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(" - ")?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str("*")?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, e) => {
                a.write(f, 4)?;
                write!(f, "^{e}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Evaluates with `*` as the twisted product.
    pub fn evaluate<R: Ring>(&self, k: &KoszulComplex<R>, tw: &TwistingData<R::Elem>) -> Result<KoszulElement<R::Elem>, Error> {
        let ring = k.ring();
        Ok(match self {
            Expr::Int(n) => k.scalar(ring.from_integer(n)),
            Expr::Alpha(i) => k.alpha(i - 1)?,
            Expr::Poly(name) => {
                let v = k.complex().vertex_index(name).ok_or_else(|| Error::UnknownGenerator(format!("t_{name}")))?;
                k.t(v)
            }
            Expr::Add(a, b) => a.evaluate(k, tw)?.add(ring, &b.evaluate(k, tw)?),
            Expr::Sub(a, b) => a.evaluate(k, tw)?.sub(ring, &b.evaluate(k, tw)?),
            Expr::Mul(a, b) => k.star_multiply(tw, &a.evaluate(k, tw)?, &b.evaluate(k, tw)?)?,
            Expr::Pow(a, e) => {
                let base = a.evaluate(k, tw)?;
                let mut acc = k.one();
                for _ in 0..*e {
                    acc = k.star_multiply(tw, &acc, &base)?;
                }
                acc
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Parses and evaluates in one step.
pub fn evaluate<R: Ring>(text: &str, k: &KoszulComplex<R>, tw: &TwistingData<R::Elem>) -> Result<KoszulElement<R::Elem>, Error> {
    parse(text)?.evaluate(k, tw)
}
