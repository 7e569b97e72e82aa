//! Expression syntax for elements.
//!
//! ```text
//! sum     := unary (('+' | '-') unary)*
//! unary   := '-' unary | product
//! product := postfix (('.' | '·' | '/' | <juxtaposition>) postfix)*
//! postfix := atom '*'*
//! atom    := 's' digit | 'I' | integer | 'i' | 'sqrt2' | '(' sum ')'
//! ```
//!
//! `/` divides by a non-zero scalar, so `1/2` and `(1/sqrt2)(s1 + s2)` are
//! ordinary expressions.

use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Generator(u8),
    Identity,
    Integer(BigInt),
    ImaginaryUnit,
    Sqrt2,
    Adjoint(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Generator(u8),
    Identity,
    Integer(BigInt),
    ImaginaryUnit,
    Sqrt2,
    Star,
    Dot,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        let start = pos;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let single = match c {
            '*' | '†' => Some(Token::Star),
            '.' | '·' => Some(Token::Dot),
            '/' => Some(Token::Slash),
            '+' => Some(Token::Plus),
            '-' | '−' => Some(Token::Minus),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            'I' => Some(Token::Identity),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((start, Token::Integer(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let word: String = chars[start..pos].iter().collect();
            let token = match word.as_str() {
                "i" => Token::ImaginaryUnit,
                "sqrt2" => Token::Sqrt2,
                w if w.len() >= 2 && w.starts_with('s') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    match w[1..].parse::<u8>() {
                        Ok(n @ 1..=9) => Token::Generator(n),
                        _ => return Err(parse_error(start, format!("generator index out of range in '{}'", w))),
                    }
                }
                w => return Err(parse_error(start, format!("unknown identifier '{}'", w))),
            };
            out.push((start, token));
            continue;
        }
        return Err(parse_error(start, format!("unexpected character '{}'", c)));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.index).map(|(_, t)| t.clone());
        self.index += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.product()
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Token::Generator(_)
                    | Token::Identity
                    | Token::Integer(_)
                    | Token::ImaginaryUnit
                    | Token::Sqrt2
                    | Token::LParen
            )
        )
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.postfix()?;
        loop {
            match self.peek() {
                Some(Token::Dot) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.postfix()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.postfix()?));
                }
                _ if self.starts_atom() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.postfix()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            e = Expr::Adjoint(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.position();
        match self.bump() {
            Some(Token::Generator(n)) => Ok(Expr::Generator(n)),
            Some(Token::Identity) => Ok(Expr::Identity),
            Some(Token::Integer(n)) => Ok(Expr::Integer(n)),
            Some(Token::ImaginaryUnit) => Ok(Expr::ImaginaryUnit),
            Some(Token::Sqrt2) => Ok(Expr::Sqrt2),
            Some(Token::LParen) => {
                let inner = self.sum()?;
                let close = self.position();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(parse_error(close, "expected ')'")),
                }
            }
            Some(t) => Err(parse_error(pos, format!("unexpected token {:?}", t))),
            None => Err(parse_error(pos, "unexpected end of input")),
        }
    }
}

/// Parses text into an expression tree without evaluating it.
pub fn parse_ast(text: &str) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        index: 0,
        end: text.chars().count(),
    };
    let e = p.sum()?;
    if p.index < p.tokens.len() {
        return Err(parse_error(p.position(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Largest generator index mentioned, or 0.
    pub fn max_generator(&self) -> u8 {
        match self {
            Expr::Generator(n) => *n,
            Expr::Identity | Expr::Integer(_) | Expr::ImaginaryUnit | Expr::Sqrt2 => 0,
            Expr::Adjoint(x) | Expr::Neg(x) => x.max_generator(),
            Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.max_generator().max(b.max_generator())
            }
        }
    }

    pub fn evaluate(&self, d: usize) -> Result<Element> {
        let scalar = |c: Scalar| Element::scalar(d, c);
        Ok(match self {
            Expr::Generator(n) => Element::generator(d, *n as usize)?,
            Expr::Identity => Element::identity(d),
            Expr::Integer(n) => scalar(Scalar::from_rational(BigRational::from_integer(n.clone()))),
            Expr::ImaginaryUnit => scalar(Scalar::i()),
            Expr::Sqrt2 => scalar(Scalar::sqrt2()),
            Expr::Adjoint(x) => x.evaluate(d)?.adjoint(),
            Expr::Neg(x) => x.evaluate(d)?.scale(&Scalar::from_int(-1)),
            Expr::Mul(a, b) => a.evaluate(d)?.checked_mul(&b.evaluate(d)?)?,
            Expr::Div(a, b) => {
                let divisor = as_scalar(&b.evaluate(d)?).ok_or_else(|| {
                    Error::InvalidArgument(format!("divisor '{}' is not a scalar", b))
                })?;
                a.evaluate(d)?.scale(&divisor.inv()?)
            }
            Expr::Add(a, b) => a.evaluate(d)?.checked_add(&b.evaluate(d)?)?,
            Expr::Sub(a, b) => a.evaluate(d)?.checked_sub(&b.evaluate(d)?)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Adjoint(_) => 4,
            _ => 5,
        }
    }
}

/// The scalar `c` when `x = c I` (including `x = 0`).
fn as_scalar(x: &Element) -> Option<Scalar> {
    let x = x.normalize();
    let identity = Monomial::identity();
    if x.terms().all(|(m, _)| *m == identity) {
        Some(x.coefficient(&identity).cloned().unwrap_or_else(Scalar::zero))
    } else {
        None
    }
}

struct Operand<'a>(&'a Expr, u8);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Generator(n) => write!(f, "s{}", n),
            Expr::Identity => write!(f, "I"),
            Expr::Integer(n) => write!(f, "{}", n),
            Expr::ImaginaryUnit => write!(f, "i"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::Adjoint(x) => write!(f, "{}*", Operand(x, 4)),
            Expr::Neg(x) => write!(f, "-{}", Operand(x, 2)),
            Expr::Mul(a, b) => write!(f, "{} {}", Operand(a, 3), Operand(b, 4)),
            Expr::Div(a, b) => write!(f, "{} / {}", Operand(a, 3), Operand(b, 4)),
            Expr::Add(a, b) => write!(f, "{} + {}", Operand(a, 1), Operand(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Operand(a, 1), Operand(b, 2)),
        }
    }
}

/// Parses and evaluates over `d = max(2, largest generator index)`.
pub fn parse_expression(text: &str) -> Result<Element> {
    let e = parse_ast(text)?;
    e.evaluate((e.max_generator() as usize).max(2))
}

/// Parses and evaluates over a fixed `d`, rejecting larger generator indices.
pub fn parse_expression_with_d(text: &str, d: usize) -> Result<Element> {
    if d < 2 {
        return Err(Error::InvalidGeneratorCount(d));
    }
    for (pos, t) in lex(text)? {
        if let Token::Generator(n) = t {
            if n as usize > d {
                return Err(parse_error(pos, format!("generator s{} exceeds d = {}", n, d)));
            }
        }
    }
    parse_ast(text)?.evaluate(d)
}
