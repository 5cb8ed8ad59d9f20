//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' | 'y' | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and juxtaposition means multiplication.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BiPoly, PolyError, Rat};

/// Parses an expression with no limit on the y-degree.
pub fn parse_poly(text: &str) -> Result<BiPoly, PolyError> {
    Parser::new(text, None).parse()
}

/// Parses an expression, rejecting any intermediate or final y-degree above `max_y_degree`.
pub fn parse_poly_bounded(text: &str, max_y_degree: u32) -> Result<BiPoly, PolyError> {
    Parser::new(text, Some(max_y_degree)).parse()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    limit: Option<u32>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, limit: Option<u32>) -> Self {
        Self {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            limit,
            src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Byte offset of the current token in the original text.
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self.src.len(), |&(i, _)| i)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn parse(mut self) -> Result<BiPoly, PolyError> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err(format!("unexpected `{}`", self.peek().unwrap()));
        }
        self.check_degree(p.deg_y().unwrap_or(0) as u64)?;
        Ok(p)
    }

    fn check_degree(&self, degree: u64) -> Result<(), PolyError> {
        match self.limit {
            Some(limit) if degree > limit as u64 => Err(PolyError::DegreeLimit { degree, limit }),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<BiPoly, PolyError> {
        let negate_first = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate_first { -first } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: char) -> bool {
        c == '(' || c.is_ascii_digit() || c.is_alphabetic()
    }

    fn term(&mut self) -> Result<BiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if Self::starts_factor(c) => {}
                _ => return Ok(acc),
            }
            let rhs = self.factor()?;
            self.check_degree(acc.deg_y().unwrap_or(0) as u64 + rhs.deg_y().unwrap_or(0) as u64)?;
            acc = &acc * &rhs;
        }
    }

    fn factor(&mut self) -> Result<BiPoly, PolyError> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return self.err("expected a nonnegative integer exponent");
        }
        let exp: u32 = match digits.parse() {
            Ok(e) => e,
            Err(_) => {
                self.pos = start;
                return self.err("exponent too large");
            }
        };
        self.check_degree(base.deg_y().unwrap_or(0) as u64 * exp as u64)?;
        Ok(base.pow(exp))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn base(&mut self) -> Result<BiPoly, PolyError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some('y') => {
                self.pos += 1;
                Ok(BiPoly::y())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digit string");
                let mut value = Rat::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return self.err("expected a denominator");
                    }
                    let den: BigInt = den.parse().expect("digit string");
                    if den.is_zero() {
                        self.pos = den_pos;
                        return self.err("zero denominator");
                    }
                    value /= Rat::from_integer(den);
                }
                Ok(BiPoly::constant(value))
            }
            Some(c) if c.is_alphabetic() => Err(PolyError::UnknownVariable {
                name: c,
                pos: self.offset(),
            }),
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}
