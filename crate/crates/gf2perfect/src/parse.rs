//! Text syntax for polynomials.
//!
//! The plain form is a sum of terms: `x^4+x^3+x^2+x+1`, with whitespace
//! ignored and duplicate terms cancelling (XOR semantics, so `x+x` is `0`).
//! The factored form the paper's tables are written in is also accepted:
//! juxtaposition multiplies and `^` raises parenthesized groups, e.g.
//! `x(x+1)^2(x^2+x+1)`. A `0x`-prefixed string is read as the hex form.

use crate::error::Error;
use crate::poly::Poly;

/// Largest exponent the parser accepts, to keep hostile inputs from
/// allocating unbounded coefficient vectors.
pub const MAX_PARSE_EXPONENT: u64 = 1 << 20;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.bump();
            acc += &self.product()?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(b'x' | b'0' | b'1' | b'(')) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.uint()?;
            if e > MAX_PARSE_EXPONENT {
                return Err(self.err(format!("exponent {e} exceeds {MAX_PARSE_EXPONENT}")));
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some(b'x') => {
                self.bump();
                Ok(Poly::x())
            }
            Some(b'1') => {
                self.bump();
                Ok(Poly::one())
            }
            Some(b'0') => {
                self.bump();
                Ok(Poly::zero())
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) => Err(self.err(format!(
                "expected a term ('x', '1', '0' or '('), found {:?}",
                c as char
            ))),
            None => Err(self.err("expected a term, found end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| self.err("exponent overflows u64"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an exponent"));
        }
        Ok(v)
    }
}

/// Parses either the text grammar or the `0x` hex form.
pub fn parse_poly(text: &str) -> Result<Poly, Error> {
    let trimmed = text.trim();
    if trimmed.starts_with("0x") || trimmed.starts_with("0X") {
        return Poly::from_hex(trimmed);
    }
    let mut p = Parser::new(text);
    let value = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected trailing input {:?}", c as char)));
    }
    Ok(value)
}

impl std::str::FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}
