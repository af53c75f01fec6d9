//! Polynomial expressions over a finite field.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//!
//! `z` is the generator of GF(p^k) for k > 1. Integers are reduced mod p.

use crate::error::{Error, Result};
use crate::ffield::{BivarPoly, FFPoly, FiniteField};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FiniteField,
}

const ATOM_START: &[&str] = &["integer", "x", "y", "z", "(", "-"];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BivarPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(&BivarPoly::zero(self.field) - &v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer().ok_or_else(|| self.error(&["integer"]))?;
            let e = u64::try_from(e).map_err(|_| self.error(&["integer"]))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<u128> {
        let start = self.pos;
        let mut v: u128 = 0;
        while let Some(d) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v.checked_mul(10)?.checked_add((d - b'0') as u128)?;
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        let k = self.field;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivarPoly::x(k))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivarPoly::y(k))
            }
            Some(b'z') if k.degree() > 1 => {
                self.pos += 1;
                Ok(BivarPoly::constant(k.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(&[")", "+", "-", "*", "^"]));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.integer().ok_or(Error::Parse {
                    offset: start,
                    expected: vec!["integer".into()],
                })?;
                let r = (n % k.p() as u128) as i64;
                Ok(BivarPoly::constant(k.from_int(r)))
            }
            _ => {
                let exp: Vec<&str> = ATOM_START
                    .iter()
                    .copied()
                    .filter(|s| *s != "z" || k.degree() > 1)
                    .collect();
                Err(self.error(&exp))
            }
        }
    }
}

/// Parses a polynomial in `x`, `y` (and `z` in non-prime fields).
pub fn parse_poly(src: &str, field: &FiniteField) -> Result<BivarPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error(&["+", "-", "*", "^", "end of input"]));
    }
    Ok(v)
}

/// Parses a polynomial in `x` alone.
pub fn parse_univariate(src: &str, field: &FiniteField) -> Result<FFPoly> {
    let v = parse_poly(src, field)?;
    if v.deg_y().unwrap_or(0) > 0 {
        return Err(Error::InvalidArgument(format!("{src:?} involves y")));
    }
    Ok(v.coeff_y(0))
}

/// Parses a field element (an expression free of `x` and `y`).
pub fn parse_element(src: &str, field: &FiniteField) -> Result<crate::ffield::FFElem> {
    let v = parse_univariate(src, field)?;
    if v.degree().unwrap_or(0) > 0 {
        return Err(Error::InvalidArgument(format!("{src:?} is not a constant")));
    }
    Ok(v.coeff(0))
}
