//! Plain-text polynomial syntax, e.g. `(y-1)*(m^2+m^-2) + y^2 - 3*y + 3`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! atom   := number | variable | '(' expr ')'
//! ```
//!
//! Numbers are exact (integers, decimals). Division and negative powers are
//! only allowed by monomials, so results stay Laurent polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeff::Rational;
use super::laurent::QPoly;
use crate::error::{Error, Result};

pub fn parse_poly<S: AsRef<str>>(src: &str, vars: &[S]) -> Result<QPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, like: QPoly::zero(vars) };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    like: QPoly,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = &acc * &monomial_inverse(&d).ok_or_else(|| {
                    Error::parse(at, "division is only allowed by a nonzero monomial")
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = self.exponent()?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            let inv = monomial_inverse(&base)
                .ok_or_else(|| Error::parse(at, "negative power of a non-monomial"))?;
            Ok(inv.pow(e.unsigned_abs()))
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        if self.eat(b'(') {
            let e = self.exponent()?;
            if !self.eat(b')') {
                return Err(Error::parse(self.pos, "expected `)` after exponent"));
            }
            return Ok(e);
        }
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: i32 = text.parse().map_err(|_| Error::parse(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .like
                    .var_index(name)
                    .map_err(|_| Error::parse(start, format!("unknown variable `{name}`")))?;
                let mut e = vec![0; self.like.nvars()];
                e[i] = 1;
                Ok(self.like.monomial_like(e, Rational::one()))
            }
            Some(_) => Err(Error::parse(self.pos, "unexpected character")),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<QPoly> {
        let start = self.pos;
        let mut int = String::new();
        let mut frac = String::new();
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int.push(self.src[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac.push(self.src[self.pos] as char);
                self.pos += 1;
            }
        }
        if int.is_empty() && frac.is_empty() {
            return Err(Error::parse(start, "malformed number"));
        }
        let digits: BigInt = format!("{int}{frac}").parse().expect("digits");
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        Ok(self.like.constant_like(Rational::new(digits, denom)))
    }
}

fn monomial_inverse(p: &QPoly) -> Option<QPoly> {
    if !p.is_monomial() {
        return None;
    }
    let (e, c) = p.leading_term()?;
    if c.is_zero() {
        return None;
    }
    let neg: Vec<i32> = e.iter().map(|k| -k).collect();
    Some(p.monomial_like(neg, c.recip()))
}
