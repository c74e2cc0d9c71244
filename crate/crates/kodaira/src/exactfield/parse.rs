//! Recursive-descent parser for the textual form of values.
//!
//! Grammar: sums and differences of products of rationals, symbols
//! (`name` or `name^k`) and parenthesized subexpressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::NumberRing;
use super::value::NumberValue;
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a NumberRing,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<NumberValue> {
        let mut acc = NumberValue::zero(self.ring);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NumberValue> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn factor(&mut self) -> Result<NumberValue> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.peek();
                    self.integer()?
                } else {
                    BigInt::from(1)
                };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(NumberValue::rational(self.ring, BigRational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let s = self.ring.symbol(&name)?;
                if self.peek() != Some('^') {
                    return Ok(s);
                }
                self.pos += 1;
                let negative = self.peek() == Some('-');
                if negative {
                    self.pos += 1;
                }
                self.peek();
                let e: u32 = self.integer()?.try_into().map_err(|_| self.err("exponent too large"))?;
                let p = s.pow(e);
                if negative {
                    p.inverse()
                } else {
                    Ok(p)
                }
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}

pub(crate) fn parse_value(ring: &NumberRing, text: &str) -> Result<NumberValue> {
    let mut p = Parser { ring, chars: text.chars().collect(), pos: 0 };
    if p.peek().is_none() {
        return Err(Error::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}
