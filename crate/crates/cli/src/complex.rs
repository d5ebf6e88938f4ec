// Copyright 2026 The lqw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Complex literals such as `0.5-0.5i`, `i/2`, `1/sqrt(2)` or
//! `(1+sqrt(2)i)/2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*     juxtaposition multiplies
//! unary  := ('+' | '-') unary | atom
//! atom   := number | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
//! number := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//!
//! Division by `sqrt(y)` with real positive `y` is evaluated as
//! multiplication by `sqrt(1/y)`, which is the correctly rounded value for
//! `1/sqrt(2)`.

use lqw_core::C64;
use thiserror::Error;

const GRAMMAR: &str =
    "a, bi, a+bi or a-bi built from decimals, '/', '*', parentheses, i and sqrt(...)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid complex literal {text:?} at position {position}: expected {expected} (grammar: {GRAMMAR})")]
pub struct ParseComplexError {
    pub text: String,
    /// Byte offset of the offending character.
    pub position: usize,
    pub expected: &'static str,
}

pub fn parse_complex(text: &str) -> Result<C64, ParseComplexError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let v = p.expr()?.value();
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("an operator or end of input"));
    }
    Ok(v)
}

/// Lossless textual form accepted by [`parse_complex`].
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{sign}{:?}i", z.re, z.im.abs())
}

/// Values remember whether they came straight from `sqrt(y)` so that a
/// following division can use `sqrt(1/y)`.
#[derive(Clone, Copy)]
enum Value {
    Plain(C64),
    Sqrt { radicand: f64, value: C64 },
}

impl Value {
    fn value(self) -> C64 {
        match self {
            Value::Plain(v) | Value::Sqrt { value: v, .. } => v,
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &'static str) -> ParseComplexError {
        ParseComplexError {
            text: self.text.to_string(),
            position: self.pos,
            expected,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Value, ParseComplexError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?.value();
            let lhs = acc.value();
            acc = Value::Plain(if op == b'+' { lhs + rhs } else { lhs - rhs });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseComplexError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Value::Plain(acc.value() * self.unary()?.value());
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let divisor = self.unary()?;
                    acc = Value::Plain(match divisor {
                        Value::Sqrt { radicand, .. } if radicand > 0.0 => {
                            acc.value() * (1.0 / radicand).sqrt()
                        }
                        d => {
                            let d = d.value();
                            if d == C64::new(0.0, 0.0) {
                                self.pos = at;
                                return Err(self.error("a non-zero divisor"));
                            }
                            acc.value() / d
                        }
                    });
                }
                Some(c)
                    if c.is_ascii_digit() || c == b'.' || c == b'i' || c == b's' || c == b'(' =>
                {
                    acc = Value::Plain(acc.value() * self.atom()?.value());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseComplexError> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Value::Plain(-self.unary()?.value()))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseComplexError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(Value::Plain(v.value()))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Value::Plain(C64::new(0.0, 1.0)))
            }
            Some(b's') => {
                if !self.text[self.pos..].starts_with("sqrt") {
                    return Err(self.error("a number, 'i', 'sqrt(' or '('"));
                }
                self.pos += 4;
                self.expect(b'(', "'(' after sqrt")?;
                let at = self.pos;
                let arg = self.expr()?.value();
                self.expect(b')', "')'")?;
                if arg.im != 0.0 || arg.re < 0.0 {
                    self.pos = at;
                    return Err(self.error("a real, non-negative sqrt argument"));
                }
                Ok(Value::Sqrt {
                    radicand: arg.re,
                    value: C64::new(arg.re.sqrt(), 0.0),
                })
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            _ => Err(self.error("a number, 'i', 'sqrt(' or '('")),
        }
    }

    fn expect(&mut self, c: u8, expected: &'static str) -> Result<(), ParseComplexError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<Value, ParseComplexError> {
        let start = self.pos;
        let mut count = self.digits();
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += self.digits();
        }
        if count == 0 {
            return Err(self.error("a digit"));
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return Err(self.error("exponent digits"));
            }
        }
        let v: f64 = self.text[start..self.pos].parse().map_err(|_| {
            let mut e = self.error("a decimal number");
            e.position = start;
            e
        })?;
        Ok(Value::Plain(C64::new(v, 0.0)))
    }
}
