//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] (INT | VAR | '(' expr ')') ['^' INT]
//! ```
//!
//! `^` binds tightest, so `-x^2` is `-(x^2)`. Juxtaposition is rejected:
//! products need an explicit `*`. Offsets in errors are byte offsets.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{PolyRing, Polynomial};

pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.unexpected());
    }
    Ok(value)
}

/// Splits a comma-separated generator list and parses each entry. Offsets in
/// errors are relative to the start of `text`.
pub fn parse_polynomial_list<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    let bytes = text.as_bytes();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if !at_end {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                _ => {}
            }
        }
        if at_end || (bytes[i] == b',' && depth == 0) {
            let piece = &text[start..i];
            if piece.trim().is_empty() {
                if at_end && out.is_empty() && start == 0 {
                    return Ok(out);
                }
                return Err(Error::Syntax {
                    offset: start,
                    message: "empty list entry".into(),
                });
            }
            out.push(parse_polynomial(piece, ring).map_err(|e| shift(e, start))?);
            start = i + 1;
        }
    }
    Ok(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax {
            offset: offset + by,
            message,
        },
        Error::UndeclaredVariable { name, offset } => Error::UndeclaredVariable {
            name,
            offset: offset + by,
        },
        Error::BadExponent { offset } => Error::BadExponent { offset: offset + by },
        other => other,
    }
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing<F>>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> Error {
        match self.src.get(self.pos) {
            Some(&c) => Error::Syntax {
                offset: self.pos,
                message: format!("unexpected `{}`", c as char),
            },
            None => Error::Syntax {
                offset: self.pos,
                message: "unexpected end of input".into(),
            },
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    // juxtaposition such as `2x` or `x y`
                    return Err(Error::Syntax {
                        offset: self.pos,
                        message: "implicit multiplication is not allowed; use `*`".into(),
                    });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(Error::BadExponent { offset: start });
            }
            let k: u32 = digits.parse().map_err(|_| Error::BadExponent { offset: start })?;
            base = base.pow(k);
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().expect("digit run");
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UndeclaredVariable { name, offset: start }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}
