//! Textual scalar syntax: integers, `a/b`, `q(N,k)` for ζ_N^k, the binary
//! operators `+ - * /`, integer powers `^`, unary minus and parentheses.

use num_bigint::BigInt;

use super::{Cyclotomic, Rational, ScalarError};

pub fn parse_scalar(text: &str) -> Result<Cyclotomic, ScalarError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|e| match e {
                        ScalarError::DivisionByZero => {
                            ScalarError::Parse { offset: at, message: "division by zero".into() }
                        }
                        other => other,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclotomic, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Cyclotomic, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = if self.peek() == Some(b'(') {
                self.pos += 1;
                let e = self.signed_int()?;
                self.expect(b')')?;
                e
            } else {
                self.signed_int()?
            };
            return base.pow(e).map_err(|_| ScalarError::Parse {
                offset: at,
                message: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Cyclotomic, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.signed_int()?;
                if n < 1 {
                    return Err(self.error("root-of-unity order must be positive"));
                }
                self.expect(b',')?;
                let k = self.signed_int()?;
                self.expect(b')')?;
                Ok(Cyclotomic::root_of_unity(n as u64, k))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v = BigInt::parse_bytes(&self.src[start..self.pos], 10).expect("ascii digits");
                Ok(Cyclotomic::rational(&Rational::from_integer(v)))
            }
            Some(_) => Err(self.error("expected a number, q(N,k) or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(-self.unsigned_int()?)
        } else {
            self.unsigned_int()
        }
    }

    fn unsigned_int(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<i64>()
            .map_err(|_| ScalarError::Parse { offset: start, message: "integer out of range".into() })
    }
}
