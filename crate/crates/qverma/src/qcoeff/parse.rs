//! Recursive-descent parser for coefficient expressions.
//!
//! Grammar: integer literals, the symbol `q`, `q^<int>` with negative
//! exponents, operators `+ - * /` and parentheses. Whitespace is
//! insignificant.

use super::{CoeffError, RationalQ};

pub fn parse(text: &str) -> Result<RationalQ, CoeffError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalQ, CoeffError> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.term()?
        };
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

    fn term(&mut self) -> Result<RationalQ, CoeffError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|_| self.err("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalQ, CoeffError> {
        let negate = self.eat(b'-');
        let base = self.atom()?;
        let value = if self.eat(b'^') {
            let e = self.int()?;
            base.pow(e).map_err(|_| self.err("zero raised to a negative power"))?
        } else {
            base
        };
        Ok(if negate { -&value } else { value })
    }

    fn atom(&mut self) -> Result<RationalQ, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.eat(b'(');
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'q') => {
                self.pos += 1;
                self.skip_ws();
                Ok(RationalQ::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(RationalQ::from_int(n))
            }
            _ => Err(self.err("expected a number, 'q' or '('")),
        }
    }

    fn int(&mut self) -> Result<i64, CoeffError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: i64 = digits
            .parse()
            .map_err(|_| self.err("integer literal out of range"))?;
        self.skip_ws();
        Ok(if neg { -value } else { value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::q_number;

    #[test]
    fn parses_laurent_expression() {
        let x = parse("q^2 - 2 + q^-2").unwrap();
        let y = parse("(q - q^-1)^2").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn parses_quotients() {
        let x = parse("(q^2 - q^-2) / (q - q^-1)").unwrap();
        assert_eq!(x, q_number(2));
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse("q^2 + + 1") {
            Err(CoeffError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            parse("1/(q - q)"),
            Err(CoeffError::Syntax { .. })
        ));
    }
}
