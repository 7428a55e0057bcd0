//! Recursive-descent parser for polynomial expressions such as
//! `x^2*y - 3*(y + z)^2`. Products need an explicit `*`.

use crate::poly::{Poly, PolyRing};

#[derive(Debug, Clone, PartialEq)]
pub struct PolyParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Poly, PolyParseError> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, m: &str) -> PolyParseError {
        PolyParseError { offset: self.pos, message: m.to_string() }
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

    fn expr(&mut self) -> Result<Poly, PolyParseError> {
        let r = self.ring;
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                r.neg(&t)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.power()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64, PolyParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| PolyParseError { offset: start, message: "number too large".into() })
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let p = self.ring.field.characteristic() as u64;
                Ok(self.ring.constant((n % p) as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.names.iter().position(|n| n == name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(PolyParseError { offset: start, message: format!("unknown variable `{name}`") }),
                }
            }
            _ => Err(self.err("expected a variable, number or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    #[test]
    fn parses_and_prints() {
        let r = PolyRing {
            names: vec!["x".into(), "y".into(), "z".into()],
            field: PrimeField::default(),
            order: MonomialOrder::grevlex(3),
        };
        let p = parse_poly(&r, "y^2 - x*z").unwrap();
        assert_eq!(r.format(&p), "y^2 - x*z");
        let q = parse_poly(&r, "(x+y)^2 - x^2 - 2*x*y").unwrap();
        assert_eq!(q, r.mul(&r.var(1), &r.var(1)));
        assert!(parse_poly(&r, "x y").is_err());
        let e = parse_poly(&r, "x + w").unwrap_err();
        assert_eq!(e.offset, 4);
    }
}
