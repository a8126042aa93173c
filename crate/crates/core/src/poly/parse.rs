//! Polynomial expression parser: `+ - * / ^`, parentheses, integer and
//! decimal-free rational literals, ring variables and field generator names.

use num_bigint::BigInt;

use super::mpoly::{Poly, PolyRing};
use crate::arith::field::{Elem, Field, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

pub fn parse_poly(ring: &PolyRing, s: &str) -> Result<Poly> {
    parse_poly_at(ring, s).map_err(|e| Error::Usage(format!("at offset {}: {}", e.offset, e.message)))
}

pub fn parse_poly_at(ring: &PolyRing, s: &str) -> std::result::Result<Poly, PolyParseError> {
    let mut p = Parser { ring, src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Element named `name` in the tower of `k` (extension generators and
/// function-field variables).
pub fn field_symbol(k: &Field, name: &str) -> Option<Elem> {
    match k {
        Field::Ext(e) => {
            if e.name == name {
                k.generator().ok()
            } else {
                field_symbol(&e.base, name).map(|b| k.embed(&b))
            }
        }
        Field::Frac(f) => {
            if f.var == name {
                k.generator().ok()
            } else {
                field_symbol(&f.base, name).map(|b| k.embed(&b))
            }
        }
        _ => None,
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> PolyParseError {
        PolyParseError { offset: self.pos, message: m.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> std::result::Result<Poly, PolyParseError> {
        let r = self.ring;
        let mut acc = self.term()?;
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

    fn term(&mut self) -> std::result::Result<Poly, PolyParseError> {
        let r = self.ring;
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = r.mul(&acc, &t);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let t = self.unary()?;
                    if !r.is_constant(&t) || t.is_zero() {
                        return Err(PolyParseError { offset: at, message: "division by a non-constant or zero".into() });
                    }
                    let inv = r.field.inv(t.lc()).unwrap();
                    acc = r.scale(&acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Poly, PolyParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.ring.neg(&v));
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Poly, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let paren = self.peek() == Some(b'(');
            if paren {
                self.pos += 1;
            }
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.integer()?;
            if paren {
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
            }
            let e: u32 = n.try_into().map_err(|_| PolyParseError { offset: at, message: "exponent too large".into() })?;
            if neg {
                if !self.ring.is_constant(&base) || base.is_zero() {
                    return Err(PolyParseError { offset: at, message: "negative exponent on a non-constant".into() });
                }
                let k = &self.ring.field;
                let c = k.pow_i64(base.lc(), -(e as i64)).unwrap();
                return Ok(self.ring.constant(c));
            }
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> std::result::Result<u64, PolyParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyParseError { offset: start, message: "integer out of range".into() })
    }

    fn atom(&mut self) -> std::result::Result<Poly, PolyParseError> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                let c = r
                    .field
                    .from_rat(&Rat::from_integer(n))
                    .map_err(|e| PolyParseError { offset: start, message: e.to_string() })?;
                Ok(r.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_' || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = r.var_index(name) {
                    return Ok(r.var(i));
                }
                if let Some(e) = field_symbol(&r.field, name) {
                    return Ok(r.constant(e));
                }
                Err(PolyParseError { offset: start, message: format!("unknown symbol '{name}'") })
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
