//! Parser for the text rendering of formal sums, e.g.
//! `- 3 (-1)^{|a||b|} m(3){b,a,c} + m(1|2){a|m(1){b},c}`.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::ParseError;
use crate::partition::{parse_partition_at, Partition};
use crate::sign::{Monomial, SignPoly};
use crate::terms::{Degree, Expr, FormalSum, Generator, MapSymbol, Q};

/// Supplies super degrees for parsed symbols.
pub trait DegreeResolver {
    fn generator(&self, _name: &str) -> Degree {
        Degree::Symbolic
    }
    fn map(&self, _name: &str, _ty: &Partition) -> Degree {
        Degree::Symbolic
    }
}

/// Every degree symbolic.
pub struct Symbolic;

impl DegreeResolver for Symbolic {}

/// `m(π)` gets the structure-map parity; everything else is symbolic.
pub struct StructureMaps;

impl DegreeResolver for StructureMaps {
    fn map(&self, name: &str, ty: &Partition) -> Degree {
        if name == "m" {
            MapSymbol::structure(ty.clone()).degree
        } else {
            Degree::Symbolic
        }
    }
}

struct Cursor<'a, R: DegreeResolver + ?Sized> {
    s: &'a str,
    pos: usize,
    degrees: &'a R,
}

impl<R: DegreeResolver + ?Sized> Cursor<'_, R> {
    fn peek(&self) -> Option<u8> {
        self.s.as_bytes().get(self.pos).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.pos, &alloc::format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'') {
            self.pos += 1;
        }
        if start == self.pos || self.s.as_bytes()[start].is_ascii_digit() {
            return Err(ParseError::new(start, "expected an identifier"));
        }
        Ok(self.s[start..self.pos].into())
    }

    fn number(&mut self) -> Option<i128> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.s[start..self.pos].parse().ok()
    }

    fn coefficient(&mut self) -> Result<Q, ParseError> {
        self.ws();
        let start = self.pos;
        let Some(n) = self.number() else {
            return Ok(Q::one());
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            match self.number() {
                Some(d) if d != 0 => return Ok(Q::new(n, d)),
                _ => return Err(ParseError::new(start, "bad fraction")),
            }
        }
        Ok(Q::from_integer(n))
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let mut name = self.ident()?;
        if self.peek() == Some(b'(') {
            let (p, next) = parse_partition_at(self.s, self.pos)?;
            self.pos = next;
            name.push_str(&alloc::format!("{p}"));
        }
        Ok(name)
    }

    fn sign(&mut self) -> Result<SignPoly, ParseError> {
        self.ws();
        if !self.s[self.pos..].starts_with("(-1)^{") {
            return Ok(SignPoly::zero());
        }
        self.pos += 6;
        let mut monomials: Vec<Monomial> = Vec::new();
        loop {
            self.ws();
            let mut m = Monomial::new();
            if self.peek() == Some(b'1') {
                self.pos += 1;
            } else {
                while self.peek() == Some(b'|') {
                    self.pos += 1;
                    m.push(self.variable()?);
                    self.expect(b'|')?;
                }
                if m.is_empty() {
                    return Err(ParseError::new(self.pos, "expected a monomial"));
                }
            }
            monomials.push(m);
            self.ws();
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(ParseError::new(self.pos, "expected '+' or '}'")),
            }
        }
        Ok(SignPoly::from_monomials(monomials))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let name = self.ident()?;
        if self.peek() != Some(b'(') {
            return Ok(Expr::gen(Generator::new(&name, self.degrees.generator(&name))));
        }
        let (ty, next) = parse_partition_at(self.s, self.pos)?;
        self.pos = next;
        let head = if name == "id" {
            MapSymbol::identity(ty.clone())
        } else {
            MapSymbol::new(&name, ty.clone(), self.degrees.map(&name, &ty))
        };
        self.expect(b'{')?;
        let mut slots = alloc::vec![Vec::new()];
        self.ws();
        if self.peek() != Some(b'}') {
            loop {
                self.ws();
                if matches!(self.peek(), Some(b'|') | Some(b'}')) {
                    // empty slot
                } else {
                    slots.last_mut().unwrap().push(self.expr()?);
                }
                self.ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'|') => {
                        self.pos += 1;
                        slots.push(Vec::new());
                    }
                    Some(b'}') => break,
                    _ => return Err(ParseError::new(self.pos, "expected ',', '|' or '}'")),
                }
            }
        }
        self.expect(b'}')?;
        let e = Expr::app(head, slots);
        if !e.is_well_formed() {
            return Err(ParseError::new(self.pos, "arguments do not match the map type"));
        }
        Ok(e)
    }
}

pub fn parse_sum<R: DegreeResolver + ?Sized>(s: &str, degrees: &R) -> Result<FormalSum, ParseError> {
    let mut c = Cursor { s, pos: 0, degrees };
    let mut out = FormalSum::zero();
    c.ws();
    if s.trim() == "0" {
        return Ok(out);
    }
    let mut first = true;
    while c.pos < s.len() {
        let mut q = Q::one();
        match c.peek() {
            Some(b'+') => c.pos += 1,
            Some(b'-') => {
                q = -q;
                c.pos += 1
            }
            _ if first => {}
            _ => return Err(ParseError::new(c.pos, "expected '+' or '-'")),
        }
        q *= c.coefficient()?;
        let sign = c.sign()?;
        let e = c.expr()?;
        out.add_term(q, &sign, e);
        c.ws();
        first = false;
    }
    Ok(out)
}

pub fn parse_expr<R: DegreeResolver + ?Sized>(s: &str, degrees: &R) -> Result<Expr, ParseError> {
    let mut c = Cursor { s, pos: 0, degrees };
    let e = c.expr()?;
    c.ws();
    if c.pos != s.len() {
        return Err(ParseError::new(c.pos, "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn roundtrip() {
        let text = "- 3 (-1)^{|a||b|+|m(1|2)|} m(1|2){a|m(1){b},c} + 1/2 x(0|2){|a,b}";
        let s = parse_sum(text, &Symbolic).unwrap();
        assert_eq!(s.len(), 2);
        let again = parse_sum(&s.to_string(), &Symbolic).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn constant_sign_folds() {
        let s = parse_sum("(-1)^{1+|a|} a", &Symbolic).unwrap();
        assert_eq!(s.to_string(), "- (-1)^{|a|} a");
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_sum("m(2){a}", &Symbolic).unwrap_err();
        assert!(e.message.contains("type"));
        let e = parse_sum("m(2){a,b} ? c", &Symbolic).unwrap_err();
        assert_eq!(e.position, 10);
    }
}
