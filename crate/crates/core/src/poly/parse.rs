//! Text syntax for polynomials: integers, `a/b`, `i`, variable names,
//! `~name` for the conjugate partner of `name`, `+ - * / ^` and parentheses.
//! Division is only allowed by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussianRational, Poly, PolyError, VarTable};

pub fn parse_poly(src: &str, table: &Arc<VarTable>) -> Result<Poly, PolyError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        table,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a constant expression (no variables), e.g. a point coordinate.
pub fn parse_constant(src: &str) -> Result<GaussianRational, PolyError> {
    let empty = VarTable::empty();
    let p = parse_poly(src, &empty)?;
    Ok(p.as_constant().expect("empty table yields constants"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<VarTable>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let inv = d.as_constant().and_then(|c| c.inv()).ok_or(PolyError::Syntax {
                        pos: at,
                        message: "division by a non-constant or zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = text.parse().map_err(|_| PolyError::Syntax {
                pos: start,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        match c {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().unwrap();
                Ok(Poly::constant(
                    self.table,
                    GaussianRational::real(BigRational::from_integer(n)),
                ))
            }
            b'~' => {
                self.pos += 1;
                let start = self.pos;
                let name = self.ident().ok_or_else(|| self.error("expected a variable after `~`"))?;
                let i = self.table.index_of(&name).ok_or(PolyError::UnknownVariable(name.clone()))?;
                match self.table.partner(i) {
                    Some(j) => Ok(Poly::var(self.table, j)),
                    None => Err(PolyError::NoConjugate(format!("{name} (at {start})"))),
                }
            }
            _ => {
                let name = self.ident().ok_or_else(|| self.error("unexpected character"))?;
                if name == "i" {
                    return Ok(Poly::constant(self.table, GaussianRational::i()));
                }
                Poly::var_named(self.table, &name)
            }
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        let ok_first = |b: u8| b.is_ascii_alphabetic() || b == b'_';
        if self.pos >= self.src.len() || !ok_first(self.src[self.pos]) {
            return None;
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'\''))
        {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<VarTable> {
        VarTable::with_conjugates(&["z1", "z2"]).unwrap()
    }

    #[test]
    fn zero_polynomial() {
        let p = parse_poly("0", &t()).unwrap();
        assert!(p.is_zero());
        assert!(p.terms().is_empty());
    }

    #[test]
    fn precedence() {
        let a = parse_poly("-z1^2 + 2*z2", &t()).unwrap();
        let b = parse_poly("2*z2 - (z1*z1)", &t()).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("(z1 - ~z1)/(2*i)", &t()).unwrap();
        assert_eq!(c, parse_poly("-1/2*i*z1 + 1/2*i*~z1", &t()).unwrap());
    }

    #[test]
    fn errors() {
        let tb = t();
        match parse_poly("z1 + * z2", &tb) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("z3", &tb), Err(PolyError::UnknownVariable(_))));
        let no_conj = VarTable::params(&["t"]).unwrap();
        assert!(matches!(parse_poly("~t", &no_conj), Err(PolyError::NoConjugate(_))));
        assert!(parse_poly("z1/z2", &tb).is_err());
        assert!(parse_poly("(z1", &tb).is_err());
        assert!(parse_poly("z1^", &tb).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("3/4-1/2*i").unwrap(), GaussianRational::from_parts((3, 4), (-1, 2)));
        assert_eq!(parse_constant("(1+i)^2").unwrap(), GaussianRational::from_parts((0, 1), (2, 1)));
    }
}
