//! Text form: a signed sum of `coef*label` terms, e.g. `2.0*1 - 0.5*i + (0.0,1.0)*K`.
//!
//! A coefficient is a real number or a `(re,im)` pair. A bare label means a
//! unit coefficient; a bare number means a scalar term. The zero octon prints
//! as `0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Basis, Octon, C64, ZERO};

#[derive(Debug, Error, PartialEq)]
#[error("cannot parse octon at byte {pos}: {msg}")]
pub struct ParseOctonError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for Octon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Basis::ALL {
            let z = self.get(b);
            if z == ZERO {
                continue;
            }
            let (neg, mag) = if z.im == 0.0 && z.re.is_sign_negative() {
                (true, format!("{:?}", -z.re))
            } else if z.im == 0.0 {
                (false, format!("{:?}", z.re))
            } else {
                (false, format!("({:?},{:?})", z.re, z.im))
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(f, "{}*{}", mag, b.label())?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseOctonError> {
        Err(ParseOctonError { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64, ParseOctonError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        while let Some(&c) = self.s.get(self.pos) {
            let exp_sign = matches!(c, b'+' | b'-') && matches!(self.s[self.pos - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        text.parse::<f64>().or_else(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    fn coefficient(&mut self) -> Result<C64, ParseOctonError> {
        if self.eat(b'(') {
            let re = self.number()?;
            if !self.eat(b',') {
                return self.err("expected ','");
            }
            let im = self.number()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(C64::new(re, im))
        } else {
            Ok(C64::new(self.number()?, 0.0))
        }
    }

    fn label(&mut self) -> Option<Basis> {
        let c = self.peek()?;
        let b = Basis::from_label(std::str::from_utf8(&[c]).ok()?)?;
        self.pos += 1;
        Some(b)
    }

    fn term(&mut self) -> Result<(C64, Basis), ParseOctonError> {
        let starts_coef = matches!(self.peek(), Some(c) if c == b'(' || c == b'.' || (c.is_ascii_digit() && c != b'1'))
            || self.one_is_number();
        if starts_coef {
            let z = self.coefficient()?;
            if self.eat(b'*') {
                match self.label() {
                    Some(b) => Ok((z, b)),
                    None => self.err("expected a basis label"),
                }
            } else {
                Ok((z, Basis::One))
            }
        } else {
            match self.label() {
                Some(b) => Ok((C64::new(1.0, 0.0), b)),
                None => self.err("expected a term"),
            }
        }
    }

    /// A leading `1` is a number unless it stands alone as the scalar label.
    fn one_is_number(&mut self) -> bool {
        if self.peek() != Some(b'1') {
            return false;
        }
        matches!(self.s.get(self.pos + 1), Some(c) if c.is_ascii_digit() || matches!(c, b'.' | b'e' | b'E' | b'*'))
    }
}

impl FromStr for Octon {
    type Err = ParseOctonError;

    fn from_str(s: &str) -> Result<Octon, ParseOctonError> {
        let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
        if lx.peek() == Some(b'0') && s.trim() == "0" {
            return Ok(Octon::zero());
        }
        let mut out = Octon::zero();
        let mut sign = if lx.eat(b'-') { -1.0 } else { 1.0 };
        loop {
            let (z, b) = lx.term()?;
            out = out.with(b, out.get(b) + z * sign);
            match lx.peek() {
                None => break,
                Some(b'+') => {
                    lx.pos += 1;
                    sign = 1.0;
                }
                Some(b'-') => {
                    lx.pos += 1;
                    sign = -1.0;
                }
                Some(_) => return lx.err("expected '+' or '-'"),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::XI;

    #[test]
    fn prints_signed_terms() {
        let x = Octon::one() * 2.0 - Octon::basis(Basis::PolarI) * 0.5 + Octon::basis(Basis::AxialK) * XI;
        assert_eq!(x.to_string(), "2.0*1 - 0.5*i + (0.0,1.0)*K");
        assert_eq!(Octon::zero().to_string(), "0");
    }

    #[test]
    fn parses_bare_labels_and_numbers() {
        let x: Octon = "1 + K".parse().unwrap();
        assert_eq!(x, Octon::one() + Octon::basis(Basis::AxialK));
        let y: Octon = "-E + 2.5 - 1e-3*j".parse().unwrap();
        assert_eq!(y.get(Basis::Pseudoscalar), C64::new(-1.0, 0.0));
        assert_eq!(y.get(Basis::One), C64::new(2.5, 0.0));
        assert_eq!(y.get(Basis::PolarJ), C64::new(-1e-3, 0.0));
        let z: Octon = "(0,-1)*J + 1E2*E".parse().unwrap();
        assert_eq!(z.get(Basis::AxialJ), -XI);
        assert_eq!(z.get(Basis::Pseudoscalar), C64::new(100.0, 0.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!("2*q".parse::<Octon>().is_err());
        assert!("1 +".parse::<Octon>().is_err());
        assert!("(1,2".parse::<Octon>().is_err());
    }

    #[test]
    fn round_trips_awkward_values() {
        let x = Octon::new([
            C64::new(1e-300, 0.0),
            C64::new(-0.1, 0.0),
            C64::new(0.0, -2.0),
            ZERO,
            C64::new(1.0, 1e10),
            ZERO,
            C64::new(-7.25, 0.0),
            C64::new(1.0 / 3.0, 0.0),
        ]);
        assert_eq!(x.to_string().parse::<Octon>().unwrap(), x);
    }
}
