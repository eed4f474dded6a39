//! Text grammar for polynomials: terms like `3*x0^2*x3 - x1^3`, with
//! integer or `p/q` rational coefficients and `^` powers.

use thiserror::Error;

use crate::coeff::{self, Coeff};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("inhomogeneous polynomial: term of degree {found} after degree {expected}")]
    Inhomogeneous { expected: i64, found: i64 },
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.error("integer out of range"))
    }
}

/// Parses a homogeneous polynomial in the variables of `ring`.
pub fn parse_poly(src: &str, ring: &RingDescriptor) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut acc: Option<Polynomial> = None;
    let mut sign = 1i64;
    let mut first = true;
    loop {
        match cur.peek() {
            None => {
                if first {
                    return Err(cur.error("empty polynomial"));
                }
                break;
            }
            Some(b'+') => {
                cur.bump();
                sign = 1;
            }
            Some(b'-') => {
                cur.bump();
                sign = -1;
            }
            Some(_) if first => {}
            Some(_) => return Err(cur.error("expected '+' or '-' between terms")),
        }
        let term = parse_term(&mut cur, ring)?;
        let term = if sign < 0 { term.neg() } else { term };
        match &mut acc {
            None => acc = Some(term),
            Some(p) => {
                if !term.is_zero() && !p.is_zero() && term.degree() != p.degree() {
                    return Err(ParseError::Inhomogeneous {
                        expected: p.degree(),
                        found: term.degree(),
                    });
                }
                *p = p.add(&term);
            }
        }
        first = false;
        sign = 1;
    }
    Ok(acc.expect("at least one term"))
}

fn parse_term(cur: &mut Cursor, ring: &RingDescriptor) -> Result<Polynomial, ParseError> {
    let mut coefficient: Coeff = coeff::one();
    let mut exps = vec![0u32; ring.num_vars];
    let mut saw_factor = false;
    loop {
        match cur.peek() {
            Some(b'0'..=b'9') => {
                let num = cur.integer()?;
                let c = if cur.peek() == Some(b'/') {
                    cur.bump();
                    let den = cur.integer()?;
                    if den == 0 {
                        return Err(cur.error("zero denominator"));
                    }
                    coeff::from_frac(num, den)
                } else {
                    coeff::from_i64(num)
                };
                coefficient = coefficient * c;
                saw_factor = true;
            }
            Some(b'x') => {
                cur.bump();
                let idx = cur.integer()? as usize;
                if idx >= ring.num_vars {
                    return Err(cur.error(format!(
                        "variable x{idx} out of range (ring has {} variables)",
                        ring.num_vars
                    )));
                }
                let mut power = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.bump();
                    let p = cur.integer()?;
                    if p < 0 {
                        return Err(cur.error("negative exponent"));
                    }
                    power = p as u32;
                }
                exps[idx] = exps[idx]
                    .checked_add(power)
                    .ok_or_else(|| cur.error("exponent overflow"))?;
                saw_factor = true;
            }
            _ => break,
        }
        if cur.peek() == Some(b'*') {
            cur.bump();
        } else {
            break;
        }
    }
    if !saw_factor {
        return Err(cur.error("expected a term"));
    }
    let m = Monomial::new(exps, &ring.weights);
    Ok(Polynomial::from_monomial(m, coefficient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn parses_spec_grammar() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("3*x0*x3 - x1^3", &a).unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn parses_rationals() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("1/2*x0 - 3/4*x0", &a).unwrap();
        assert_eq!(coeff::render(p.terms().values().next().unwrap()), "-1/4");
    }

    #[test]
    fn rejects_inhomogeneous() {
        let a = make_ring(2, true).unwrap();
        let e = parse_poly("x0 + x1", &a).unwrap_err();
        assert!(matches!(e, ParseError::Inhomogeneous { .. }));
    }

    #[test]
    fn reports_position() {
        let a = make_ring(2, true).unwrap();
        let e = parse_poly("x9", &a).unwrap_err();
        assert!(matches!(e, ParseError::Syntax { .. }));
    }

    #[test]
    fn constant_and_repeated_vars() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("2", &a).unwrap();
        assert_eq!(p.degree(), 0);
        let q = parse_poly("x0*x0", &a).unwrap();
        assert_eq!(q.degree(), 2);
    }
}
