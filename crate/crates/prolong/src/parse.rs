//! Text grammar for polynomials:
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := coeff ['*' factor ('*' factor)*]
//!          | factor ('*' factor)*
//! coeff   := int | int '/' int
//! factor  := varname ['^' int]
//! varname := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored everywhere. A bare `coeff` term covers constants,
//! including `0` for the zero polynomial. Printing via [`Polynomial`]'s
//! `Display` emits exactly this grammar, grlex-descending, so parse and
//! print round-trip.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::varset::VarSet;
use crate::{Q, Z};
use num_traits::{One, Zero};
use std::str::FromStr;
use std::sync::Arc;

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Scanner<'a> {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<Z> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("digits are utf8");
        Ok(Z::from_str(s).expect("digits parse"))
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let pos = self.pos;
        let n = self.integer()?;
        u32::try_from(&n).map_err(|_| Error::Parse {
            pos,
            msg: format!("exponent {n} out of range"),
        })
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        match self.text.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.err("expected a variable name"),
        }
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii ident");
        Ok((s.to_string(), start))
    }

    /// factor := varname ['^' int]
    fn factor(&mut self, vars: &VarSet, exps: &mut [u32]) -> Result<()> {
        let (name, pos) = self.ident()?;
        let idx = vars
            .position(&name)
            .ok_or(Error::UnknownVariable { name, pos })?;
        let e = if self.eat(b'^') { self.exponent()? } else { 1 };
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?;
        Ok(())
    }

    /// term := coeff ['*' factors] | factors
    fn term(&mut self, vars: &VarSet) -> Result<(Monomial, Q)> {
        let mut exps = vec![0u32; vars.len()];
        let mut coeff = Q::one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let pos = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    Z::one()
                };
                coeff = Q::new(num, den);
                if self.eat(b'*') {
                    self.factor(vars, &mut exps)?;
                } else {
                    return Ok((Monomial::from_exps(exps), coeff));
                }
            }
            _ => self.factor(vars, &mut exps)?,
        }
        while self.eat(b'*') {
            self.factor(vars, &mut exps)?;
        }
        Ok((Monomial::from_exps(exps), coeff))
    }
}

/// Parses a polynomial over `vars` from the grammar above.
pub fn parse_polynomial(text: &str, vars: &Arc<VarSet>) -> Result<Polynomial> {
    let mut sc = Scanner::new(text);
    let mut poly = Polynomial::zero(vars.clone());
    if sc.peek().is_none() {
        return sc.err("empty polynomial");
    }
    let mut sign = if sc.eat(b'-') { -Q::one() } else { Q::one() };
    loop {
        let (m, c) = sc.term(vars)?;
        poly.add_term(m, c * &sign);
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.bump();
                sign = Q::one();
            }
            Some(b'-') => {
                sc.bump();
                sign = -Q::one();
            }
            Some(c) => return sc.err(format!("unexpected character `{}`", c as char)),
        }
    }
    Ok(poly)
}

/// Parses a single monomial (a term with no coefficient; `1` is allowed for
/// the empty monomial).
pub fn parse_monomial(text: &str, vars: &Arc<VarSet>) -> Result<Monomial> {
    let mut sc = Scanner::new(text);
    let (m, c) = sc.term(vars)?;
    if let Some(ch) = sc.peek() {
        return sc.err(format!("unexpected character `{}`", ch as char));
    }
    if !c.is_one() {
        return sc.err("expected a monomial, found a coefficient");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Arc<VarSet> {
        VarSet::numbered("x", 4)
    }

    #[test]
    fn parses_spec_shapes() {
        let vs = vars();
        let p = parse_polynomial("3*x1^2*x2 - 1/2*x3", &vs).unwrap();
        assert_eq!(p.to_string(), "3*x1^2*x2 - 1/2*x3");
        let q = parse_polynomial("x1*x1", &vs).unwrap();
        assert_eq!(q.to_string(), "x1^2");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let vs = vars();
        let a = parse_polynomial("  x1 ^2 * x2+ x3  ", &vs).unwrap();
        let b = parse_polynomial("x1^2*x2+x3", &vs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn like_terms_combine_and_may_cancel() {
        let vs = vars();
        let p = parse_polynomial("x1 - x1", &vs).unwrap();
        assert!(p.is_zero());
        let q = parse_polynomial("x1 + 2*x1", &vs).unwrap();
        assert_eq!(q.to_string(), "3*x1");
    }

    #[test]
    fn round_trips_via_display() {
        let vs = vars();
        for text in [
            "x1^3 + x1^2*x2 + x2*x3*x4",
            "-x1 + 5/3*x2",
            "0",
            "2",
            "-7/2",
        ] {
            let p = parse_polynomial(text, &vs).unwrap();
            let reparsed = parse_polynomial(&p.to_string(), &vs).unwrap();
            assert_eq!(p, reparsed, "round trip failed for {text}");
        }
    }

    #[test]
    fn reports_position_and_name_on_errors() {
        let vs = vars();
        match parse_polynomial("x1 + y2", &vs) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "y2");
                assert_eq!(pos, 5);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(parse_polynomial("x1 + ", &vs).is_err());
        assert!(parse_polynomial("x1^", &vs).is_err());
        assert!(parse_polynomial("1/0", &vs).is_err());
        assert!(parse_polynomial("", &vs).is_err());
        assert!(parse_monomial("2*x1", &vs).is_err());
        assert_eq!(
            parse_monomial("1", &vs).unwrap(),
            Monomial::one(4)
        );
    }
}
