//! Parse and print scalar expressions.
//!
//! Grammar, with the usual precedence (`^` over unary minus over `*` `/`
//! over `+` `-`) and left associativity for the binary operators:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := base ('^' uint)?
//! base   := uint | identifier | '(' expr ')'
//! ```
//!
//! Printing produces text that re-parses to the identical canonical
//! scalar: terms in descending graded-lexicographic order, explicit `*`,
//! and parentheses around any composite numerator or denominator.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{Params, Polynomial, Rational};
use crate::scalar::Scalar;

pub fn parse_scalar(text: &str, params: &Params) -> Result<Scalar> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        params,
    };
    p.skip_ws();
    let value = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Syntax {
            offset: p.pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    params: &'a Params,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_whitespace())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse_expr(&mut self) -> Result<Scalar> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = acc.add(&rhs);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Scalar> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    acc = acc.mul(&rhs);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Scalar> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.parse_factor()?;
            return Ok(inner.neg());
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Scalar> {
        let base = self.parse_base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let offset = self.pos;
            let digits = self.take_digits();
            if digits.is_empty() {
                return Err(Error::Syntax {
                    offset,
                    message: "expected an unsigned integer exponent".into(),
                });
            }
            let e: u32 = digits.parse().map_err(|_| Error::Syntax {
                offset,
                message: "exponent out of range".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn parse_base(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let offset = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax {
                        offset: self.pos,
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.take_digits();
                let n: BigInt = digits.parse().expect("digit string");
                Ok(Scalar::constant(self.params, Rational::from_integer(n)))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|c| c.is_ascii_alphanumeric() || c == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned();
                match Scalar::param_named(self.params, &name) {
                    Some(s) => Ok(s),
                    None => Err(Error::UnknownIdentifier {
                        name,
                        offset: start,
                    }),
                }
            }
            _ => Err(Error::Syntax {
                offset,
                message: "expected a literal, identifier or `(`".into(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.params().names();
    let mut out = String::new();
    for (idx, (mono, coeff)) in p.terms().rev().enumerate() {
        let negative = coeff.is_negative();
        let abs = coeff.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || mono.is_unit() {
            factors.push(rational_text(&abs));
        }
        for (i, &e) in mono.0.iter().enumerate() {
            if e == 1 {
                factors.push(names[i].clone());
            } else if e > 1 {
                factors.push(format!("{}^{}", names[i], e));
            }
        }
        let term = factors.join("*");
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    out
}

/// A single-term polynomial prints without parentheses in numerator
/// position; left associativity of `*` and `/` keeps the value intact.
fn is_single_term(p: &Polynomial) -> bool {
    p.num_terms() == 1
}

/// Denominator position additionally forbids `*` inside (it would bind
/// into the quotient) and any coefficient other than 1.
fn den_is_atom(p: &Polynomial) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (mono, coeff) = p.leading().unwrap();
    coeff.is_one() && mono.0.iter().filter(|&&e| e > 0).count() == 1
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let num = self.num();
        let den = self.den();
        if den.is_one() {
            return f.write_str(&poly_text(num));
        }
        let num_text = if is_single_term(num) {
            poly_text(num)
        } else {
            format!("({})", poly_text(num))
        };
        let den_text = if den_is_atom(den) {
            poly_text(den)
        } else {
            format!("({})", poly_text(den))
        };
        write!(f, "{}/{}", num_text, den_text)
    }
}
