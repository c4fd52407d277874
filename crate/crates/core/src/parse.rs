//! Text input for polynomials and formal elements.
//!
//! Grammar: a sum of signed terms, where a term is
//! `[coefficient] [*] [z[^int]] [*] [w[^int]]` and a coefficient is a
//! rational `p/q`, optionally times `I`, or a parenthesized complex
//! `(re+im*I)`. Juxtaposition (`z w`) and explicit `*` both work;
//! whitespace is ignored. Negative exponents are accepted only when parsing
//! elements of a space whose index set allows them.

use num::{BigInt, BigRational, One};

use crate::element::{HElement, MultiplierPoly, Space};
use crate::error::{DomainError, ParseError};
use crate::index::MonomialIndex;
use crate::scalar::GaussianRational;

/// Parses a genuine polynomial in `z, w` (all exponents nonnegative).
pub fn parse_poly(text: &str) -> Result<MultiplierPoly, ParseError> {
    let terms = Parser::new(text).parse_sum()?;
    let mut poly = MultiplierPoly::zero();
    for term in terms {
        poly.add_term(term.idx, term.coeff)
            .map_err(|e| domain_at(term.position, e))?;
    }
    Ok(poly)
}

/// Parses a formal element of the tagged space; exponents may be negative
/// wherever the space's index set permits.
pub fn parse_element(text: &str, space: Space) -> Result<HElement, ParseError> {
    let terms = Parser::new(text).parse_sum()?;
    let mut elem = HElement::zero(space);
    for term in terms {
        elem.add_term(term.idx, term.coeff)
            .map_err(|e| domain_at(term.position, e))?;
    }
    Ok(elem)
}

fn domain_at(position: usize, err: DomainError) -> ParseError {
    ParseError {
        position,
        message: err.to_string(),
    }
}

struct RawTerm {
    idx: MonomialIndex,
    coeff: GaussianRational,
    position: usize,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_sum(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1i64
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let term = self.parse_term(sign)?;
            terms.push(term);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.error("expected '+' or '-' between terms")),
                None => return Ok(terms),
            }
        }
    }

    fn parse_term(&mut self, sign: i64) -> Result<RawTerm, ParseError> {
        let position = self.pos;
        let mut coeff: Option<GaussianRational> = None;
        let mut z_exp: Option<i64> = None;
        let mut w_exp: Option<i64> = None;
        let mut saw_factor = false;

        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    if coeff.is_some() || saw_factor {
                        return Err(self.error("coefficient must come first in a term"));
                    }
                    let r = self.parse_rational()?;
                    // a rational may be followed by I
                    let c = if self.eat_imaginary_unit() {
                        GaussianRational::new(BigRational::default(), r)
                    } else {
                        GaussianRational::from_rat(r)
                    };
                    coeff = Some(c);
                    saw_factor = true;
                }
                Some(b'I') => {
                    if coeff.is_some() || saw_factor {
                        return Err(self.error("imaginary unit must belong to the coefficient"));
                    }
                    self.pos += 1;
                    coeff = Some(GaussianRational::i());
                    saw_factor = true;
                }
                Some(b'(') => {
                    if coeff.is_some() || saw_factor {
                        return Err(self.error("parenthesized coefficient must come first"));
                    }
                    coeff = Some(self.parse_complex_parens()?);
                    saw_factor = true;
                }
                Some(b'z') => {
                    if z_exp.is_some() {
                        return Err(self.error("variable z appears twice in a term"));
                    }
                    if w_exp.is_some() {
                        return Err(self.error("variables must appear in z, w order"));
                    }
                    self.pos += 1;
                    z_exp = Some(self.parse_exponent()?);
                    saw_factor = true;
                }
                Some(b'w') => {
                    if w_exp.is_some() {
                        return Err(self.error("variable w appears twice in a term"));
                    }
                    self.pos += 1;
                    w_exp = Some(self.parse_exponent()?);
                    saw_factor = true;
                }
                _ => break,
            }
            // optional '*' between factors; a consumed '*' must be followed
            // by another factor
            if self.eat(b'*') {
                match self.peek() {
                    Some(b'0'..=b'9') | Some(b'z') | Some(b'w') | Some(b'I') | Some(b'(') => {}
                    _ => return Err(self.error("expected a factor after '*'")),
                }
            } else {
                match self.peek() {
                    Some(b'z') | Some(b'w') | Some(b'I') => {}
                    _ => break,
                }
            }
        }

        if !saw_factor {
            return Err(self.error("expected a term"));
        }
        let mut coeff = coeff.unwrap_or_else(GaussianRational::one);
        if sign < 0 {
            coeff = -coeff;
        }
        Ok(RawTerm {
            idx: MonomialIndex::new(z_exp.unwrap_or(0), w_exp.unwrap_or(0)),
            coeff,
            position,
        })
    }

    fn eat_imaginary_unit(&mut self) -> bool {
        let save = self.pos;
        if self.eat(b'*') {
            if self.peek() == Some(b'I') {
                self.pos += 1;
                return true;
            }
            self.pos = save;
            return false;
        }
        if self.peek() == Some(b'I') {
            self.pos += 1;
            return true;
        }
        false
    }

    fn parse_exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let n = self.parse_integer()?;
        Ok(if neg { -n } else { n })
    }

    fn parse_integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'0'..=b'9') => {}
            _ => return Err(self.error("expected an integer")),
        }
        let mut value: i64 = 0;
        while let Some(b @ b'0'..=b'9') = self.bytes.get(self.pos).copied() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as i64))
                .ok_or_else(|| ParseError {
                    position: start,
                    message: "integer literal too large".into(),
                })?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn parse_rational(&mut self) -> Result<BigRational, ParseError> {
        let numer = self.parse_integer()?;
        if self.eat(b'/') {
            let denom_pos = self.pos;
            let denom = self.parse_integer()?;
            if denom == 0 {
                return Err(ParseError {
                    position: denom_pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
        } else {
            Ok(BigRational::from_integer(BigInt::from(numer)))
        }
    }

    /// `(re+im*I)` or `(re-im*I)`, both parts rational.
    fn parse_complex_parens(&mut self) -> Result<GaussianRational, ParseError> {
        if !self.eat(b'(') {
            return Err(self.error("expected '('"));
        }
        let re_neg = self.eat(b'-');
        let mut re = self.parse_rational()?;
        if re_neg {
            re = -re;
        }
        if self.eat(b')') {
            return Ok(GaussianRational::from_rat(re));
        }
        let im_neg = match self.bump() {
            Some(b'+') => false,
            Some(b'-') => true,
            _ => return Err(self.error("expected '+', '-' or ')' in coefficient")),
        };
        let mut im = if self.peek() == Some(b'I') {
            self.pos += 1;
            BigRational::one()
        } else {
            let r = self.parse_rational()?;
            if !self.eat_imaginary_unit() {
                return Err(self.error("expected 'I' to close the imaginary part"));
            }
            r
        };
        if im_neg {
            im = -im;
        }
        if !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(GaussianRational::new(re, im))
    }
}
