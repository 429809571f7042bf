use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::OrePoly;
use super::ring::RingSpec;
use crate::Rational;

/// Error produced while parsing an operator expression; carries the byte
/// offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{c}`")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a RingSpec,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| *p)
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<OrePoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some((_, Tok::Plus)) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some((_, Tok::Minus)) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<OrePoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some((_, Tok::Star)) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some((p, Tok::Slash)) => {
                    let p = *p;
                    self.next();
                    let rhs = self.unary()?;
                    let c = constant_of(&rhs)
                        .ok_or(())
                        .or_else(|_| err(p, "division is only supported by nonzero constants"))?;
                    if c.is_zero() {
                        return err(p, "division by zero");
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<OrePoly, ParseError> {
        if let Some((_, Tok::Minus)) = self.peek() {
            self.next();
            let p = self.unary()?;
            return Ok(-&p);
        }
        self.power()
    }

    // power := atom ('^' atom)?
    fn power(&mut self) -> Result<OrePoly, ParseError> {
        let base_pos = self.here();
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            let caret_pos = self.here();
            self.next();
            let exp_pos = self.here();
            let exp = self.atom()?;
            let e = constant_of(&exp)
                .filter(|c| c.is_integer() && !num_traits::Signed::is_negative(c))
                .ok_or(())
                .or_else(|_| err(exp_pos, "exponent must be a nonnegative integer"))?;
            if base.num_terms() > 1 {
                return err(
                    base_pos.min(caret_pos),
                    "exponent applied to a sum is not supported",
                );
            }
            use num_traits::ToPrimitive;
            let n = e
                .to_integer()
                .to_u32()
                .ok_or(())
                .or_else(|_| err(exp_pos, "exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OrePoly, ParseError> {
        match self.next() {
            Some((_, Tok::Num(n))) => Ok(OrePoly::constant(
                self.ring,
                Rational::from_integer(n),
            )),
            Some((p, Tok::Ident(name))) => match self.ring.gen_index(&name) {
                Some(i) => Ok(OrePoly::gen(self.ring, i)),
                None => err(p, format!("unknown identifier `{name}`")),
            },
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((p, t)) => err(p, format!("expected `)`, found {t:?}")),
                    None => err(self.end, "unbalanced parenthesis"),
                }
            }
            Some((p, t)) => err(p, format!("unexpected token {t:?}")),
            None => err(self.end, "unexpected end of expression"),
        }
    }
}

/// The constant value of a polynomial, if it is a constant.
fn constant_of(p: &OrePoly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.num_terms() == 1 {
        let (m, c) = p.leading().unwrap();
        if m.is_one() {
            return Some(c.clone());
        }
    }
    None
}

/// Parse an infix operator expression over the generators of `ring` into a
/// normal-ordered [`OrePoly`]. Printing the result and parsing it again is a
/// fixed point.
pub fn parse_operator(text: &str, ring: &RingSpec) -> Result<OrePoly, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        ring,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if let Some((p, t)) = parser.peek() {
        return err(*p, format!("trailing input starting with {t:?}"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl_xyz() -> RingSpec {
        RingSpec::weyl(&["x", "y", "z"])
    }

    #[test]
    fn single_variable() {
        let r = weyl_xyz();
        let p = parse_operator("x", &r).unwrap();
        assert_eq!(p, OrePoly::var(&r, "x"));
    }

    #[test]
    fn two_term_operator() {
        let r = weyl_xyz();
        let p = parse_operator("y*Dz - z*Dy", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        let y_dz = &OrePoly::var(&r, "y") * &OrePoly::var(&r, "Dz");
        let z_dy = &OrePoly::var(&r, "z") * &OrePoly::var(&r, "Dy");
        assert_eq!(p, &y_dz - &z_dy);
    }

    #[test]
    fn normal_ordering_through_parser() {
        // Dx*x = x∂x + 1 by the defining relation.
        let r = weyl_xyz();
        let p = parse_operator("Dx*x", &r).unwrap();
        let expected = parse_operator("x*Dx + 1", &r).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn print_parse_fixed_point() {
        let r = weyl_xyz();
        for text in [
            "y*Dz - z*Dy",
            "x^2*Dx^2 + 3/2*x - 7",
            "-1*z^3*Dy + y*z^2*Dz + 2*y*z",
            "0",
            "5",
            "-2/3",
        ] {
            let p = parse_operator(text, &r).unwrap();
            let printed = p.to_string();
            let q = parse_operator(&printed, &r).unwrap();
            assert_eq!(p, q, "round trip failed for `{text}` -> `{printed}`");
            assert_eq!(printed, q.to_string());
        }
    }

    #[test]
    fn unknown_identifier_has_position() {
        let r = weyl_xyz();
        let e = parse_operator("x + w*y", &r).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.msg.contains("unknown identifier"), "{}", e.msg);
    }

    #[test]
    fn malformed_syntax_has_position() {
        let r = weyl_xyz();
        let e = parse_operator("x + * y", &r).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_operator("(x + y", &r).unwrap_err();
        assert!(e.msg.contains("unbalanced") || e.msg.contains("unexpected end"));
    }

    #[test]
    fn exponent_on_sum_rejected() {
        let r = weyl_xyz();
        let e = parse_operator("(x + y)^2", &r).unwrap_err();
        assert!(e.msg.contains("sum"), "{}", e.msg);
        // but powers of single-term expressions work
        let p = parse_operator("(2*x)^3", &r).unwrap();
        assert_eq!(p, parse_operator("8*x^3", &r).unwrap());
    }

    #[test]
    fn rational_literals_and_division() {
        let r = weyl_xyz();
        let p = parse_operator("1/2*x + x/2", &r).unwrap();
        assert_eq!(p, parse_operator("x", &r).unwrap());
        let e = parse_operator("x/y", &r).unwrap_err();
        assert!(e.msg.contains("constants"));
        let e = parse_operator("x/0", &r).unwrap_err();
        assert!(e.msg.contains("zero"));
    }

    #[test]
    fn weyl_product_in_parentheses() {
        let r = weyl_xyz();
        let p = parse_operator("(x*Dy)*(y*Dx)", &r).unwrap();
        let expected = parse_operator("x*y*Dx*Dy + x*Dx", &r).unwrap();
        assert_eq!(p, expected);
    }
}
