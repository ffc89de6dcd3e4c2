//! Text form of polynomials.
//!
//! Grammar (whitespace is insignificant, columns are 1-based):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! IDENT  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! `/` only forms rational literals; implicit multiplication is rejected.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Variables};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dot,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<BigInt>()
                .map_err(|_| Error::Syntax { column: col, message: String::from("bad integer literal") })?;
            toks.push((Tok::Int(n), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            other => return Err(Error::Syntax { column: col, message: format!("unexpected character `{}`", other) }),
        };
        toks.push((t, col));
        i += 1;
    }
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    vars: &'a Variables,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { column: self.col(), message: String::from(message) })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    return self.syntax("implicit multiplication is not allowed; use `*`");
                }
                Some(Tok::Slash) => return self.syntax("`/` is only allowed between integer literals"),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if matches!(self.peek(), Some(Tok::Dot) | Some(Tok::Slash)) {
                    return Err(Error::NonIntegerExponent { column: col });
                }
                let e = n
                    .to_u32()
                    .ok_or_else(|| Error::Syntax { column: col, message: String::from("exponent too large") })?;
                Ok(base.pow(e))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent { column: col }),
            Some(Tok::Dot) => Err(Error::NonIntegerExponent { column: col }),
            Some(Tok::Ident(_)) | Some(Tok::LParen) => Err(Error::NonIntegerExponent { column: col }),
            _ => Err(Error::Syntax { column: col, message: String::from("expected an exponent after `^`") }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Dot) {
                    return self.syntax("decimal literals are not allowed; use p/q");
                }
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(Error::Syntax { column: dcol, message: String::from("zero denominator") });
                            }
                            Ok(Polynomial::constant(self.vars, Rational::new(n, d)))
                        }
                        _ => Err(Error::Syntax {
                            column: dcol,
                            message: String::from("`/` is only allowed between integer literals"),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(self.vars, i)),
                None => Err(Error::UnknownVariable { name, column: col }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax { column: col, message: String::from("expected a number, variable or `(`") }),
            None => Err(Error::Syntax { column: col, message: String::from("unexpected end of input") }),
        }
    }
}

/// Parse `text` as a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &Variables) -> Result<Polynomial> {
    let lexer = lex(text)?;
    let mut p = Parser { toks: &lexer.toks, pos: 0, vars, end_col: text.chars().count() + 1 };
    let poly = p.expr()?;
    if p.pos < lexer.toks.len() {
        return p.syntax("unexpected token");
    }
    Ok(poly)
}

/// Parse a rational literal `p` or `p/q` (optionally signed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let bad = || Error::Syntax { column: 1, message: format!("bad rational literal `{}`", text) };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Convenience for tests and fixtures: parse several polynomials over the same
/// variables.
pub fn parse_many(texts: &[&str], vars: &Variables) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(t, vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::polynomial::variables;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn example_terms() {
        let v = variables(&["x", "y", "z"]);
        let p = parse_polynomial("x^2*z + y^2", &v).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial::new(vec![2, 0, 1])), int(1));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 2, 0])), int(1));
        assert!(parse_polynomial("0", &v).unwrap().is_zero());
    }

    #[test]
    fn six_variable_component() {
        let v = variables(&["x1", "x2", "y1", "y2", "z1", "z2"]);
        let p = parse_polynomial("2*x1*z1 - 2*z2*x2 - x1^5", &v).unwrap();
        let mut coeffs: Vec<_> = p.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![int(-2), int(-1), int(2)]);
    }

    #[test]
    fn errors_carry_columns() {
        let v = variables(&["x", "y"]);
        assert_eq!(
            parse_polynomial("x +* y", &v).unwrap_err(),
            Error::Syntax { column: 4, message: String::from("expected a number, variable or `(`") }
        );
        assert!(matches!(parse_polynomial("x + w", &v), Err(Error::UnknownVariable { column: 5, .. })));
        assert!(matches!(parse_polynomial("x^-2", &v), Err(Error::NegativeExponent { column: 3 })));
        assert!(matches!(parse_polynomial("x^1.5", &v), Err(Error::NonIntegerExponent { column: 3 })));
        assert!(matches!(parse_polynomial("x^y", &v), Err(Error::NonIntegerExponent { .. })));
        assert!(matches!(parse_polynomial("2x", &v), Err(Error::Syntax { column: 2, .. })));
        assert!(matches!(parse_polynomial("(x + y", &v), Err(Error::Syntax { column: 7, .. })));
        assert!(matches!(parse_polynomial("1/0", &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x $ y", &v), Err(Error::Syntax { column: 3, .. })));
    }

    #[test]
    fn whitespace_and_parens() {
        let v = variables(&["x", "y"]);
        let a = parse_polynomial(" ( x + y ) ^ 2 ", &v).unwrap();
        let b = parse_polynomial("x^2+2*x*y+y^2", &v).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("-(-x)", &v).unwrap(), parse_polynomial("x", &v).unwrap());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), crate::rational::frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
