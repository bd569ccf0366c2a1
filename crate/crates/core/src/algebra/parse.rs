//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' INTEGER)?
//! primary := INTEGER ('/' INTEGER)? | 'i' | 'x' | 'y' | 'u1' | 'u2' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::monomial::Var;
use super::polynomial::Polynomial;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
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
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= bytes.len() {
            return Ok((start, Tok::End));
        }
        let ch = self.src[self.pos..].chars().next().expect("in bounds");
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((start, t));
        }
        if ch.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(n)));
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        Err(ParseError::Syntax { pos: start, msg: format!("unexpected character '{ch}'") })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lex = Lexer { src, pos: 0 };
        let (pos, tok) = lex.next()?;
        Ok(Self { lex, tok, pos })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (pos, tok) = self.lex.next()?;
        self.pos = pos;
        self.tok = tok;
        Ok(())
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.tok == Tok::Star {
            self.bump()?;
            acc = &acc * &self.unary()?;
        }
        if self.tok == Tok::Slash {
            return self.syntax("division is only allowed between integer literals");
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.tok {
            Tok::Minus => {
                self.bump()?;
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        match &self.tok {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| ParseError::BadExponent { pos: self.pos, msg: "exponent too large".into() })?;
                self.bump()?;
                Ok(base.pow(e))
            }
            _ => Err(ParseError::BadExponent { pos: self.pos, msg: "exponent must be a nonnegative integer".into() }),
        }
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.bump()?;
                if self.tok != Tok::Slash {
                    return Ok(Polynomial::constant(BigRational::from_integer(n).into()));
                }
                self.bump()?;
                let Tok::Int(d) = std::mem::replace(&mut self.tok, Tok::End) else {
                    return self.syntax("expected an integer denominator");
                };
                if d.is_zero() {
                    return Err(ParseError::ZeroDenominator { pos: self.pos });
                }
                self.bump()?;
                Ok(Polynomial::constant(BigRational::new(n, d).into()))
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump()?;
                if name == "i" {
                    return Ok(Polynomial::constant(GaussianRational::i()));
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(Polynomial::var(v)),
                    None => Err(ParseError::UnknownIdentifier { pos: at, name }),
                }
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.syntax("expected ')'");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.syntax("unexpected end of input"),
            other => {
                self.tok = other;
                self.syntax("expected a number, variable or '('")
            }
        }
    }
}

/// Parses an expression into its canonical polynomial.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_read_off() {
        assert_eq!(parse_polynomial("x^2 + y^2").unwrap().to_string(), "x^2 + y^2");
        assert_eq!(parse_polynomial("i*u1 - 1/2").unwrap().to_string(), "i*u1 - 1/2");
        assert_eq!(parse_polynomial("-(x - 2*y)^2").unwrap().to_string(), "-x^2 + 4*x*y - 4*y^2");
        assert_eq!(parse_polynomial("(1+i)*x").unwrap().to_string(), "(1+i)*x");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_polynomial("x^(-1)"), Err(ParseError::BadExponent { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x + z"), Err(ParseError::UnknownIdentifier { pos: 4, .. })));
        assert!(matches!(parse_polynomial("x +"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0"), Err(ParseError::ZeroDenominator { .. })));
        assert!(matches!(parse_polynomial("x/2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^1/2"), Err(ParseError::Syntax { .. })));
    }
}
