//! Recursive-descent parser for the expression grammar printed by
//! [`ScalarExpr`]'s `Display`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use constraint_forge_core::{GaussRational, ScalarExpr, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unexpected end of input at {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("unknown identifier {name:?} at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("exponent out of range at {pos}")]
    BadExponent { pos: usize },
    #[error("{message} at {pos}")]
    Algebra { pos: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::UnexpectedEnd { pos }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::BadExponent { pos }
            | ParseError::Algebra { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok((start, Tok::End));
        };
        if c.is_ascii_digit() {
            let len = trimmed.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(trimmed.len());
            self.pos += len;
            let n: BigInt = trimmed[..len].parse().expect("digits");
            return Ok((start, Tok::Int(n)));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = trimmed
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(trimmed.len());
            self.pos += len;
            return Ok((start, Tok::Ident(trimmed[..len].to_string())));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((start, Tok::Op(c)));
        }
        Err(ParseError::UnexpectedChar { pos: start, found: c })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Tok),
}

fn algebra(pos: usize, e: impl std::fmt::Display) -> ParseError {
    ParseError::Algebra { pos, message: e.to_string() }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let peeked = lexer.next()?;
        Ok(Self { lexer, peeked })
    }

    fn bump(&mut self) -> Result<(usize, Tok), ParseError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn at_op(&self, c: char) -> bool {
        self.peeked.1 == Tok::Op(c)
    }

    fn unexpected(&self) -> ParseError {
        let pos = self.peeked.0;
        match &self.peeked.1 {
            Tok::End => ParseError::UnexpectedEnd { pos },
            _ => ParseError::UnexpectedChar { pos, found: self.lexer.src[pos..].chars().next().unwrap_or(' ') },
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.term()?;
        while self.at_op('+') || self.at_op('-') {
            let (_, op) = self.bump()?;
            let rhs = self.term()?;
            acc = if op == Tok::Op('+') { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.unary()?;
        while self.at_op('*') || self.at_op('/') {
            let (pos, op) = self.bump()?;
            let rhs = self.unary()?;
            acc = if op == Tok::Op('*') {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|e| algebra(pos, e))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        if self.at_op('-') {
            self.bump()?;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.atom()?;
        if !self.at_op('^') {
            return Ok(base);
        }
        let (pos, _) = self.bump()?;
        let negative = self.at_op('-');
        if negative {
            self.bump()?;
        }
        let (epos, tok) = self.bump()?;
        let Tok::Int(n) = tok else {
            self.peeked = (epos, tok);
            return Err(self.unexpected());
        };
        let e: i32 = i32::try_from(n).map_err(|_| ParseError::BadExponent { pos: epos })?;
        base.powi(if negative { -e } else { e }).map_err(|err| algebra(pos, err))
    }

    fn atom(&mut self) -> Result<ScalarExpr, ParseError> {
        let (pos, tok) = self.bump()?;
        match tok {
            Tok::Int(n) => Ok(ScalarExpr::constant(GaussRational::real(BigRational::from_integer(n)))),
            Tok::Ident(name) => match name.as_str() {
                "R" => Ok(ScalarExpr::root()),
                "i" => Ok(ScalarExpr::i()),
                _ => Var::from_name(&name)
                    .map(ScalarExpr::var)
                    .ok_or(ParseError::UnknownIdentifier { pos, name }),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.at_op(')') {
                    return Err(self.unexpected());
                }
                self.bump()?;
                Ok(inner)
            }
            other => {
                self.peeked = (pos, other);
                Err(self.unexpected())
            }
        }
    }
}

/// Parse one expression; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<ScalarExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peeked.1 != Tok::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels() {
        assert!(parse_expr("S*P - P*S").unwrap().is_zero());
    }

    #[test]
    fn precedence() {
        let e = parse_expr("1 + 2*S^2 - -3/4").unwrap();
        let s = ScalarExpr::s();
        assert_eq!(e, &ScalarExpr::ratio(7, 4) + &(&ScalarExpr::int(2) * &s.pow(2)));
        assert_eq!(parse_expr("-S^2").unwrap(), -s.pow(2));
        assert_eq!(parse_expr("S^-1").unwrap(), s.inv().unwrap());
    }

    #[test]
    fn root_squares_to_radicand() {
        let e = parse_expr("R^2 - (S + 2*theta)/S").unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(parse_expr("1/0"), Err(ParseError::Algebra { pos: 1, .. })));
        assert!(matches!(parse_expr("1/(S - S)"), Err(ParseError::Algebra { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_expr("S + q").unwrap_err(), ParseError::UnknownIdentifier { pos: 4, name: "q".into() });
        assert_eq!(parse_expr("S +").unwrap_err(), ParseError::UnexpectedEnd { pos: 3 });
        assert_eq!(parse_expr("(S").unwrap_err().position(), 2);
        assert_eq!(parse_expr("S $").unwrap_err(), ParseError::UnexpectedChar { pos: 2, found: '$' });
        assert_eq!(parse_expr("S S").unwrap_err().position(), 2);
        assert!(matches!(parse_expr("S^x"), Err(ParseError::UnexpectedChar { pos: 2, .. })));
    }

    #[test]
    fn complex_literals() {
        let e = parse_expr("(1 + 2*i)*S - i").unwrap();
        assert_eq!(e.to_string(), "(1 + 2*i)*S - i");
    }
}
