//! Closed-form expressions to jets.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x' | 'y' | ('exp' | 'sin' | 'cos') '(' expr ')' | '(' expr ')'
//! ```
//!
//! Numbers are decimal literals and are read exactly. Exponents must evaluate
//! to integer constants; division requires a unit denominator.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{JetError, ParseError, ParseErrorKind};
use crate::jet::{Jet, Rational};

/// Parses `text` into its order-`order` Taylor expansion at the origin.
pub fn parse_expr(text: &str, order: u32) -> Result<Jet, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        order,
        end: text.len(),
    };
    let jet = parser.expr()?;
    match parser.peek() {
        None => Ok(jet),
        Some(t) => Err(parser.unexpected(t.clone())),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    at: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            let mut frac_part = "";
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac_part = &text[fs..i];
            }
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar('.'),
                    position: start,
                });
            }
            out.push(Token {
                tok: Tok::Num(decimal(int_part, frac_part)),
                at: start,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                at: start,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                at: i,
            });
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or(c);
            return Err(ParseError {
                kind: ParseErrorKind::UnexpectedChar(ch),
                position: i,
            });
        }
    }
    Ok(out)
}

fn decimal(int_part: &str, frac_part: &str) -> Rational {
    let digits: String = int_part.chars().chain(frac_part.chars()).collect();
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().unwrap_or_default()
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Rational::new(num, den)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    order: u32,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token { tok: Tok::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.at).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind, position: usize) -> ParseError {
        ParseError { kind, position }
    }

    fn unexpected(&self, t: Token) -> ParseError {
        let shown = match t.tok {
            Tok::Num(n) => alloc::format!("number {n}"),
            Tok::Ident(s) => alloc::format!("identifier {s:?}"),
            Tok::Op(c) => alloc::format!("{c:?}"),
        };
        self.err(ParseErrorKind::UnexpectedToken(shown), t.at)
    }

    fn expect_op(&mut self, op: char) -> Result<(), ParseError> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Op(c), .. }) if c == op => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.unexpected(t)),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd, self.end)),
        }
    }

    fn expr(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Jet, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                let inv = rhs
                    .inverse()
                    .map_err(|_| self.err(ParseErrorKind::DivisionByNonUnit, at))?;
                &acc * &inv
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Jet, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Jet, ParseError> {
        let base = self.primary()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let exponent = self.unary()?;
        let n = integer_constant(&exponent)
            .ok_or_else(|| self.err(ParseErrorKind::NonIntegerExponent, at))?;
        let magnitude = n
            .abs()
            .to_u32()
            .ok_or_else(|| self.err(ParseErrorKind::NonIntegerExponent, at))?;
        if n.is_negative() {
            let inv = base
                .inverse()
                .map_err(|_| self.err(ParseErrorKind::DivisionByNonUnit, at))?;
            Ok(inv.pow(magnitude))
        } else {
            Ok(base.pow(magnitude))
        }
    }

    fn primary(&mut self) -> Result<Jet, ParseError> {
        let token = match self.peek().cloned() {
            Some(t) => t,
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd, self.end)),
        };
        self.pos += 1;
        match token.tok {
            Tok::Num(n) => Ok(Jet::constant(n, self.order)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect_op(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Jet::x(self.order)),
                "y" => Ok(Jet::y(self.order)),
                "exp" | "sin" | "cos" => {
                    self.expect_op('(')?;
                    let arg_at = self.here();
                    let arg = self.expr()?;
                    self.expect_op(')')?;
                    let result = match name.as_str() {
                        "exp" => arg.exp(),
                        "sin" => arg.sin(),
                        _ => arg.cos(),
                    };
                    result.map_err(|e| match e {
                        JetError::TranscendentalConstant { func } => {
                            self.err(ParseErrorKind::TranscendentalConstant(func), arg_at)
                        }
                        _ => self.err(ParseErrorKind::DivisionByNonUnit, arg_at),
                    })
                }
                _ => Err(self.err(ParseErrorKind::UnknownIdentifier(name), token.at)),
            },
            Tok::Op(_) => Err(self.unexpected(token)),
        }
    }
}

/// The integer value of a constant jet, if it is one.
fn integer_constant(j: &Jet) -> Option<BigInt> {
    if j.terms().any(|(m, _)| m.degree() > 0) {
        return None;
    }
    let c = j.constant_term();
    if c.is_integer() {
        Some(c.to_integer())
    } else {
        None
    }
}
