//! Recursive-descent parser for polynomial expressions in `x, y, z`.
//!
//! Grammar:
//!
//! ```text
//! expr   := sign? term (('+' | '-') sign? term)*
//! term   := factor (('*' factor) | factor)*     -- juxtaposition before '(' or a variable
//! factor := base ('^' integer)?
//! base   := integer ('/' integer)? | 'x' | 'y' | 'z' | '(' expr ')'
//! ```
//!
//! `p/q` between integer literals is a rational constant; any other use of
//! `/` is rejected. Every error carries the byte offset where it occurred.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::tripoly::{TriPoly, Var};

const MAX_NESTING: usize = 200;
const MAX_DEGREE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TokenKind {
    Number,
    Variable,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Slash,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Number => "number",
            TokenKind::Variable => "variable",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Star => "'*'",
            TokenKind::Caret => "'^'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::Slash => "'/'",
            TokenKind::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    None,
    Int(BigInt),
    Var(Var),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprToken {
    pub kind: TokenKind,
    pub payload: Payload,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub message: String,
    pub position: usize,
    pub expected: Vec<TokenKind>,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.position)?;
        if !self.expected.is_empty() {
            let names: Vec<String> = self.expected.iter().map(|k| k.to_string()).collect();
            write!(f, " (expected {})", names.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseDiagnostic {}

const OPERAND_START: [TokenKind; 3] = [TokenKind::Number, TokenKind::Variable, TokenKind::LParen];

fn diag(message: impl Into<String>, position: usize, expected: &[TokenKind]) -> ParseDiagnostic {
    ParseDiagnostic {
        message: message.into(),
        position,
        expected: expected.to_vec(),
    }
}

pub fn tokenize(input: &str) -> Result<Vec<ExprToken>, ParseDiagnostic> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let simple = |kind| ExprToken {
            kind,
            payload: Payload::None,
            position: i,
        };
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("ascii digits");
                out.push(ExprToken {
                    kind: TokenKind::Number,
                    payload: Payload::Int(n),
                    position: start,
                });
                continue;
            }
            b'x' | b'y' | b'z' => {
                let v = match b {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => Var::Z,
                };
                out.push(ExprToken {
                    kind: TokenKind::Variable,
                    payload: Payload::Var(v),
                    position: i,
                });
            }
            b'+' => out.push(simple(TokenKind::Plus)),
            b'-' => out.push(simple(TokenKind::Minus)),
            b'*' => out.push(simple(TokenKind::Star)),
            b'^' => out.push(simple(TokenKind::Caret)),
            b'(' => out.push(simple(TokenKind::LParen)),
            b')' => out.push(simple(TokenKind::RParen)),
            b'/' => out.push(simple(TokenKind::Slash)),
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(diag(format!("unexpected character `{ch}`"), i, &OPERAND_START));
            }
        }
        i += 1;
    }
    out.push(ExprToken {
        kind: TokenKind::End,
        payload: Payload::None,
        position: input.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<ExprToken>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &ExprToken {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> ExprToken {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<TriPoly, ParseDiagnostic> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    acc = &acc + &self.signed_term()?;
                }
                TokenKind::Minus => {
                    self.bump();
                    acc = &acc - &self.signed_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<TriPoly, ParseDiagnostic> {
        match self.peek().kind {
            TokenKind::Minus => {
                self.bump();
                Ok(-self.term()?)
            }
            TokenKind::Plus => {
                self.bump();
                self.term()
            }
            _ => self.term(),
        }
    }

    fn term(&mut self) -> Result<TriPoly, ParseDiagnostic> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                TokenKind::LParen | TokenKind::Variable => {
                    acc = &acc * &self.factor()?;
                }
                TokenKind::Slash => {
                    return Err(diag(
                        "division is only allowed between integer literals",
                        self.peek().position,
                        &[TokenKind::Star, TokenKind::Plus, TokenKind::Minus],
                    ));
                }
                _ => return Ok(acc),
            }
            check_degree(&acc, self.tokens[self.pos.saturating_sub(1)].position)?;
        }
    }

    fn factor(&mut self) -> Result<TriPoly, ParseDiagnostic> {
        let base = self.base()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match (&t.kind, &t.payload) {
            (TokenKind::Number, Payload::Int(n)) => {
                let deg = base.total_degree().unwrap_or(0) as u64;
                let e = n.to_u64().filter(|e| deg.saturating_mul(*e) <= MAX_DEGREE && *e <= MAX_DEGREE);
                match e {
                    Some(e) => Ok(base.pow(e as u32)),
                    None => Err(diag("exponent too large", t.position, &[TokenKind::Number])),
                }
            }
            (TokenKind::Minus, _) => Err(diag(
                "negative exponents are not allowed",
                t.position,
                &[TokenKind::Number],
            )),
            _ => Err(diag("expected a non-negative integer exponent", t.position, &[TokenKind::Number])),
        }
    }

    fn base(&mut self) -> Result<TriPoly, ParseDiagnostic> {
        let t = self.bump();
        match (t.kind, t.payload) {
            (TokenKind::Number, Payload::Int(n)) => {
                if self.peek().kind != TokenKind::Slash {
                    return Ok(TriPoly::constant(Rational::from_int(n)));
                }
                self.bump();
                let d = self.bump();
                match (d.kind, d.payload) {
                    (TokenKind::Number, Payload::Int(den)) if den.is_zero() => {
                        Err(diag("zero denominator", d.position, &[TokenKind::Number]))
                    }
                    (TokenKind::Number, Payload::Int(den)) => Ok(TriPoly::constant(
                        Rational::new(n, den).expect("nonzero denominator"),
                    )),
                    _ => Err(diag(
                        "division is only allowed between integer literals",
                        d.position,
                        &[TokenKind::Number],
                    )),
                }
            }
            (TokenKind::Variable, Payload::Var(v)) => Ok(TriPoly::var(v)),
            (TokenKind::LParen, _) => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(diag("parentheses nested too deeply", t.position, &[]));
                }
                let inner = self.expr()?;
                self.depth -= 1;
                let close = self.bump();
                if close.kind != TokenKind::RParen {
                    return Err(diag(
                        format!("unexpected {}", close.kind),
                        close.position,
                        &[TokenKind::RParen, TokenKind::Plus, TokenKind::Minus, TokenKind::Star],
                    ));
                }
                Ok(inner)
            }
            (kind, _) => Err(diag(format!("unexpected {kind}"), t.position, &OPERAND_START)),
        }
    }
}

fn check_degree(p: &TriPoly, position: usize) -> Result<(), ParseDiagnostic> {
    match p.total_degree() {
        Some(d) if d as u64 > MAX_DEGREE => Err(diag("polynomial degree too large", position, &[])),
        _ => Ok(()),
    }
}

/// Parses `input` into an expanded polynomial.
pub fn parse_expression(input: &str) -> Result<TriPoly, ParseDiagnostic> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let p = parser.expr()?;
    let t = parser.peek();
    if t.kind != TokenKind::End {
        return Err(diag(
            format!("unexpected {}", t.kind),
            t.position,
            &[TokenKind::Plus, TokenKind::Minus, TokenKind::Star, TokenKind::End],
        ));
    }
    Ok(p)
}

/// Parses and additionally demands a homogeneous nonzero result.
pub fn parse_homogeneous(input: &str) -> Result<TriPoly, ParseDiagnostic> {
    let p = parse_expression(input)?;
    if !p.is_homogeneous() {
        return Err(diag("polynomial is not homogeneous", 0, &[]));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> TriPoly {
        TriPoly::x()
    }
    fn y() -> TriPoly {
        TriPoly::y()
    }
    fn z() -> TriPoly {
        TriPoly::z()
    }
    fn c(n: i64) -> TriPoly {
        TriPoly::constant(Rational::from(n))
    }

    #[test]
    fn quartic_from_remark() {
        let p = parse_expression("(y*z+x^2)^2 - x^3*z").unwrap();
        assert_eq!(p, (y() * z() + x().pow(2)).pow(2) - x().pow(3) * z());
    }

    #[test]
    fn valles_pencil_degree_fifteen() {
        let p = parse_expression("x*y*z*(x^3+y^3+z^3)*((x^3+y^3+z^3)^3-27*x^3*y^3*z^3)").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(15));
        let juxt = parse_expression("xyz(x^3+y^3+z^3)((x^3+y^3+z^3)^3-27x^3y^3z^3)").unwrap();
        assert_eq!(p, juxt);
    }

    #[test]
    fn negative_exponent_points_at_minus() {
        let e = parse_expression("x^-1").unwrap_err();
        assert_eq!(e.position, 2);
        assert_eq!(e.expected, vec![TokenKind::Number]);
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expression("x+y*z^2").unwrap(), x() + y() * z().pow(2));
        assert_eq!(parse_expression("-x^2").unwrap(), -x().pow(2));
        assert_eq!(parse_expression("2x^2y").unwrap(), c(2) * x().pow(2) * y());
    }

    #[test]
    fn rational_literals() {
        let half = TriPoly::constant(Rational::new(1, 2).unwrap());
        assert_eq!(parse_expression("1/2*x").unwrap(), &half * &x());
        assert_eq!(parse_expression("3/6x").unwrap(), &half * &x());
        assert_eq!(parse_expression("(1/2)^2").unwrap(), &half * &half);
    }

    #[test]
    fn division_diagnostics() {
        let e = parse_expression("x/2").unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_expression("2/x").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_expression("2/0").unwrap_err();
        assert_eq!(e.position, 2);
    }

    #[test]
    fn assorted_errors_have_positions() {
        for (s, pos) in [("x+", 2), ("(x+y", 4), ("x y 2", 4), ("w", 0), ("x)", 1), ("", 0), ("x**y", 2)] {
            let e = parse_expression(s).unwrap_err();
            assert_eq!(e.position, pos, "input {s:?}: {e}");
            assert!(e.position <= s.len());
        }
    }

    #[test]
    fn homogeneity_demand() {
        assert!(parse_homogeneous("x^2+y").is_err());
        assert!(parse_homogeneous("x^2+y*z").is_ok());
    }
}
