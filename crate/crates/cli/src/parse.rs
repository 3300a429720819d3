//! Expression grammar for tensor polynomials.
//!
//! ```text
//! sum     := ['+'|'-'] tensor (('+'|'-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := postfix (['*'] postfix)*
//! postfix := atom '\''*
//! atom    := INT | 'q' ['^' ['-'] INT] | IDENT ['[' INT (',' INT)* ']'] | '(' sum ')'
//! ```
//!
//! `one` and `zero` name the unit and zero symbols.

use std::fmt;

use qgauge_core::ncalg::{GenSymbol, TensorPoly};
use qgauge_core::{LaurentInt, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Prime,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Tensor,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i..].starts_with(&['(', 'x', ')']) {
            out.push((col, Tok::Tensor));
            i += 3;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '\'' => Some(Tok::Prime),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((col, t));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v =
                s.parse().map_err(|_| ParseError { column: col, message: format!("integer {} is too large", s) })?;
            out.push((col, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}

/// Scalars stay degree-free until they meet a polynomial.
#[derive(Clone, Debug)]
enum Value {
    Scalar(LaurentInt),
    Poly(Poly),
}

impl Value {
    fn into_poly(self, degree: usize) -> Poly {
        match self {
            Value::Scalar(c) => Poly::scalar(c, degree),
            Value::Poly(p) => p,
        }
    }

    fn degree(&self) -> Option<usize> {
        match self {
            Value::Scalar(_) => None,
            Value::Poly(p) => Some(p.degree()),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    allow_q: bool,
    known: Option<&'a dyn Fn(&GenSymbol) -> bool>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.col(), message: message.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {}", what))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn combine(&self, a: Value, b: Value, col: usize, add: bool) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(if add { x + y } else { &x * &y })),
            (a, b) => {
                let d = a.degree().or(b.degree()).expect("one side is a polynomial");
                let (p, r) = (a.into_poly(d), b.into_poly(d));
                let res = if add { p.try_add(&r) } else { p.try_mul(&r) };
                res.map(Value::Poly).map_err(|e| ParseError { column: col, message: e.to_string() })
            }
        }
    }

    fn sum(&mut self) -> Result<Value, ParseError> {
        let mut neg = false;
        if self.eat(&Tok::Minus) {
            neg = true;
        } else {
            self.eat(&Tok::Plus);
        }
        let mut acc = self.tensor()?;
        if neg {
            acc = negate(acc);
        }
        loop {
            let col = self.col();
            let neg = if self.eat(&Tok::Plus) {
                false
            } else if self.eat(&Tok::Minus) {
                true
            } else {
                return Ok(acc);
            };
            let t = self.tensor()?;
            acc = self.combine(acc, if neg { negate(t) } else { t }, col, true)?;
        }
    }

    fn tensor(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.product()?;
        while self.eat(&Tok::Tensor) {
            let rhs = self.product()?;
            let (l, r) = (acc.into_poly(1), rhs.into_poly(1));
            acc = Value::Poly(l.tensor(&r));
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.postfix()?;
        loop {
            let col = self.col();
            if !self.eat(&Tok::Star) && !self.starts_atom() {
                return Ok(acc);
            }
            let rhs = self.postfix()?;
            acc = self.combine(acc, rhs, col, false)?;
        }
    }

    fn postfix(&mut self) -> Result<Value, ParseError> {
        let mut v = self.atom()?;
        while self.eat(&Tok::Prime) {
            v = match v {
                Value::Scalar(c) => Value::Scalar(c),
                Value::Poly(p) => Value::Poly(p.adjoint()),
            };
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Value::Scalar(LaurentInt::constant(v)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            Some(Tok::Ident(name)) if name == "q" => {
                self.pos += 1;
                if !self.allow_q {
                    return Err(ParseError { column: col, message: "q is not allowed over the integer ring".into() });
                }
                let mut e = 1;
                if self.eat(&Tok::Caret) {
                    let neg = self.eat(&Tok::Minus);
                    e = self.int()?;
                    if neg {
                        e = -e;
                    }
                }
                Ok(Value::Scalar(LaurentInt::monomial(1, e)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = match name.as_str() {
                    "one" => return Ok(Value::Poly(Poly::unit(1))),
                    "zero" => return Ok(Value::Poly(Poly::zero(1))),
                    _ => {
                        let mut idx = Vec::new();
                        if self.eat(&Tok::LBracket) {
                            loop {
                                let v = self.int()?;
                                idx.push(
                                    u32::try_from(v)
                                        .map_err(|_| ParseError { column: col, message: "index too large".into() })?,
                                );
                                if !self.eat(&Tok::Comma) {
                                    break;
                                }
                            }
                            self.expect(&Tok::RBracket, "']'")?;
                        }
                        GenSymbol::new(&name, &idx)
                    }
                };
                if let Some(known) = self.known {
                    if !known(&g) {
                        return Err(ParseError { column: col, message: format!("unknown generator {}", g) });
                    }
                }
                Ok(Value::Poly(TensorPoly::generator(g)))
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(c) => Value::Scalar(-c),
        Value::Poly(p) => Value::Poly(-&p),
    }
}

fn parse_with(text: &str, allow_q: bool, known: Option<&dyn Fn(&GenSymbol) -> bool>) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1, allow_q, known };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let v = p.sum()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(v.into_poly(1))
}

/// Parses an expression over `Z[q, q^-1]` with any generator names.
pub fn parse_expression(text: &str) -> Result<Poly, ParseError> {
    parse_with(text, true, None)
}

/// Parses an expression, rejecting generators for which `known` is false
/// and, unless `allow_q`, any occurrence of `q`.
pub fn parse_expression_checked(
    text: &str,
    allow_q: bool,
    known: &dyn Fn(&GenSymbol) -> bool,
) -> Result<Poly, ParseError> {
    parse_with(text, allow_q, Some(known))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: u32, j: u32) -> Poly {
        Poly::generator(GenSymbol::matrix("u", i, j))
    }

    #[test]
    fn determinant_relation() {
        let p = parse_expression("u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1").unwrap();
        let expected = &(&(&u(1, 1) * &u(2, 2)) - &(&u(1, 2) * &u(2, 1)).scale(&LaurentInt::q())) - &Poly::unit(1);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1");
    }

    #[test]
    fn adjoint_and_tensor() {
        assert_eq!(parse_expression("u[1,2]'").unwrap(), u(1, 2).adjoint());
        let t = parse_expression("u[1,1] (x) u[2,2]").unwrap();
        assert_eq!(t, u(1, 1).tensor(&u(2, 2)));
        assert_eq!(t.degree(), 2);
        assert_eq!(parse_expression("(u[1,1]*u[1,2])'").unwrap(), (&u(1, 1) * &u(1, 2)).adjoint());
    }

    #[test]
    fn coefficients() {
        let p = parse_expression("2*q^-3 u[1,1] + (1 - q^2) u[2,2]").unwrap();
        assert_eq!(
            p.coefficient(&[qgauge_core::ncalg::Word::letter(GenSymbol::matrix("u", 1, 1))]),
            LaurentInt::monomial(2, -3)
        );
        assert_eq!(
            parse_expression("2 (x) u[1,1]").unwrap(),
            Poly::unit(1).tensor(&u(1, 1)).scale(&LaurentInt::constant(2))
        );
        assert_eq!(parse_expression("one*u[1,1] + zero").unwrap(), u(1, 1));
        assert!(parse_expression("3").unwrap().is_scalar());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_expression("u[1,1] + * u").unwrap_err();
        assert_eq!(e.column, 10);
        assert!(parse_expression("u[1,1] (x) u[1,1] + u[2,2]").unwrap_err().message.contains("degree"));
        assert_eq!(parse_expression("").unwrap_err().message, "empty expression");
        assert!(parse_expression("u[1,1").is_err());
        assert!(parse_expression("u # 1").is_err());
        let known = |g: &GenSymbol| g.name() == "u";
        assert!(parse_expression_checked("w[1,1]", true, &known).unwrap_err().message.contains("unknown"));
        assert!(parse_expression_checked("q*u", false, &known).is_err());
    }

    #[test]
    fn renders_parse_back() {
        for s in ["-u[1,1]' + 2*q^-1*u[2,2]", "(q^2 - 1)*u[1,1](x)u[2,2] + 1(x)1", "q - 1", "-q(x)u[1,1]"] {
            let p = parse_expression(s).unwrap();
            assert_eq!(parse_expression(&p.to_string()).unwrap(), p, "{}", s);
        }
    }
}
