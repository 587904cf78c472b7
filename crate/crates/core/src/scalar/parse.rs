//! Text syntax shared by every file format: integer literals, identifiers,
//! `+ - * / ^ ( )`, plus the basis atoms `L[alpha,i]` used by element text.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Parsed expression tree. Evaluation into scalars or algebra elements is
/// done by the consumer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Basis(i64, i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// All identifiers appearing in the expression.
    pub fn identifiers(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Ident(s) => {
                out.insert(s.clone());
            }
            Expr::Int(_) | Expr::Basis(..) => {}
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let mut out = vec![];
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError {
                    line,
                    col: col + (i - start),
                    message: "decimal literals are not allowed; write an exact fraction".into(),
                });
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(s.parse().expect("digits")), l0, c0));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Ident(s), l0, c0));
            continue;
        }
        if "+-*/^()[],".contains(ch) {
            out.push((Tok::Sym(ch), l0, c0));
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError {
            line,
            col,
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (_, line, col) = &self.toks[self.pos];
        ParseError {
            line: *line,
            col: *col,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Sym('-') => {
                self.next();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Sym('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.next();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Tok::Int(n) => {
                let v: i64 = n.try_into().map_err(|_| self.err("integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if *self.peek() == Tok::Sym('(') {
            self.next();
            let e = self.signed_int()?;
            self.expect(')')?;
            Ok(e)
        } else {
            self.signed_int()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.next();
                if name == "L" && *self.peek() == Tok::Sym('[') {
                    self.next();
                    let alpha = self.signed_int()?;
                    self.expect(',')?;
                    let i = self.signed_int()?;
                    self.expect(']')?;
                    return Ok(Expr::Basis(alpha, i));
                }
                Ok(Expr::Ident(name))
            }
            Tok::Sym('(') => {
                self.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(self.err("unexpected end of input")),
            Tok::Sym(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses an expression in the shared text syntax.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut lx = Lexer {
        toks: lex(text)?,
        pos: 0,
    };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Basis(a, i) => write!(f, "L[{a},{i}]"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, e) => write!(f, "({a})^({e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse_expr("-2*q^2 + 3").unwrap();
        assert_eq!(e.to_string(), "((-(2) * (q)^(2)) + 3)");
        assert_eq!(parse_expr("-q^2").unwrap().to_string(), "-((q)^(2))");
    }

    #[test]
    fn basis_atoms() {
        let e = parse_expr("-4*q*L[0,0] + (1/2)*c").unwrap();
        assert_eq!(
            e.identifiers().into_iter().collect::<Vec<_>>(),
            vec!["c", "q"]
        );
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_expr("1 +\n  2 * )").unwrap_err();
        assert_eq!((err.line, err.col), (2, 7));
        let err = parse_expr("0.5*q").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("decimal"));
    }

    #[test]
    fn negative_exponents() {
        assert!(matches!(parse_expr("q^-1").unwrap(), Expr::Pow(_, -1)));
        assert!(matches!(parse_expr("q^(-2)").unwrap(), Expr::Pow(_, -2)));
    }
}
