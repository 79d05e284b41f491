//! Tokenizer and arithmetic expression grammar shared by scalar literals and
//! the definition language.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | juxtaposed)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! A juxtaposed factor is an identifier or a parenthesized expression written
//! directly after another factor, so `2a` and `2(b-1)` multiply.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::scalar::{ParameterContext, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Eq,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{}", n),
            Tok::Ident(s) => write!(f, "{}", s),
            Tok::Str(s) => write!(f, "{:?}", s),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::Comma => write!(f, ","),
            Tok::Dot => write!(f, "."),
            Tok::Eq => write!(f, "="),
            Tok::Arrow => write!(f, "=>"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub message: String,
}

impl ExprError {
    fn new(col: usize, message: impl Into<String>) -> Self {
        ExprError {
            col,
            message: message.into(),
        }
    }
}

/// Splits one line into tokens. A `#` starts a comment that runs to the end.
pub fn lex(line: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n: BigInt = text.parse().map_err(|_| ExprError::new(col, "bad integer"))?;
            out.push(Token { tok: Tok::Int(n), col });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(text),
                col,
            });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i >= chars.len() {
                return Err(ExprError::new(col, "unterminated string"));
            }
            let text: String = chars[start..i].iter().collect();
            i += 1;
            out.push(Token {
                tok: Tok::Str(text),
                col,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '=' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    Tok::Eq
                }
            }
            other => return Err(ExprError::new(col, format!("unexpected character `{}`", other))),
        };
        i += 1;
        out.push(Token { tok, col });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, _, _) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, _, _) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(_, _) => 4,
            Expr::Int(_) | Expr::Ident(_) => 5,
        }
    }

    /// Evaluates with identifiers read as parameters of `ctx`.
    pub fn eval_scalar(&self, ctx: Option<&Arc<ParameterContext>>) -> Result<Scalar, ScalarError> {
        match self {
            Expr::Int(n) => Ok(Scalar::Rat(BigRational::from_integer(n.clone()))),
            Expr::Ident(name) => match ctx {
                Some(c) => Scalar::param(c, name),
                None => Err(ScalarError::UnknownParameter(name.clone())),
            },
            Expr::Neg(e) => Ok(-e.eval_scalar(ctx)?),
            Expr::Bin(op, l, r) => {
                let l = l.eval_scalar(ctx)?;
                let r = r.eval_scalar(ctx)?;
                match op {
                    BinOp::Add => l.checked_add(&r),
                    BinOp::Sub => l.checked_sub(&r),
                    BinOp::Mul => l.checked_mul(&r),
                    BinOp::Div => l.checked_div(&r),
                }
            }
            Expr::Pow(b, k) => b.eval_scalar(ctx)?.pow(*k),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{}", n),
            Expr::Ident(s) => write!(f, "{}", s),
            Expr::Neg(e) => {
                if e.precedence() <= 3 {
                    write!(f, "-({})", e)
                } else {
                    write!(f, "-{}", e)
                }
            }
            Expr::Pow(b, k) => {
                if b.precedence() < 5 {
                    write!(f, "({})^{}", b, k)
                } else {
                    write!(f, "{}^{}", b, k)
                }
            }
            Expr::Bin(op, l, r) => {
                let p = self.precedence();
                let sym = match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                if l.precedence() < p {
                    write!(f, "({})", l)?;
                } else {
                    write!(f, "{}", l)?;
                }
                write!(f, "{}", sym)?;
                if r.precedence() <= p {
                    write!(f, "({})", r)
                } else {
                    write!(f, "{}", r)
                }
            }
        }
    }
}

/// Recursive-descent parser over a token slice.
pub struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

pub type IdentCheck<'c> = dyn FnMut(&str, usize) -> Result<(), ExprError> + 'c;

impl<'a> ExprParser<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        ExprParser { tokens, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn col(&self) -> usize {
        match self.tokens.get(self.pos) {
            Some(t) => t.col,
            None => self.tokens.last().map(|t| t.col + t.tok.to_string().len()).unwrap_or(1),
        }
    }

    pub fn advance(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ExprError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(ExprError::new(self.col(), format!("expected `{}`", tok)))
        }
    }

    pub fn expect_end(&self) -> Result<(), ExprError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(ExprError::new(t.col, format!("unexpected `{}`", t.tok))),
        }
    }

    pub fn parse_expr(&mut self, check: &mut IdentCheck<'_>) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_term(check)?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.parse_term(check)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn parse_term(&mut self, check: &mut IdentCheck<'_>) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_unary(check)?;
        loop {
            let (op, consume) = match self.peek() {
                Some(Tok::Star) => (BinOp::Mul, true),
                Some(Tok::Slash) => (BinOp::Div, true),
                Some(Tok::Ident(_)) | Some(Tok::LParen) => (BinOp::Mul, false),
                _ => return Ok(lhs),
            };
            if consume {
                self.pos += 1;
            }
            let rhs = self.parse_unary(check)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn parse_unary(&mut self, check: &mut IdentCheck<'_>) -> Result<Expr, ExprError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.parse_unary(check)?)));
        }
        let base = self.parse_atom(check)?;
        if self.eat(&Tok::Caret) {
            let negative = self.eat(&Tok::Minus);
            let col = self.col();
            match self.advance().map(|t| &t.tok) {
                Some(Tok::Int(n)) => {
                    let k: i32 = n.try_into().map_err(|_| ExprError::new(col, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }));
                }
                _ => return Err(ExprError::new(col, "expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn parse_atom(&mut self, check: &mut IdentCheck<'_>) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.advance().map(|t| &t.tok) {
            Some(Tok::Int(n)) => Ok(Expr::Int(n.clone())),
            Some(Tok::Ident(s)) => {
                check(s, col)?;
                Ok(Expr::Ident(s.clone()))
            }
            Some(Tok::LParen) => {
                let e = self.parse_expr(check)?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(t) => Err(ExprError::new(
                col,
                format!("expected a number, name or `(`, found `{}`", t),
            )),
            None => Err(ExprError::new(col, "expected a number, name or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Expr {
        let toks = lex(text).unwrap();
        let mut p = ExprParser::new(&toks);
        let e = p.parse_expr(&mut |_, _| Ok(())).unwrap();
        p.expect_end().unwrap();
        e
    }

    #[test]
    fn implicit_multiplication_binds_like_star() {
        assert_eq!(parse("2a/(b-1)"), parse("(2*a)/(b-1)"));
        assert_eq!(parse("2(b-1)"), parse("2*(b-1)"));
    }

    #[test]
    fn render_reparses_to_same_tree() {
        for text in [
            "-a^2*(b-2)/(b-1)^2",
            "a - (b - 1)",
            "-(a+b)*c",
            "a/(b/c)",
            "(a^2)^3",
            "1 - -a",
        ] {
            let e = parse(text);
            assert_eq!(parse(&e.to_string()), e, "{}", text);
        }
    }

    #[test]
    fn hyphen_is_always_a_separate_token() {
        let toks = lex("left-alternative").unwrap();
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[2].col, 6);
    }

    #[test]
    fn errors_carry_columns() {
        let toks = lex("a + $").unwrap_err();
        assert_eq!(toks.col, 5);
        let toks = lex("(a + ").unwrap();
        let mut p = ExprParser::new(&toks);
        assert!(p.parse_expr(&mut |_, _| Ok(())).is_err());
    }
}
