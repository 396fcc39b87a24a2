//! Tokenizer and expression parser shared by the scalar and form grammars.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := wedge (('*' | '/') wedge)*
//! wedge := unary ('^' unary)*
//! unary := '-' unary | '+' unary | power
//! power := atom ('**' UINT)?
//! atom  := UINT | IDENT | 'd' '(' IDENT ')' | 'e' '(' IDENT ')' | '(' expr ')'
//! ```
//!
//! `d(x)` and `e(x)` are only recognised when the identifier is directly
//! followed by an opening parenthesis, so `d` and `e` remain usable as
//! coordinate names.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Pow,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Covector,
    Vector,
}

#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, pos: usize },
    Basis { kind: BasisKind, coord: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>, usize),
    Div(Box<Expr>, Box<Expr>, usize),
    Wedge(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    i += 1;
                    Tok::Pow
                } else {
                    Tok::Star
                }
            }
            '0'..='9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..=i].parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.wedge()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.wedge()?), pos);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.wedge()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn wedge(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Caret) = self.peek() {
            let pos = self.pos();
            self.bump();
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.unary()?), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Pow) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| syntax(pos, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(syntax(pos, "exponent must be a nonnegative integer literal")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(name)) => {
                let is_call = matches!(self.peek(), Some(Tok::LParen));
                if is_call && (name == "d" || name == "e") {
                    self.bump();
                    let cpos = self.pos();
                    let coord = match self.bump() {
                        Some(Tok::Ident(c)) => c,
                        _ => return Err(syntax(cpos, "expected coordinate name")),
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    let kind = if name == "d" { BasisKind::Covector } else { BasisKind::Vector };
                    Ok(Expr::Basis { kind, coord, pos })
                } else {
                    Ok(Expr::Var { name, pos })
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(_) => Err(syntax(pos, "unexpected token")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Identifiers used as coordinates, in order of first appearance.
pub fn free_identifiers(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Int(_) => {}
        Expr::Var { name, .. } | Expr::Basis { coord: name, .. } => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        Expr::Neg(a) | Expr::Pow(a, _) => free_identifiers(a, out),
        Expr::Add(a, b)
        | Expr::Sub(a, b)
        | Expr::Mul(a, b, _)
        | Expr::Div(a, b, _)
        | Expr::Wedge(a, b, _) => {
            free_identifiers(a, out);
            free_identifiers(b, out);
        }
    }
}
