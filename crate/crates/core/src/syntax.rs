//! Tokenizer and polynomial-expression parser shared by
//! [`Polynomial::parse`](crate::polyalg::Polynomial::parse) and the session
//! language.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyalg::{PolyContext, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOLS: &[&str] = &[
    "->", "+", "-", "*", "/", "^", "(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "@",
];

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits parse")),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: start_line,
                column: start_col,
            });
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                i += sym.len();
                col += sym.len();
                out.push(Token {
                    tok: Tok::Sym(sym),
                    line: start_line,
                    column: start_col,
                });
            }
            None => return Err(Error::parse(line, col, format!("unexpected character '{c}'"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn peek_tok(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        Error::parse(t.line, t.column, message)
    }

    pub fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek_tok(), Tok::Sym(s) if *s == sym)
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_tok(), Tok::Ident(s) if s == kw)
    }

    pub fn eat_sym(&mut self, sym: &str) -> bool {
        if self.at_sym(sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, sym: &str) -> Result<()> {
        if self.eat_sym(sym) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected '{sym}', found {}", describe(self.peek_tok()))))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected '{kw}', found {}", describe(self.peek_tok()))))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Token)> {
        match self.peek_tok().clone() {
            Tok::Ident(s) => Ok((s, self.bump())),
            other => Err(self.error_here(format!("expected a name, found {}", describe(&other)))),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek_tok().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => Err(self.error_here(format!("expected an integer, found {}", describe(&other)))),
        }
    }

    pub fn expect_eof(&mut self) -> Result<()> {
        match self.peek_tok() {
            Tok::Eof => Ok(()),
            other => Err(self.error_here(format!("unexpected {}", describe(other)))),
        }
    }

    /// Polynomial expression in `ctx`.
    pub fn poly(&mut self, ctx: &Arc<PolyContext>) -> Result<Polynomial> {
        let mut acc = self.poly_term(ctx)?;
        loop {
            if self.eat_sym("+") {
                acc = &acc + &self.poly_term(ctx)?;
            } else if self.eat_sym("-") {
                acc = &acc - &self.poly_term(ctx)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self, ctx: &Arc<PolyContext>) -> Result<Polynomial> {
        let mut acc = self.poly_unary(ctx)?;
        loop {
            if self.eat_sym("*") {
                acc = &acc * &self.poly_unary(ctx)?;
            } else if self.at_sym("/") {
                let at = self.bump();
                let d = self.poly_unary(ctx)?;
                let c = match d.constant_value() {
                    Some(c) if !c.is_zero() => c,
                    _ => return Err(Error::parse(at.line, at.column, "division by a nonzero constant only")),
                };
                acc = acc.scale(&ctx.field().inv(&c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_unary(&mut self, ctx: &Arc<PolyContext>) -> Result<Polynomial> {
        if self.eat_sym("-") {
            return Ok(-&self.poly_unary(ctx)?);
        }
        let base = self.poly_atom(ctx)?;
        if self.eat_sym("^") {
            let e = self.expect_int()?;
            let e: u32 = e.try_into().map_err(|_| self.error_here("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn poly_atom(&mut self, ctx: &Arc<PolyContext>) -> Result<Polynomial> {
        match self.peek_tok().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Polynomial::constant(ctx, ctx.field().from_bigint(&n)))
            }
            Tok::Ident(name) => match ctx.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var(ctx, i))
                }
                None => Err(self.error_here(format!("unknown variable '{name}'"))),
            },
            Tok::Sym("(") => {
                self.bump();
                let p = self.poly(ctx)?;
                self.expect_sym(")")?;
                Ok(p)
            }
            other => Err(self.error_here(format!("expected a polynomial, found {}", describe(&other)))),
        }
    }

    /// Comma-separated polynomial list, empty when `close` comes first.
    pub fn poly_list(&mut self, ctx: &Arc<PolyContext>, close: &str) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        if self.at_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.poly(ctx)?);
            if !self.eat_sym(",") {
                return Ok(out);
            }
        }
    }
}

pub fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Sym(s) => format!("'{s}'"),
        Tok::Eof => "end of input".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_positions() {
        let toks = tokenize("ring A\n  = QQ[x").unwrap();
        let eq = toks.iter().find(|t| t.tok == Tok::Sym("=")).unwrap();
        assert_eq!((eq.line, eq.column), (2, 3));
        assert_eq!(toks.last().unwrap().tok, Tok::Eof);
    }

    #[test]
    fn arrow_is_one_token() {
        let toks = tokenize("x -> y - 1").unwrap();
        let syms: Vec<_> = toks.iter().filter_map(|t| match t.tok {
            Tok::Sym(s) => Some(s),
            _ => None,
        }).collect();
        assert_eq!(syms, vec!["->", "-"]);
    }

    #[test]
    fn comments_are_skipped() {
        let toks = tokenize("# hello\nx").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("x".into()));
        assert_eq!(toks[0].line, 2);
    }

    #[test]
    fn bad_character() {
        assert!(matches!(tokenize("x $ y"), Err(Error::Parse { line: 1, column: 3, .. })));
    }
}
