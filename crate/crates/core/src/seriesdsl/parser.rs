//! Recursive-descent parser for the expression language.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::expr::{BinOp, Constant, Expr, SeqFn, UnaryOp};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        if let Some(m) = &self.message {
            return write!(f, "{m}");
        }
        write!(f, "expected ")?;
        if self.expected.len() > 1 {
            write!(f, "one of ")?;
        }
        write!(f, "{}; found {}", self.expected.join(", "), self.found)
    }
}

impl std::error::Error for ParseError {}

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
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '×' | '·' => Some(Tok::Star),
            '/' | '÷' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars);
            out.push(Spanned { tok, line: l0, column: c0 });
        } else if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            let n: BigInt = s.parse().expect("digit string");
            out.push(Spanned { tok: Tok::Int(n), line: l0, column: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l0, column: c0 });
        } else {
            return Err(ParseError {
                line: l0,
                column: c0,
                found: format!("character `{c}`"),
                expected: vec![],
                message: Some(format!("unexpected character `{c}`")),
            });
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

const PRIMARY_START: [&str; 4] = ["integer", "identifier", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            found: s.tok.describe(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
            message: None,
        }
    }

    fn error_msg(&self, at: usize, msg: String) -> ParseError {
        let s = &self.toks[at];
        ParseError { line: s.line, column: s.column, found: s.tok.describe(), expected: vec![], message: Some(msg) }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error_msg(self.pos, "expression nested too deeply".into()));
        }
        Ok(())
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.multiplicative()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = match (op, lhs, rhs) {
                (BinOp::Div, Expr::Int(a), Expr::Int(b)) if !b.is_zero() => {
                    let r = BigRational::new(a, b);
                    if r.denom().is_one() {
                        Expr::Int(r.to_integer())
                    } else {
                        Expr::Rat(r)
                    }
                }
                (op, l, r) => Expr::binary(op, l, r),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.advance();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(match inner {
                Expr::Int(n) => Expr::Int(-n),
                Expr::Rat(r) => Expr::Rat(-r),
                e => Expr::unary(UnaryOp::Neg, e),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.advance();
            self.enter()?;
            let exp = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.additive()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.advance();
                    out.push(self.additive()?);
                }
                Tok::RParen => {
                    self.advance();
                    return Ok(out);
                }
                _ => return Err(self.error(&["`,`", "`)`"])),
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos;
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.advance();
                let e = self.additive()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.advance();
                if *self.peek() != Tok::LParen {
                    return Ok(match Constant::from_name(&name) {
                        Some(c) => Expr::Const(c),
                        None => Expr::Var(name),
                    });
                }
                let args = self.args()?;
                let arity = |n: usize| -> Result<(), ParseError> {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(self.error_msg(at, format!("`{name}` takes {n} argument(s), got {}", args.len())))
                    }
                };
                if let Some(f) = SeqFn::from_name(&name) {
                    arity(f.arity())?;
                    return Ok(Expr::Seq(f, args));
                }
                if let Some(op) = UnaryOp::function_from_name(&name) {
                    arity(1)?;
                    return Ok(Expr::unary(op, args.into_iter().next().expect("one argument")));
                }
                match name.as_str() {
                    "quad" => {
                        arity(3)?;
                        let mut it = args.into_iter();
                        let (b, lo, hi) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
                        Ok(Expr::Quad(Box::new(b), Box::new(lo), Box::new(hi)))
                    }
                    "Cl2" => {
                        arity(1)?;
                        Ok(Expr::Clausen(Box::new(args.into_iter().next().expect("one argument"))))
                    }
                    _ => Err(self.error_msg(at, format!("unknown function `{name}`"))),
                }
            }
            _ => Err(self.error(&PRIMARY_START)),
        }
    }
}

/// Parses one expression; the whole input must be consumed.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.additive()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}
