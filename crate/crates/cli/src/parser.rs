//! Lexer and recursive-descent parser.
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" integer)*
//! atom    := number | ident | call | "(" sum ")"
//! call    := ("dag" | "tr" | "body" | "soul" | "int" "[" pair "]") "(" sum ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ast::{BinOp, Expr, ExprKind, Func, Generator, Literal, Pair, Param, Span};

pub const MAX_INPUT: usize = 64 * 1024;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("invalid number `{text}` at offset {offset}: {reason}")]
    InvalidNumber { offset: usize, text: String, reason: &'static str },
    #[error("input is {len} bytes, limit is {MAX_INPUT}")]
    TooLong { len: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::InvalidNumber { offset, .. } => *offset,
            ParseError::TooLong { .. } => MAX_INPUT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(Literal),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Dagger,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(l) => write!(f, "number `{l}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Dagger => f.write_str("`†`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == 'α' || c == 'β'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn digits_value(s: &str) -> BigInt {
    s.parse().expect("ascii digits")
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '†' => Some(Tok::Dagger),
            _ => None,
        };
        if let Some(tok) = single {
            it.next();
            out.push((tok, Span::new(start, start + c.len_utf8())));
            continue;
        }
        if c.is_ascii_digit() {
            let take_digits = |it: &mut std::iter::Peekable<std::str::CharIndices>| {
                let mut end = None;
                while let Some(&(i, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = Some(i + 1);
                    it.next();
                }
                end
            };
            let mut end = take_digits(&mut it).expect("at least one digit");
            let int_part = &src[start..end];
            let mut value = BigRational::from_integer(digits_value(int_part));
            match it.peek() {
                Some(&(dot, '.')) => {
                    it.next();
                    let Some(e) = take_digits(&mut it) else {
                        return Err(ParseError::InvalidNumber {
                            offset: start,
                            text: src[start..dot + 1].to_string(),
                            reason: "missing digits after the decimal point",
                        });
                    };
                    let frac = &src[dot + 1..e];
                    let scale = num_traits::pow(BigInt::from(10), frac.len());
                    value += BigRational::new(digits_value(frac), scale);
                    end = e;
                }
                Some(&(slash, '/')) => {
                    it.next();
                    let Some(e) = take_digits(&mut it) else {
                        return Err(ParseError::InvalidNumber {
                            offset: start,
                            text: src[start..slash + 1].to_string(),
                            reason: "missing denominator",
                        });
                    };
                    let den = digits_value(&src[slash + 1..e]);
                    if den.is_zero() {
                        return Err(ParseError::InvalidNumber {
                            offset: start,
                            text: src[start..e].to_string(),
                            reason: "zero denominator",
                        });
                    }
                    value /= BigRational::from_integer(den);
                    end = e;
                }
                _ => {}
            }
            let mut imaginary = false;
            if let Some(&(i, 'i')) = it.peek() {
                let next_is_ident = src[i + 1..].chars().next().is_some_and(is_ident_continue);
                if !next_is_ident {
                    it.next();
                    imaginary = true;
                    end = i + 1;
                }
            }
            out.push((Tok::Number(Literal { value, imaginary }), Span::new(start, end)));
            continue;
        }
        if is_ident_start(c) {
            it.next();
            let mut end = start + c.len_utf8();
            if c.is_ascii() {
                while let Some(&(i, d)) = it.peek() {
                    if !is_ident_continue(d) {
                        break;
                    }
                    end = i + d.len_utf8();
                    it.next();
                }
            }
            out.push((Tok::Ident(src[start..end].to_string()), Span::new(start, end)));
            continue;
        }
        return Err(ParseError::Syntax {
            offset: start,
            expected: vec!["an expression"],
            found: format!("`{c}`"),
        });
    }
    out.push((Tok::End, Span::new(src.len(), src.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["a number", "an identifier", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax { offset: self.span().start, expected: expected.to_vec(), found: self.peek().to_string() }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[name]))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(BinOp::Mul, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().1;
            let inner = self.unary()?;
            let span = start.join(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let save = self.pos;
            let (tok, span) = self.bump();
            let n = match tok {
                Tok::Number(Literal { value, imaginary: false }) if value.is_integer() => {
                    u32::try_from(value.to_integer()).map_err(|_| ParseError::InvalidNumber {
                        offset: span.start,
                        text: value.to_string(),
                        reason: "exponent out of range",
                    })?
                }
                _ => {
                    self.pos = save;
                    return Err(self.error(&["a nonnegative integer exponent"]));
                }
            };
            let s = base.span.join(span);
            base = Expr::new(ExprKind::Pow(Box::new(base), n), s);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Number(lit) => {
                self.bump();
                Ok(Expr::new(ExprKind::Number(lit), span))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr { kind: inner.kind, span: span.join(end) })
            }
            Tok::Ident(name) => {
                self.bump();
                self.identifier(&name, span)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn call(&mut self, func: Func, start: Span) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let arg = self.sum()?;
        let end = self.expect(Tok::RParen, "`)`")?;
        Ok(Expr::new(ExprKind::Call(func, Box::new(arg)), start.join(end)))
    }

    fn pair(&mut self) -> Result<Pair, ParseError> {
        let save = self.pos;
        let (tok, span) = self.bump();
        match tok {
            Tok::Ident(s) if s == "alpha" || s == "α" => Ok(Pair::Alpha),
            Tok::Ident(s) if s == "beta" || s == "β" => Ok(Pair::Beta),
            Tok::Ident(s) => Err(ParseError::UnknownIdentifier { offset: span.start, name: s }),
            _ => {
                self.pos = save;
                Err(self.error(&["`alpha`", "`beta`"]))
            }
        }
    }

    fn identifier(&mut self, name: &str, span: Span) -> Result<Expr, ParseError> {
        let func = match name {
            "dag" => Some(Func::Dag),
            "tr" => Some(Func::Tr),
            "body" => Some(Func::Body),
            "soul" => Some(Func::Soul),
            "int" => {
                self.expect(Tok::LBracket, "`[`")?;
                let p = self.pair()?;
                self.expect(Tok::RBracket, "`]`")?;
                Some(Func::Int(p))
            }
            _ => None,
        };
        if let Some(func) = func {
            return self.call(func, span);
        }
        let generator = match name {
            "a" => Some(Generator::A),
            "ad" => Some(Generator::Ad),
            "alpha" | "α" => Some(Generator::Alpha),
            "alphas" => Some(Generator::Alphas),
            "beta" | "β" => Some(Generator::Beta),
            "betas" => Some(Generator::Betas),
            _ => None,
        };
        if let Some(mut g) = generator {
            let mut span = span;
            if *self.peek() == Tok::Dagger {
                span = span.join(self.bump().1);
                g = g.adjoint();
            }
            return Ok(Expr::new(ExprKind::Generator(g), span));
        }
        let kind = match name {
            "i" => ExprKind::Number(Literal { value: BigRational::one(), imaginary: true }),
            "nbar" => ExprKind::Param(Param::Nbar),
            "lambda" => ExprKind::Param(Param::Lambda),
            "lambdas" => ExprKind::Param(Param::Lambdas),
            "nu" => ExprKind::Param(Param::Nu),
            "eps" => ExprKind::Param(Param::Eps),
            "T" => ExprKind::Param(Param::T),
            "r" => ExprKind::Param(Param::R),
            _ => return Err(ParseError::UnknownIdentifier { offset: span.start, name: name.to_string() }),
        };
        Ok(Expr::new(kind, span))
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    if src.len() > MAX_INPUT {
        return Err(ParseError::TooLong { len: src.len() });
    }
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(a: i64, b: i64) -> Literal {
        Literal { value: BigRational::new(a.into(), b.into()), imaginary: false }
    }

    #[test]
    fn literals() {
        let ExprKind::Number(l) = parse("0.25").unwrap().kind else { panic!() };
        assert_eq!(l, num(1, 4));
        let ExprKind::Number(l) = parse("1/2").unwrap().kind else { panic!() };
        assert_eq!(l, num(1, 2));
        let ExprKind::Number(l) = parse("2i").unwrap().kind else { panic!() };
        assert_eq!(l, Literal { value: BigRational::from_integer(2.into()), imaginary: true });
        assert_eq!(parse("i").unwrap(), parse("1i").unwrap());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-a^2").unwrap(), parse("-(a^2)").unwrap());
        assert_eq!(parse("-a*ad").unwrap(), parse("(-a)*ad").unwrap());
        assert_eq!(parse("a + ad*a - 1").unwrap(), parse("(a + (ad*a)) - 1").unwrap());
        assert_eq!(parse("a^2^3").unwrap(), parse("(a^2)^3").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("a**ad").unwrap_err();
        assert_eq!(e.offset(), 2);
        assert!(matches!(e, ParseError::Syntax { .. }));
        assert_eq!(parse("a + foo").unwrap_err(), ParseError::UnknownIdentifier { offset: 4, name: "foo".into() });
        assert_eq!(parse("(a").unwrap_err().offset(), 2);
        assert_eq!(parse("a^x").unwrap_err().offset(), 2);
        assert_eq!(parse("1/0").unwrap_err().offset(), 0);
        assert_eq!(parse("int[gamma](a)").unwrap_err().offset(), 4);
        assert_eq!(parse("a a").unwrap_err().offset(), 2);
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert!(matches!(parse(&"a+".repeat(40_000)), Err(ParseError::TooLong { .. })));
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("a†").unwrap(), parse("ad").unwrap());
        assert_eq!(parse("α*α†").unwrap(), parse("alpha*alphas").unwrap());
        assert_eq!(parse("int[β](β*β†)").unwrap(), parse("int[beta](beta*betas)").unwrap());
        assert_eq!(parse("a † ").unwrap().to_string(), "ad");
    }

    #[test]
    fn berezin_call() {
        let e = parse("int[alpha](alpha*alphas)").unwrap();
        assert!(matches!(e.kind, ExprKind::Call(Func::Int(Pair::Alpha), _)));
        assert_eq!(e.span, Span::new(0, 24));
    }
}
