//! Expression tree and its canonical printer.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Byte range `[start, end)` in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    Alpha,
    Beta,
}

impl Pair {
    pub fn name(self) -> &'static str {
        match self {
            Pair::Alpha => "alpha",
            Pair::Beta => "beta",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Dag,
    Tr,
    Int(Pair),
    Body,
    Soul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    A,
    Ad,
    Alpha,
    Alphas,
    Beta,
    Betas,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::Ad => "ad",
            Generator::Alpha => "alpha",
            Generator::Alphas => "alphas",
            Generator::Beta => "beta",
            Generator::Betas => "betas",
        }
    }

    pub fn adjoint(self) -> Self {
        match self {
            Generator::A => Generator::Ad,
            Generator::Ad => Generator::A,
            Generator::Alpha => Generator::Alphas,
            Generator::Alphas => Generator::Alpha,
            Generator::Beta => Generator::Betas,
            Generator::Betas => Generator::Beta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Nbar,
    Lambda,
    Lambdas,
    Nu,
    Eps,
    T,
    R,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Nbar => "nbar",
            Param::Lambda => "lambda",
            Param::Lambdas => "lambdas",
            Param::Nu => "nu",
            Param::Eps => "eps",
            Param::T => "T",
            Param::R => "r",
        }
    }
}

/// A nonnegative rational, optionally times `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub value: BigRational,
    pub imaginary: bool,
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Number(Literal),
    Param(Param),
    Generator(Generator),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

/// Equality ignores spans, so a reprinted expression compares equal to
/// the original.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for ExprKind {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (self, other) {
            (Number(a), Number(b)) => a == b,
            (Param(a), Param(b)) => a == b,
            (Generator(a), Generator(b)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Binary(o, a, b), Binary(p, c, d)) => o == p && a == c && b == d,
            (Pow(a, n), Pow(b, m)) => n == m && a == b,
            (Call(f, a), Call(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprKind::Binary(BinOp::Mul, ..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            fmt::Display::fmt(self, f)?;
            return f.write_str(")");
        }
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigRational::one();
        if self.imaginary && self.value == one {
            return f.write_str("i");
        }
        if self.value.denom() == &BigInt::one() || self.value.is_zero() {
            write!(f, "{}", self.value.numer())?;
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())?;
        }
        if self.imaginary {
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Number(lit) => write!(f, "{lit}"),
            ExprKind::Param(p) => f.write_str(p.name()),
            ExprKind::Generator(g) => f.write_str(g.name()),
            ExprKind::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)
            }
            ExprKind::Binary(op, l, r) => {
                let (sym, level) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                };
                l.write_at(f, level)?;
                f.write_str(sym)?;
                r.write_at(f, level + 1)
            }
            ExprKind::Pow(base, n) => {
                base.write_at(f, 4)?;
                write!(f, "^{n}")
            }
            ExprKind::Call(func, arg) => {
                match func {
                    Func::Dag => f.write_str("dag")?,
                    Func::Tr => f.write_str("tr")?,
                    Func::Int(p) => write!(f, "int[{}]", p.name())?,
                    Func::Body => f.write_str("body")?,
                    Func::Soul => f.write_str("soul")?,
                }
                write!(f, "({arg})")
            }
        }
    }
}
