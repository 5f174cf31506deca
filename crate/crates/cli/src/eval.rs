//! Evaluation of parsed expressions in the phase-space algebra with exact
//! polynomial coefficients.

use fermiphase_core::scalar::GaussianRational;
use fermiphase_core::{PhaseSpace, Poly, SuperElement, Symbol};
use num_rational::BigRational;
use num_traits::Zero;

use crate::ast::{BinOp, Expr, ExprKind, Func, Generator, Pair, Param, Span};
use crate::parser::{parse, ParseError};

/// Powers above this are refused rather than multiplied out.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{message} (at bytes {}..{})", span.start, span.end)]
    Eval { span: Span, message: String },
}

pub struct Evaluator {
    ps: PhaseSpace,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { ps: PhaseSpace::new() }
    }

    pub fn phase_space(&self) -> &PhaseSpace {
        &self.ps
    }

    fn generator(&self, g: Generator) -> SuperElement<Poly> {
        let alg = self.ps.algebra();
        let (a, b) = (self.ps.alpha(), self.ps.beta());
        let id = match g {
            Generator::A => alg.annihilation(),
            Generator::Ad => alg.creation(),
            Generator::Alpha => a.var,
            Generator::Alphas => a.conj,
            Generator::Beta => b.var,
            Generator::Betas => b.conj,
        };
        SuperElement::generator(alg, id)
    }

    fn param(p: Param) -> Poly {
        let sym = match p {
            Param::Lambda => Symbol::complex_pair("lambda").0,
            Param::Lambdas => Symbol::complex_pair("lambda").1,
            other => Symbol::real(other.name()),
        };
        Poly::symbol(sym)
    }

    pub fn eval(&self, e: &Expr) -> Result<SuperElement<Poly>, EvalError> {
        Ok(match &e.kind {
            ExprKind::Number(lit) => {
                let zero = BigRational::zero();
                let c = if lit.imaginary {
                    GaussianRational::new(zero, lit.value.clone())
                } else {
                    GaussianRational::new(lit.value.clone(), zero)
                };
                self.ps.scalar(Poly::constant(c))
            }
            ExprKind::Param(p) => self.ps.scalar(Self::param(*p)),
            ExprKind::Generator(g) => self.generator(*g),
            ExprKind::Neg(x) => -self.eval(x)?,
            ExprKind::Binary(op, l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                match op {
                    BinOp::Add => &l + &r,
                    BinOp::Sub => &l - &r,
                    BinOp::Mul => &l * &r,
                }
            }
            ExprKind::Pow(base, n) => {
                if *n > MAX_EXPONENT {
                    return Err(EvalError::Eval {
                        span: e.span,
                        message: format!("exponent {n} exceeds {MAX_EXPONENT}"),
                    });
                }
                self.eval(base)?.pow(*n)
            }
            ExprKind::Call(func, arg) => {
                let x = self.eval(arg)?;
                match func {
                    Func::Dag => x.adjoint(),
                    Func::Tr => x.trace(),
                    Func::Int(p) => x.integrate(match p {
                        Pair::Alpha => self.ps.alpha(),
                        Pair::Beta => self.ps.beta(),
                    }),
                    Func::Body => self.ps.scalar(x.body()),
                    Func::Soul => x.soul(),
                }
            }
        })
    }
}

/// Parses, evaluates and prints the canonical form.
pub fn eval_str(src: &str) -> Result<String, EvalError> {
    let ast = parse(src)?;
    Ok(Evaluator::new().eval(&ast)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        assert_eq!(eval_str("a*ad").unwrap(), "1 - ad*a");
        assert_eq!(eval_str("tr(ad*a)").unwrap(), "1");
        assert_eq!(eval_str("dag(alpha*a)").unwrap(), "-alphas*ad");
        assert_eq!(eval_str("int[alpha](alpha*alphas)").unwrap(), "1");
    }

    #[test]
    fn parameters_and_literals() {
        assert_eq!(eval_str("nbar*ad*a + (1 - nbar)*a*ad").unwrap(), eval_str("1 - ad*a + 2*nbar*ad*a - nbar").unwrap());
        assert_eq!(eval_str("i*i").unwrap(), "-1");
        assert_eq!(eval_str("dag(lambda*a)").unwrap(), "lambdas*ad");
        assert_eq!(eval_str("body(1/2 + alpha*alphas)").unwrap(), "1/2");
        assert_eq!(eval_str("soul(1/2 + alpha*alphas)").unwrap(), "alpha*alphas");
        assert_eq!(eval_str("0.5 - 1/2").unwrap(), "0");
    }

    #[test]
    fn algebra_relations() {
        assert_eq!(eval_str("a*ad + ad*a").unwrap(), "1");
        assert_eq!(eval_str("a^2").unwrap(), "0");
        assert_eq!(eval_str("alpha*alpha").unwrap(), "0");
        assert_eq!(eval_str("alphas*alpha + alpha*alphas").unwrap(), "0");
        assert_eq!(eval_str("(ad*a)^7").unwrap(), "ad*a");
    }

    #[test]
    fn errors() {
        assert!(matches!(eval_str("a**ad"), Err(EvalError::Parse(_))));
        let e = eval_str("1 + a^5000").unwrap_err();
        assert_eq!(e, EvalError::Eval { span: Span::new(4, 10), message: "exponent 5000 exceeds 4096".into() });
    }
}
