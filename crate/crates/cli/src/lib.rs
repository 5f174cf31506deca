//! Expression language and command-line front end for `fermiphase-core`.

pub mod ast;
pub mod commands;
pub mod eval;
pub mod format;
pub mod parser;

pub use eval::{eval_str, EvalError, Evaluator};
pub use parser::{parse, ParseError};
