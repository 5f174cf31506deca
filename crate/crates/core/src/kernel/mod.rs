//! Exact superalgebra over Grassmann pairs and one fermionic mode.
//!
//! Elements are kept in normal form: Grassmann variables in declaration
//! order, then `a†`, then `a`. Equality is map equality on that form.

mod algebra;
mod berezin;
mod element;
mod fock;
mod monomial;
mod superfn;

pub use algebra::{Algebra, AlgebraBuilder, Generator, GeneratorId, GeneratorKind, GrassmannPair};
pub use element::{Parity, SuperElement};
pub use fock::FockMatrix;
pub use monomial::{normal_order, Monomial};
pub use superfn::{PolynomialFn, SuperFunction};
