//! Exact algebra of Grassmann variables and a fermionic mode, with the
//! phase-space distributions and uncertainty measures built on it.

pub mod error;
pub mod info;
pub mod kernel;
pub mod phase_space;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{Algebra, GeneratorId, GrassmannPair, Parity, SuperElement};
pub use phase_space::{DensityOperator, DistributionKind, PhaseSpace, PhaseSpaceDistribution};
pub use scalar::{Coefficient, Poly, Symbol};
