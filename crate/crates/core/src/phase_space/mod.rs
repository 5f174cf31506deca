//! Single-mode fermionic states and their phase-space distributions.
//!
//! [`PhaseSpace`] owns the algebra with two Grassmann pairs: `alpha` is the
//! phase-space variable and `beta` the Fourier dummy variable.

use std::sync::Arc;

use crate::kernel::{Algebra, GrassmannPair, SuperElement};
use crate::scalar::Coefficient;

mod coherent;
mod distribution;
mod state;
pub mod thermal;

pub use coherent::{CoherentKet, KetSign};
pub use distribution::{DistributionKind, PhaseSpaceDistribution};
pub use state::{DensityOperator, Positivity};
pub use thermal::{TemperatureBranch, ThermalParams};

#[derive(Clone, Debug)]
pub struct PhaseSpace {
    algebra: Arc<Algebra>,
    alpha: GrassmannPair,
    beta: GrassmannPair,
}

impl Default for PhaseSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl PhaseSpace {
    pub fn new() -> Self {
        let algebra = Algebra::phase_space();
        let alpha = algebra.pair("alpha").expect("alpha declared");
        let beta = algebra.pair("beta").expect("beta declared");
        PhaseSpace { algebra, alpha, beta }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn alpha(&self) -> GrassmannPair {
        self.alpha
    }

    pub fn beta(&self) -> GrassmannPair {
        self.beta
    }

    pub fn one<C: Coefficient>(&self) -> SuperElement<C> {
        SuperElement::one(&self.algebra)
    }

    pub fn scalar<C: Coefficient>(&self, c: C) -> SuperElement<C> {
        SuperElement::scalar(&self.algebra, c)
    }

    pub fn a<C: Coefficient>(&self) -> SuperElement<C> {
        SuperElement::generator(&self.algebra, self.algebra.annihilation())
    }

    pub fn ad<C: Coefficient>(&self) -> SuperElement<C> {
        SuperElement::generator(&self.algebra, self.algebra.creation())
    }

    /// `a†a`.
    pub fn number<C: Coefficient>(&self) -> SuperElement<C> {
        SuperElement::word(&self.algebra, C::one(), &[self.algebra.creation(), self.algebra.annihilation()])
    }

    /// `a a† = |0⟩⟨0|`.
    pub fn vacuum_projector<C: Coefficient>(&self) -> SuperElement<C> {
        SuperElement::word(&self.algebra, C::one(), &[self.algebra.annihilation(), self.algebra.creation()])
    }

    /// `c·θθ*` for a pair.
    pub fn pair_product<C: Coefficient>(&self, pair: GrassmannPair, c: C) -> SuperElement<C> {
        SuperElement::word(&self.algebra, c, &[pair.var, pair.conj])
    }
}
