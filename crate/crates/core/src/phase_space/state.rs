use super::PhaseSpace;
use crate::error::{Error, Result};
use crate::kernel::SuperElement;
use crate::scalar::Coefficient;

/// Whether `|λ|² ≤ ⟨n⟩(1−⟨n⟩)` was checked numerically or taken on trust
/// because a parameter is symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Verified,
    Assumed,
}

/// `ρ = (1−⟨n⟩) a a† + λ a + λ* a† + ⟨n⟩ a†a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<C: Coefficient> {
    element: SuperElement<C>,
    nbar: C,
    lambda: C,
    positivity: Positivity,
}

impl<C: Coefficient> DensityOperator<C> {
    pub fn element(&self) -> &SuperElement<C> {
        &self.element
    }

    pub fn nbar(&self) -> &C {
        &self.nbar
    }

    pub fn lambda(&self) -> &C {
        &self.lambda
    }

    pub fn positivity(&self) -> Positivity {
        self.positivity
    }

    /// Parity superselection: physical iff `λ = 0`.
    pub fn is_physical(&self) -> bool {
        self.lambda.is_zero()
    }

    pub(crate) fn require_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::Parity("state mixes even and odd particle numbers (λ ≠ 0)".into()))
        }
    }

    /// `Tr ρ² = 1 − 2⟨n⟩(1−⟨n⟩)` for physical states.
    pub fn purity(&self) -> Result<C> {
        if !self.is_physical() {
            return Err(Error::UnsupportedOperand("purity is defined here for λ = 0 only".into()));
        }
        Ok((&self.element * &self.element).trace().body())
    }
}

impl PhaseSpace {
    /// Builds the general single-mode density operator.
    ///
    /// Numeric parameters are checked against `0 ≤ ⟨n⟩ ≤ 1` and
    /// `|λ|² ≤ ⟨n⟩(1−⟨n⟩)`; symbolic ones are recorded as assumed.
    pub fn state<C: Coefficient>(&self, nbar: C, lambda: C) -> Result<DensityOperator<C>> {
        let mut positivity = Positivity::Assumed;
        if let Some(n) = nbar.to_real() {
            if !(0.0..=1.0).contains(&n) {
                return Err(Error::InvalidState(format!("⟨n⟩ = {n} outside [0, 1]")));
            }
            let slack = nbar.clone() * (C::one() - nbar.clone()) - lambda.clone() * lambda.conj();
            if let Some(s) = slack.to_real() {
                if s < -1e-15 {
                    let l2 = (lambda.clone() * lambda.conj()).to_real().unwrap_or(f64::NAN);
                    return Err(Error::InvalidState(format!(
                        "|λ|² = {l2} exceeds ⟨n⟩(1−⟨n⟩) = {}",
                        n * (1.0 - n)
                    )));
                }
                positivity = Positivity::Verified;
            }
        }
        let element = &(&(&self.vacuum_projector::<C>().scale(&(C::one() - nbar.clone()))
            + &self.a::<C>().scale(&lambda))
            + &self.ad::<C>().scale(&lambda.conj()))
            + &self.number::<C>().scale(&nbar);
        Ok(DensityOperator { element, nbar, lambda, positivity })
    }

    /// Physical (`λ = 0`) state.
    pub fn thermal_state<C: Coefficient>(&self, nbar: C) -> Result<DensityOperator<C>> {
        self.state(nbar, C::zero())
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::kernel::FockMatrix;
    use crate::scalar::{Poly, Symbol};

    fn nbar() -> Poly {
        Poly::symbol(Symbol::real("nbar"))
    }

    #[test]
    fn vacuum_is_the_vacuum_projector() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(Poly::zero()).unwrap();
        assert_eq!(rho.element(), &ps.vacuum_projector());
    }

    #[test]
    fn quarter_filling_matrix() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(Poly::from_ratio(1, 4)).unwrap();
        assert_eq!(
            rho.element().to_fock_matrix().unwrap(),
            FockMatrix::diag(Poly::from_ratio(3, 4), Poly::from_ratio(1, 4))
        );
        assert_eq!(rho.positivity(), Positivity::Verified);
    }

    #[test]
    fn positivity_violation() {
        let ps = PhaseSpace::new();
        let r = ps.state(Complex64::new(0.25, 0.0), Complex64::new(0.6, 0.0));
        assert!(matches!(r, Err(Error::InvalidState(msg)) if msg.contains("0.36")));
        assert!(ps.thermal_state(Poly::from_ratio(5, 4)).is_err());
        // boundary |λ|² = ⟨n⟩(1−⟨n⟩) is allowed
        assert!(ps.state(Poly::from_ratio(1, 2), Poly::from_ratio(1, 2)).is_ok());
    }

    #[test]
    fn symbolic_state_invariants() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(nbar()).unwrap();
        assert_eq!(rho.positivity(), Positivity::Assumed);
        assert_eq!(rho.element().trace(), ps.one());
        assert_eq!(&rho.element().adjoint(), rho.element());
        assert_eq!(rho.element().parity(), crate::kernel::Parity::Even);

        let (l, _) = Symbol::complex_pair("lambda");
        let general = ps.state(nbar(), Poly::symbol(l)).unwrap();
        assert!(!general.is_physical());
        assert_eq!(&general.element().adjoint(), general.element());
        assert_eq!(general.element().trace(), ps.one());
        assert_eq!(general.element().parity(), crate::kernel::Parity::Mixed);
    }

    #[test]
    fn purity_values() {
        let ps = PhaseSpace::new();
        let n = nbar();
        let p = ps.thermal_state(n.clone()).unwrap().purity().unwrap();
        assert_eq!(p, Poly::one() - Poly::from_i64(2) * n.clone() * (Poly::one() - n.clone()));
        assert_eq!(ps.thermal_state(Poly::zero()).unwrap().purity().unwrap(), Poly::one());
        assert_eq!(ps.thermal_state(Poly::from_ratio(1, 2)).unwrap().purity().unwrap(), Poly::from_ratio(1, 2));
        let (l, _) = Symbol::complex_pair("lambda");
        assert!(ps.state(n, Poly::symbol(l)).unwrap().purity().is_err());
    }
}
