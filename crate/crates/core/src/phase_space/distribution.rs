use std::fmt;

use super::{DensityOperator, KetSign, PhaseSpace};
use crate::error::{Error, Result};
use crate::kernel::{GrassmannPair, Parity, SuperElement};
use crate::scalar::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Characteristic,
    Wigner,
    Husimi,
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistributionKind::Characteristic => "chi",
            DistributionKind::Wigner => "W",
            DistributionKind::Husimi => "Q",
        })
    }
}

/// An even function of one Grassmann pair, `z = z_B + c·αα*`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpaceDistribution<C: Coefficient> {
    kind: DistributionKind,
    element: SuperElement<C>,
    nbar: C,
    pair: GrassmannPair,
}

impl<C: Coefficient> PhaseSpaceDistribution<C> {
    pub fn new(kind: DistributionKind, element: SuperElement<C>, nbar: C, pair: GrassmannPair) -> Result<Self> {
        if element.parity() != Parity::Even {
            return Err(Error::Parity(format!("{kind} distribution must be even")));
        }
        let foreign = element
            .terms()
            .flat_map(|(m, _)| m.generators().iter().copied())
            .any(|g| g != pair.var && g != pair.conj);
        if foreign {
            return Err(Error::UnsupportedOperand(format!("{kind} distribution depends on other generators")));
        }
        Ok(PhaseSpaceDistribution { kind, element, nbar, pair })
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn element(&self) -> &SuperElement<C> {
        &self.element
    }

    pub fn nbar(&self) -> &C {
        &self.nbar
    }

    pub fn pair(&self) -> GrassmannPair {
        self.pair
    }

    pub fn body(&self) -> C {
        self.element.body()
    }

    /// Coefficient of `αα*`.
    pub fn soul_coefficient(&self) -> C {
        self.element.integrate(self.pair).body()
    }

    /// `∫Dα z`.
    pub fn normalization(&self) -> C {
        self.soul_coefficient()
    }

    pub fn is_real(&self) -> bool {
        self.element.adjoint() == self.element
    }
}

impl PhaseSpace {
    /// `1 + (½ − ⟨n⟩)αα*` in closed form.
    pub fn characteristic_closed_form<C: Coefficient>(&self, nbar: &C, pair: GrassmannPair) -> SuperElement<C> {
        &self.one() + &self.pair_product(pair, C::from_ratio(1, 2) - nbar.clone())
    }

    /// `½ − ⟨n⟩ + αα*`.
    pub fn wigner_closed_form<C: Coefficient>(&self, nbar: &C) -> SuperElement<C> {
        &self.scalar(C::from_ratio(1, 2) - nbar.clone()) + &self.pair_product(self.alpha(), C::one())
    }

    /// `1 − ⟨n⟩ + αα*`.
    pub fn husimi_closed_form<C: Coefficient>(&self, nbar: &C) -> SuperElement<C> {
        &self.scalar(C::one() - nbar.clone()) + &self.pair_product(self.alpha(), C::one())
    }

    /// `χ(θ) = Tr{ρ D(θ)}` over the given pair.
    pub fn characteristic<C: Coefficient>(
        &self,
        rho: &DensityOperator<C>,
        pair: GrassmannPair,
    ) -> Result<PhaseSpaceDistribution<C>> {
        rho.require_physical()?;
        let chi = (rho.element() * &self.displacement(pair)).trace();
        PhaseSpaceDistribution::new(DistributionKind::Characteristic, chi, rho.nbar().clone(), pair)
    }

    /// `exp(αβ* − βα*)` through the superfunction Taylor series.
    pub fn fourier_kernel<C: Coefficient>(&self) -> Result<SuperElement<C>> {
        let (a, b) = (self.alpha(), self.beta());
        let alg = self.algebra();
        let exponent = &SuperElement::word(alg, C::one(), &[a.var, b.conj])
            - &SuperElement::word(alg, C::one(), &[b.var, a.conj]);
        exponent.apply_superfunction(&|_: usize, at: &C| at.exp())
    }

    /// `1 + αβ* − βα* + αα*ββ*`, the expanded kernel.
    pub fn fourier_kernel_expanded<C: Coefficient>(&self) -> SuperElement<C> {
        let (a, b) = (self.alpha(), self.beta());
        let alg = self.algebra();
        let w = |c: C, g: &[crate::kernel::GeneratorId]| SuperElement::word(alg, c, g);
        let mut k = self.one();
        k = &k + &w(C::one(), &[a.var, b.conj]);
        k = &k - &w(C::one(), &[b.var, a.conj]);
        &k + &w(C::one(), &[a.var, a.conj, b.var, b.conj])
    }

    /// `W(α) = ∫Dβ e^{αβ* − βα*} χ(β)`.
    pub fn wigner<C: Coefficient>(&self, rho: &DensityOperator<C>) -> Result<PhaseSpaceDistribution<C>> {
        let chi = self.characteristic(rho, self.beta())?;
        let kernel = self.fourier_kernel()?;
        let w = (&kernel * chi.element()).integrate(self.beta());
        PhaseSpaceDistribution::new(DistributionKind::Wigner, w, rho.nbar().clone(), self.alpha())
    }

    /// `Q(α) = Tr{ρ |α⟩⟨α|}`.
    pub fn husimi<C: Coefficient>(&self, rho: &DensityOperator<C>) -> Result<PhaseSpaceDistribution<C>> {
        rho.require_physical()?;
        let q = (rho.element() * &self.coherent_projector(self.alpha())).trace();
        PhaseSpaceDistribution::new(DistributionKind::Husimi, q, rho.nbar().clone(), self.alpha())
    }

    /// `Q(α) = ⟨α|ρ|−α⟩` from the coherent-state amplitudes.
    pub fn husimi_matrix_element<C: Coefficient>(
        &self,
        rho: &DensityOperator<C>,
    ) -> Result<PhaseSpaceDistribution<C>> {
        rho.require_physical()?;
        let q = self.coherent_matrix_element(rho.element(), self.alpha(), KetSign::Minus)?;
        PhaseSpaceDistribution::new(DistributionKind::Husimi, q, rho.nbar().clone(), self.alpha())
    }

    /// A one-pair Gaussian `body + αα*`, as produced by the closed forms.
    pub fn gaussian<C: Coefficient>(&self, kind: DistributionKind, nbar: C, body: C) -> PhaseSpaceDistribution<C> {
        let element = &self.scalar(body) + &self.pair_product(self.alpha(), C::one());
        PhaseSpaceDistribution { kind, element, nbar, pair: self.alpha() }
    }

    /// Closed-form Wigner distribution for a physical state.
    pub fn wigner_of<C: Coefficient>(&self, nbar: C) -> PhaseSpaceDistribution<C> {
        let body = C::from_ratio(1, 2) - nbar.clone();
        self.gaussian(DistributionKind::Wigner, nbar, body)
    }

    /// Closed-form Husimi distribution for a physical state.
    pub fn husimi_of<C: Coefficient>(&self, nbar: C) -> PhaseSpaceDistribution<C> {
        let body = C::one() - nbar.clone();
        self.gaussian(DistributionKind::Husimi, nbar, body)
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::scalar::{Poly, Symbol};

    fn nbar() -> Poly {
        Poly::symbol(Symbol::real("nbar"))
    }

    #[test]
    fn characteristic_function() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(nbar()).unwrap();
        let chi = ps.characteristic(&rho, ps.alpha()).unwrap();
        assert_eq!(chi.element(), &ps.characteristic_closed_form(&nbar(), ps.alpha()));
        assert_eq!(chi.element().to_string(), "1 + (1/2 - nbar)*alpha*alphas");

        let vac = ps.thermal_state(Poly::zero()).unwrap();
        assert_eq!(ps.characteristic(&vac, ps.alpha()).unwrap().element().to_string(), "1 + 1/2*alpha*alphas");
        let exc = ps.thermal_state(Poly::one()).unwrap();
        assert_eq!(ps.characteristic(&exc, ps.alpha()).unwrap().element().to_string(), "1 - 1/2*alpha*alphas");
    }

    #[test]
    fn fourier_kernel_matches_expansion() {
        let ps = PhaseSpace::new();
        assert_eq!(ps.fourier_kernel::<Poly>().unwrap(), ps.fourier_kernel_expanded());
    }

    #[test]
    fn wigner_pipeline_equals_closed_form() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(nbar()).unwrap();
        let w = ps.wigner(&rho).unwrap();
        assert_eq!(w.element(), &ps.wigner_closed_form(&nbar()));
        assert_eq!(w.element().to_string(), "1/2 - nbar + alpha*alphas");
        assert_eq!(w.normalization(), Poly::one());
        assert!(w.is_real());
        let w0 = ps.wigner(&ps.thermal_state(Poly::zero()).unwrap()).unwrap();
        assert_eq!(w0.element().to_string(), "1/2 + alpha*alphas");
    }

    #[test]
    fn husimi_pipelines_equal_closed_form() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(nbar()).unwrap();
        let q1 = ps.husimi(&rho).unwrap();
        let q2 = ps.husimi_matrix_element(&rho).unwrap();
        let closed = ps.husimi_closed_form(&nbar());
        assert_eq!(q1.element(), &closed);
        assert_eq!(q2.element(), &closed);
        assert!(q1.is_real());
        let exc = ps.husimi(&ps.thermal_state(Poly::one()).unwrap()).unwrap();
        assert_eq!(exc.element().to_string(), "alpha*alphas");
        let w = ps.wigner(&rho).unwrap();
        assert_eq!(q1.body() - w.body(), Poly::from_ratio(1, 2));
    }

    #[test]
    fn distributions_refuse_unphysical_states() {
        let ps = PhaseSpace::new();
        let (l, _) = Symbol::complex_pair("lambda");
        let rho = ps.state(nbar(), Poly::symbol(l)).unwrap();
        assert!(matches!(ps.characteristic(&rho, ps.alpha()), Err(Error::Parity(_))));
        assert!(matches!(ps.wigner(&rho), Err(Error::Parity(_))));
        assert!(matches!(ps.husimi(&rho), Err(Error::Parity(_))));
    }

    #[test]
    fn float_pipeline() {
        let ps = PhaseSpace::new();
        let rho = ps.thermal_state(Complex64::new(0.2, 0.0)).unwrap();
        let w = ps.wigner(&rho).unwrap();
        assert!((w.body() - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        assert!((w.normalization() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let q = ps.husimi(&rho).unwrap();
        assert!((q.body() - Complex64::new(0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn closed_form_via_scaled_exponential() {
        // (½−⟨n⟩)·exp(αα*/(½−⟨n⟩)) at a numeric ⟨n⟩
        let ps = PhaseSpace::new();
        let c = Poly::from_ratio(1, 2) - Poly::from_ratio(1, 8);
        let aa: SuperElement<Poly> = ps.pair_product(ps.alpha(), Poly::one());
        let cc = c.clone();
        let f = move |j: usize, _: &Poly| match j {
            0 => Some(cc.clone()),
            _ => cc.recip().map(|r| {
                let mut p = cc.clone();
                for _ in 0..j {
                    p = p * r.clone();
                }
                p
            }),
        };
        let got = aa.apply_superfunction(&f).unwrap();
        assert_eq!(got, ps.wigner_closed_form(&Poly::from_ratio(1, 8)));
    }
}
