use crate::kernel::SuperElement;
use crate::phase_space::{DistributionKind, PhaseSpaceDistribution};
use crate::scalar::Coefficient;

/// Second moments `γ_{jj′} = (1/2i) ∫Dα z [α_j, α_j′]` over the index order
/// `(α, α*)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix<C> {
    pub entries: [[C; 2]; 2],
    pub kind: DistributionKind,
    pub nbar: C,
}

impl<C: Coefficient> CovarianceMatrix<C> {
    pub fn det(&self) -> C {
        let [[a, b], [c, d]] = &self.entries;
        a.clone() * d.clone() - b.clone() * c.clone()
    }
}

fn pair_generators<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> [SuperElement<C>; 2] {
    let alg = z.element().algebra();
    let p = z.pair();
    [SuperElement::generator(alg, p.var), SuperElement::generator(alg, p.conj)]
}

/// Covariance matrix of a one-pair distribution, by expanding the
/// commutators in the algebra and integrating.
pub fn covariance<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> CovarianceMatrix<C> {
    let gens = pair_generators(z);
    // 1/(2i) = −i/2
    let prefactor = C::imaginary_unit() * C::from_ratio(-1, 2);
    let entry = |j: usize, k: usize| {
        let comm = &(&gens[j] * &gens[k]) - &(&gens[k] * &gens[j]);
        (z.element() * &comm).integrate(z.pair()).body() * prefactor.clone()
    };
    CovarianceMatrix {
        entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        kind: z.kind(),
        nbar: z.nbar().clone(),
    }
}

/// `∫Dα z α_j`, which vanishes for every even distribution.
pub fn first_moments<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> [C; 2] {
    let gens = pair_generators(z);
    let m = |j: usize| (z.element() * &gens[j]).integrate(z.pair()).body();
    [m(0), m(1)]
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::phase_space::PhaseSpace;
    use crate::scalar::{Poly, Symbol};

    fn nbar() -> Poly {
        Poly::symbol(Symbol::real("nbar"))
    }

    #[test]
    fn sigma_y_pattern() {
        let ps = PhaseSpace::new();
        let w = ps.wigner(&ps.thermal_state(nbar()).unwrap()).unwrap();
        let g = covariance(&w);
        let zb = Poly::from_ratio(1, 2) - nbar();
        let i = Poly::imaginary_unit();
        assert_eq!(g.entries[0][0], Poly::zero());
        assert_eq!(g.entries[1][1], Poly::zero());
        assert_eq!(g.entries[0][1], -(i.clone() * zb.clone()));
        assert_eq!(g.entries[1][0], i * zb.clone());
        assert_eq!(g.det(), -(zb.clone() * zb));
    }

    #[test]
    fn reference_determinants() {
        let ps = PhaseSpace::new();
        let q0 = ps.husimi(&ps.thermal_state(Poly::zero()).unwrap()).unwrap();
        assert_eq!(covariance(&q0).det(), Poly::from_i64(-1));
        let w_half = ps.wigner(&ps.thermal_state(Poly::from_ratio(1, 2)).unwrap()).unwrap();
        assert_eq!(covariance(&w_half).det(), Poly::zero());
        let w0 = ps.wigner_of(Complex64::new(0.0, 0.0));
        assert!((covariance(&w0).det() + Complex64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn first_moments_vanish() {
        let ps = PhaseSpace::new();
        let q = ps.husimi(&ps.thermal_state(nbar()).unwrap()).unwrap();
        assert_eq!(first_moments(&q), [Poly::zero(), Poly::zero()]);
    }
}
