//! The faithful 2×2 representation of the mode operators on `(|0⟩, |1⟩)`.

use std::ops::Mul;

use super::element::SuperElement;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix<C>(pub [[C; 2]; 2]);

impl<C: Coefficient> FockMatrix<C> {
    pub fn identity() -> Self {
        Self::diag(C::one(), C::one())
    }

    pub fn zero() -> Self {
        Self::diag(C::zero(), C::zero())
    }

    pub fn diag(d0: C, d1: C) -> Self {
        FockMatrix([[d0, C::zero()], [C::zero(), d1]])
    }

    pub fn get(&self, row: usize, col: usize) -> &C {
        &self.0[row][col]
    }

    pub fn trace(&self) -> C {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn det(&self) -> C {
        let m = &self.0;
        m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
    }

    pub fn scale(&self, c: &C) -> Self {
        FockMatrix(self.0.clone().map(|row| row.map(|x| c.clone() * x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = out.0[i][j].clone() + other.0[i][j].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(C::is_zero)
    }

    /// `m₀₀ + (m₁₁ − m₀₀) a†a + m₀₁ a + m₁₀ a†`.
    pub fn to_element(&self, like: &SuperElement<C>) -> SuperElement<C> {
        let alg = like.algebra();
        let (cre, ann) = (alg.creation(), alg.annihilation());
        let m = &self.0;
        let mut out = SuperElement::zero(alg);
        out.accumulate(Monomial::unit(), m[0][0].clone());
        out.accumulate(Monomial::from_sorted(vec![cre, ann]), m[1][1].clone() - m[0][0].clone());
        out.accumulate(Monomial::from_sorted(vec![ann]), m[0][1].clone());
        out.accumulate(Monomial::from_sorted(vec![cre]), m[1][0].clone());
        out
    }

    /// Matrix exponential.
    ///
    /// Nilpotent matrices give `I + M` in any ring. Otherwise
    /// `exp(M) = eᵗ (cosh Δ · I + sinh Δ / Δ · (M − tI))` with `t = tr M / 2`
    /// and `Δ² = −det(M − tI)`, which needs `exp` and `sqrt` in the ring.
    pub fn exp(&self) -> Result<Self> {
        let sq = self * self;
        if sq.is_zero() {
            return Ok(Self::identity().add(self));
        }
        let m = &self.0;
        if m[0][1].is_zero() && m[1][0].is_zero() {
            let e0 = m[0][0].exp().ok_or(Error::NotRepresentable("exp"))?;
            let e1 = m[1][1].exp().ok_or(Error::NotRepresentable("exp"))?;
            return Ok(Self::diag(e0, e1));
        }
        let half = C::from_ratio(1, 2);
        let t = half.clone() * self.trace();
        let shifted = self.add(&Self::identity().scale(&-t.clone()));
        let et = t.exp().ok_or(Error::NotRepresentable("exp"))?;
        let delta2 = -shifted.det();
        if delta2.is_zero() {
            return Ok(Self::identity().add(&shifted).scale(&et));
        }
        let delta = delta2.sqrt().ok_or(Error::NotRepresentable("sqrt"))?;
        let ep = delta.exp().ok_or(Error::NotRepresentable("exp"))?;
        let em = (-delta.clone()).exp().ok_or(Error::NotRepresentable("exp"))?;
        let cosh = half.clone() * (ep.clone() + em.clone());
        let sinh_over = match delta.to_complex() {
            Some(d) if d.norm() < 1e-6 => C::one() + delta2.clone() * C::from_ratio(1, 6),
            _ => half * (ep - em) * delta.recip().ok_or(Error::NotRepresentable("1/Δ"))?,
        };
        Ok(Self::identity().scale(&cosh).add(&shifted.scale(&sinh_over)).scale(&et))
    }
}

impl<C: Coefficient> Mul for &FockMatrix<C> {
    type Output = FockMatrix<C>;
    fn mul(self, rhs: Self) -> FockMatrix<C> {
        let mut out = FockMatrix::<C>::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0].clone() * rhs.0[0][j].clone()
                    + self.0[i][1].clone() * rhs.0[1][j].clone();
            }
        }
        out
    }
}

impl<C: Coefficient> SuperElement<C> {
    fn require_operator_only(&self, what: &str) -> Result<()> {
        if self.contains_variables() {
            Err(Error::UnsupportedOperand(format!("{what} needs an element without Grassmann variables")))
        } else {
            Ok(())
        }
    }

    /// Matrix on `(|0⟩, |1⟩)`: `a = |0⟩⟨1|`, `a† = |1⟩⟨0|`.
    pub fn to_fock_matrix(&self) -> Result<FockMatrix<C>> {
        self.require_operator_only("the Fock representation")?;
        let alg = self.algebra();
        let (cre, ann) = (alg.creation(), alg.annihilation());
        let mut m = FockMatrix::<C>::zero();
        for (mono, c) in self.terms() {
            match mono.generators() {
                [] => {
                    m.0[0][0] = m.0[0][0].clone() + c.clone();
                    m.0[1][1] = m.0[1][1].clone() + c.clone();
                }
                [g] if *g == ann => m.0[0][1] = m.0[0][1].clone() + c.clone(),
                [g] if *g == cre => m.0[1][0] = m.0[1][0].clone() + c.clone(),
                [g, h] if *g == cre && *h == ann => m.0[1][1] = m.0[1][1].clone() + c.clone(),
                _ => unreachable!("normal form has no other operator monomials"),
            }
        }
        Ok(m)
    }

    /// Fock-space trace with Grassmann variables as spectators:
    /// `tr(G·O) = G·tr(O)`, `tr 1 = 2`, `tr a†a = 1`, `tr a = tr a† = 0`.
    pub fn trace(&self) -> Self {
        let alg = self.algebra();
        let mut out = Self::zero(alg);
        for (mono, c) in self.terms() {
            let (vars, ops) = mono.split_operators(alg);
            let weight = match ops.degree() {
                0 => C::from_i64(2),
                2 => C::one(),
                _ => continue,
            };
            out.accumulate(vars, weight * c.clone());
        }
        out
    }

    /// Operator exponential through the Fock representation.
    pub fn exp_operator(&self) -> Result<Self> {
        self.require_operator_only("the operator exponential")?;
        Ok(self.to_fock_matrix()?.exp()?.to_element(self))
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::kernel::Algebra;
    use crate::scalar::{Poly, Symbol};

    type E = SuperElement<Poly>;

    fn ops() -> (E, E) {
        let alg = Algebra::phase_space();
        (E::named(&alg, "a").unwrap(), E::named(&alg, "ad").unwrap())
    }

    #[test]
    fn basic_matrices() {
        let (a, ad) = ops();
        assert_eq!((&ad * &a).to_fock_matrix().unwrap(), FockMatrix::diag(Poly::zero(), Poly::one()));
        assert_eq!((&a * &ad).to_fock_matrix().unwrap(), FockMatrix::diag(Poly::one(), Poly::zero()));
        let m = a.to_fock_matrix().unwrap();
        assert_eq!(m.get(0, 1), &Poly::one());
        assert!(m.get(1, 0).is_zero());
    }

    #[test]
    fn grassmann_content_rejected() {
        let alg = Algebra::phase_space();
        let x = E::named(&alg, "alpha").unwrap();
        assert!(matches!(x.to_fock_matrix(), Err(Error::UnsupportedOperand(_))));
        assert!(matches!(x.exp_operator(), Err(Error::UnsupportedOperand(_))));
    }

    #[test]
    fn traces() {
        let (a, ad) = ops();
        let n = &ad * &a;
        assert_eq!(n.trace(), E::one(n.algebra()));
        assert!(a.trace().is_zero());
        assert!(ad.trace().is_zero());
        assert_eq!(E::one(n.algebra()).trace(), E::scalar(n.algebra(), Poly::from_i64(2)));
        let nbar = Poly::symbol(Symbol::real("nbar"));
        let rho = &(&a * &ad).scale(&(Poly::one() - nbar.clone())) + &n.scale(&nbar);
        assert_eq!(rho.trace(), E::one(n.algebra()));
    }

    #[test]
    fn spectator_variables_pass_through_trace() {
        let alg = Algebra::phase_space();
        let p = alg.pair("alpha").unwrap();
        let x = E::word(&alg, Poly::from_i64(3), &[p.var, p.conj, alg.creation(), alg.annihilation()]);
        assert_eq!(x.trace(), E::word(&alg, Poly::from_i64(3), &[p.var, p.conj]));
    }

    #[test]
    fn exp_of_zero_and_nilpotent() {
        let (a, _) = ops();
        let zero = E::zero(a.algebra());
        assert_eq!(zero.exp_operator().unwrap(), E::one(a.algebra()));
        let lam = Poly::symbol(Symbol::complex_pair("lambda").0);
        let x = a.scale(&lam);
        assert_eq!(x.exp_operator().unwrap(), &E::one(a.algebra()) + &x);
    }

    #[test]
    fn exact_exp_of_number_operator_not_representable() {
        let (a, ad) = ops();
        let n = &ad * &a;
        assert_eq!(n.exp_operator(), Err(Error::NotRepresentable("exp")));
    }

    #[test]
    fn float_exp_of_number_operator() {
        let (a, ad) = ops();
        let n = (&ad * &a).to_float().unwrap();
        let nu = 3f64.ln();
        let x = n.scale(&Complex64::new(nu, 0.0)).exp_operator().unwrap();
        let m = x.to_fock_matrix().unwrap();
        assert!((m.get(0, 0).re - 1.0).abs() < 1e-14);
        assert!((m.get(1, 1).re - 3.0).abs() < 1e-14);
        let _ = a;
    }

    #[test]
    fn float_exp_general_matches_series() {
        let m = FockMatrix([
            [Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.2)],
            [Complex64::new(0.4, 0.0), Complex64::new(-0.2, 0.5)],
        ]);
        let got = m.exp().unwrap();
        let mut term = FockMatrix::<Complex64>::identity();
        let mut sum = term.clone();
        for k in 1..40 {
            term = (&term * &m).scale(&Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        for i in 0..2 {
            for j in 0..2 {
                assert!((got.0[i][j] - sum.0[i][j]).norm() < 1e-13);
            }
        }
    }
}
