//! Displacement operator, coherent states and the coherent-basis trace.

use super::PhaseSpace;
use crate::error::{Error, Result};
use crate::kernel::{GrassmannPair, Monomial, Parity, SuperElement};
use crate::scalar::Coefficient;

/// Which ket enters `⟨α|O|±α⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KetSign {
    /// `|−α⟩`, the correct fermionic prescription.
    Minus,
    /// `|α⟩`, kept as a regression control.
    Plus,
}

/// Fock-basis amplitudes `ψ₀|0⟩ + ψ₁|1⟩` with Grassmann-valued `ψₙ`
/// written to the left of the basis kets.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentKet<C: Coefficient> {
    pub amplitudes: [SuperElement<C>; 2],
}

impl<C: Coefficient> CoherentKet<C> {
    /// Bra amplitudes `ψₙ*`.
    pub fn bra(&self) -> [SuperElement<C>; 2] {
        [self.amplitudes[0].adjoint(), self.amplitudes[1].adjoint()]
    }

    /// `⟨self|O|ket⟩ = Σ ψₘ* O_{mn} φₙ` for an operator-only `O`.
    pub fn matrix_element(&self, op: &SuperElement<C>, ket: &CoherentKet<C>) -> Result<SuperElement<C>> {
        let m = op.to_fock_matrix()?;
        let bra = self.bra();
        let mut out = SuperElement::zero(op.algebra());
        for (i, b) in bra.iter().enumerate() {
            for (j, k) in ket.amplitudes.iter().enumerate() {
                out = &out + &(b * &k.scale(m.get(i, j)));
            }
        }
        Ok(out)
    }
}

/// Entries `[G·O]_{mn} = G·O_{mn}` of an element, with Grassmann parts kept
/// on the left.
fn grassmann_fock_entries<C: Coefficient>(x: &SuperElement<C>) -> [[SuperElement<C>; 2]; 2] {
    let alg = x.algebra();
    let (cre, ann) = (alg.creation(), alg.annihilation());
    let z = SuperElement::zero(alg);
    let mut m = [[z.clone(), z.clone()], [z.clone(), z]];
    for (mono, c) in x.terms() {
        let (vars, ops) = mono.split_operators(alg);
        let mut g = SuperElement::zero(alg);
        g.accumulate(vars, c.clone());
        let slots: &[(usize, usize)] = match ops.generators() {
            [] => &[(0, 0), (1, 1)],
            [o] if *o == ann => &[(0, 1)],
            [o] if *o == cre => &[(1, 0)],
            _ => &[(1, 1)],
        };
        for &(i, j) in slots {
            m[i][j] = &m[i][j] + &g;
        }
    }
    m
}

impl PhaseSpace {
    /// `D(α) = 1 + a†α − α*a + (½ − a†a)αα*`.
    pub fn displacement<C: Coefficient>(&self, pair: GrassmannPair) -> SuperElement<C> {
        self.displacement_signed(pair, false)
    }

    /// `D(−α)` when `negate`.
    pub fn displacement_signed<C: Coefficient>(&self, pair: GrassmannPair, negate: bool) -> SuperElement<C> {
        let alg = self.algebra();
        let s = if negate { -C::one() } else { C::one() };
        let (cre, ann) = (alg.creation(), alg.annihilation());
        let linear = &SuperElement::word(alg, s.clone(), &[cre, pair.var])
            - &SuperElement::word(alg, s, &[pair.conj, ann]);
        let quad = &(&self.scalar(C::from_ratio(1, 2)) - &self.number())
            * &SuperElement::word(alg, C::one(), &[pair.var, pair.conj]);
        &(&self.one() + &linear) + &quad
    }

    /// `|α⟩⟨α| = D(α) a a† D(−α)`.
    pub fn coherent_projector<C: Coefficient>(&self, pair: GrassmannPair) -> SuperElement<C> {
        &(&self.displacement(pair) * &self.vacuum_projector()) * &self.displacement_signed(pair, true)
    }

    /// `|−α⟩⟨α| = D(−α) a a† D(−α)`.
    pub fn reflected_projector<C: Coefficient>(&self, pair: GrassmannPair) -> SuperElement<C> {
        let d_minus = self.displacement_signed(pair, true);
        &(&d_minus * &self.vacuum_projector()) * &d_minus
    }

    /// `|±α⟩ = D(±α)|0⟩`, read off the first column of `D(±α) a a†`.
    pub fn coherent_ket<C: Coefficient>(&self, pair: GrassmannPair, negate: bool) -> CoherentKet<C> {
        let col = &self.displacement_signed(pair, negate) * &self.vacuum_projector();
        let [[a0, _], [a1, _]] = grassmann_fock_entries(&col);
        CoherentKet { amplitudes: [a0, a1] }
    }

    /// `⟨α|O|±α⟩` with `O` operator-only.
    pub fn coherent_matrix_element<C: Coefficient>(
        &self,
        op: &SuperElement<C>,
        pair: GrassmannPair,
        sign: KetSign,
    ) -> Result<SuperElement<C>> {
        let bra = self.coherent_ket(pair, false);
        let ket = self.coherent_ket(pair, sign == KetSign::Minus);
        bra.matrix_element(op, &ket)
    }

    /// `Tr O = ∫Dα ⟨α|O|−α⟩` for an even operator.
    pub fn trace_coherent<C: Coefficient>(&self, op: &SuperElement<C>) -> Result<C> {
        self.trace_coherent_with(op, KetSign::Minus)
    }

    pub fn trace_coherent_with<C: Coefficient>(&self, op: &SuperElement<C>, sign: KetSign) -> Result<C> {
        if op.parity() != Parity::Even {
            return Err(Error::Parity("coherent-basis trace needs an even operator".into()));
        }
        let elem = self.coherent_matrix_element(op, self.alpha, sign)?;
        let integrated = elem.integrate(self.alpha);
        if integrated.terms().any(|(m, _)| m != &Monomial::unit()) {
            return Err(Error::UnsupportedOperand("coherent-basis trace left Grassmann content".into()));
        }
        Ok(integrated.body())
    }
}
