//! Berezin integration and linear changes of Grassmann variables.

use super::algebra::{GeneratorId, GrassmannPair};
use super::element::SuperElement;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

impl<C: Coefficient> SuperElement<C> {
    /// `∫Dα x` with `∫Dα αα* = +1`.
    ///
    /// Extracts the coefficient of `αα*`: the pair is adjacent in every
    /// canonical monomial and even, so it commutes to the front without a
    /// sign. Terms missing either member integrate to zero.
    pub fn berezin_integrate(&self, var: GeneratorId, conj: GeneratorId) -> Result<Self> {
        let pair = self.algebra().checked_pair(var, conj)?;
        Ok(self.integrate(pair))
    }

    pub fn integrate(&self, pair: GrassmannPair) -> Self {
        let mut out = Self::zero(self.algebra());
        for (m, c) in self.terms() {
            if m.contains(pair.var) && m.contains(pair.conj) {
                let rest: Vec<GeneratorId> = m
                    .generators()
                    .iter()
                    .copied()
                    .filter(|&g| g != pair.var && g != pair.conj)
                    .collect();
                out.accumulate(Monomial::from_sorted(rest), c.clone());
            }
        }
        out
    }

    /// Single-variable `∫dθ`, acting as the left derivative `∂/∂θ`.
    pub fn integrate_single(&self, theta: GeneratorId) -> Result<Self> {
        if !self.algebra().kind(theta).is_variable() {
            return Err(Error::InvalidMeasure(format!(
                "`{}` is a mode operator",
                self.algebra().name(theta)
            )));
        }
        let mut out = Self::zero(self.algebra());
        for (m, c) in self.terms() {
            if let Ok(pos) = m.generators().binary_search(&theta) {
                let mut rest = m.generators().to_vec();
                rest.remove(pos);
                let c = if pos % 2 == 1 { -c.clone() } else { c.clone() };
                out.accumulate(Monomial::from_sorted(rest), c);
            }
        }
        Ok(out)
    }

    /// Homomorphic substitution `g ↦ s·h` of Grassmann variables.
    ///
    /// Generators absent from `map` are left alone. Sources and targets must
    /// be Grassmann variables and the targets pairwise distinct.
    pub fn substitute_linear(&self, map: &[(GeneratorId, C, GeneratorId)]) -> Result<Self> {
        let alg = self.algebra().clone();
        for (k, (src, _, dst)) in map.iter().enumerate() {
            for g in [src, dst] {
                if !alg.kind(*g).is_variable() {
                    return Err(Error::InvalidSubstitution(format!(
                        "`{}` is a mode operator",
                        alg.name(*g)
                    )));
                }
            }
            if map[..k].iter().any(|(s, _, d)| s == src || d == dst) {
                return Err(Error::InvalidSubstitution(format!(
                    "`{}` mapped twice or target reused",
                    alg.name(*src)
                )));
            }
        }
        let mut out = Self::zero(&alg);
        for (m, c) in self.terms() {
            let mut coef = c.clone();
            let mut word = Vec::with_capacity(m.degree());
            for g in m.generators() {
                match map.iter().find(|(s, _, _)| s == g) {
                    Some((_, scale, dst)) => {
                        coef = coef * scale.clone();
                        word.push(*dst);
                    }
                    None => word.push(*g),
                }
            }
            out.accumulate_word(coef, word);
        }
        Ok(out)
    }
}
