use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::algebra::{Algebra, GeneratorId};
use super::monomial::{normal_order, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{write_signed_sum, Coefficient, FactorText, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Finite linear combination of canonical monomials with coefficients in `C`.
#[derive(Clone)]
pub struct SuperElement<C> {
    algebra: Arc<Algebra>,
    terms: BTreeMap<Monomial, C>,
}

fn same_context(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Coefficient> SuperElement<C> {
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        SuperElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn one(algebra: &Arc<Algebra>) -> Self {
        Self::scalar(algebra, C::one())
    }

    pub fn scalar(algebra: &Arc<Algebra>, c: C) -> Self {
        let mut x = Self::zero(algebra);
        x.accumulate(Monomial::unit(), c);
        x
    }

    pub fn generator(algebra: &Arc<Algebra>, g: GeneratorId) -> Self {
        let mut x = Self::zero(algebra);
        x.terms.insert(Monomial::from_sorted(vec![g]), C::one());
        x
    }

    /// Looks up a generator by name.
    pub fn named(algebra: &Arc<Algebra>, name: &str) -> Result<Self> {
        Ok(Self::generator(algebra, algebra.lookup(name)?))
    }

    /// `c · g1 g2 … gk`, normal ordered.
    pub fn word(algebra: &Arc<Algebra>, c: C, word: &[GeneratorId]) -> Self {
        let mut x = Self::zero(algebra);
        x.accumulate_word(c, word.to_vec());
        x
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn accumulate(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn accumulate_word(&mut self, c: C, word: Vec<GeneratorId>) {
        if c.is_zero() {
            return;
        }
        for (k, m) in normal_order(word, &self.algebra) {
            self.accumulate(m, C::from_i64(k) * c.clone());
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_context(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.algebra);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut word = m1.generators().to_vec();
                word.extend_from_slice(m2.generators());
                out.accumulate_word(c1.clone() * c2.clone(), word);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coefficients(|x| c.clone() * x.clone())
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SuperElement<D> {
        let mut out = SuperElement::zero(&self.algebra);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), f(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_add(&other.checked_mul(self)?)
    }

    /// Antilinear anti-automorphism swapping `α ↔ α*` and `a ↔ a†`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (m, c) in &self.terms {
            let word: Vec<GeneratorId> =
                m.generators().iter().rev().map(|&g| self.algebra.adjoint_of(g)).collect();
            out.accumulate_word(c.conj(), word);
        }
        out
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> C {
        self.coefficient(&Monomial::unit())
    }

    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Monomial::unit());
        out
    }

    /// Parity of a zero element is even.
    pub fn parity(&self) -> Parity {
        let mut odd = false;
        let mut even = false;
        for m in self.terms.keys() {
            if m.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn contains_variables(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.generators().iter().any(|&g| self.algebra.kind(g).is_variable()))
    }

    pub fn contains_generator(&self, g: GeneratorId) -> bool {
        self.terms.keys().any(|m| m.contains(g))
    }

    pub fn is_operator_only(&self) -> bool {
        !self.contains_variables()
    }

    /// Canonical text `c1*mono1 + c2*mono2` in monomial order.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl SuperElement<Poly> {
    /// Numeric image; fails if a coefficient has free symbols.
    pub fn to_float(&self) -> Result<SuperElement<Complex64>> {
        let mut out = SuperElement::zero(&self.algebra);
        for (m, c) in &self.terms {
            let z = c
                .to_complex()
                .ok_or_else(|| Error::UnsupportedOperand(format!("coefficient `{c}` is symbolic")))?;
            out.accumulate(m.clone(), z);
        }
        Ok(out)
    }
}

impl<C: Coefficient> PartialEq for SuperElement<C> {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl<C: Coefficient> fmt::Display for SuperElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<(FactorText, String)> =
            self.terms.iter().map(|(m, c)| (c.factor_text(), m.text(&self.algebra))).collect();
        write_signed_sum(f, texts.iter().map(|(c, t)| (c.clone(), t.as_str())))
    }
}

impl<C: Coefficient> fmt::Debug for SuperElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperElement({self})")
    }
}

// Operator impls panic on mismatched contexts; use the `checked_*` methods
// when elements may come from different algebras.

impl<C: Coefficient> Add for &SuperElement<C> {
    type Output = SuperElement<C>;
    fn add(self, rhs: Self) -> SuperElement<C> {
        self.checked_add(rhs).expect("algebra context mismatch")
    }
}

impl<C: Coefficient> Sub for &SuperElement<C> {
    type Output = SuperElement<C>;
    fn sub(self, rhs: Self) -> SuperElement<C> {
        self.checked_sub(rhs).expect("algebra context mismatch")
    }
}

impl<C: Coefficient> Mul for &SuperElement<C> {
    type Output = SuperElement<C>;
    fn mul(self, rhs: Self) -> SuperElement<C> {
        self.checked_mul(rhs).expect("algebra context mismatch")
    }
}

impl<C: Coefficient> Neg for &SuperElement<C> {
    type Output = SuperElement<C>;
    fn neg(self) -> SuperElement<C> {
        self.neg_ref()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for SuperElement<C> {
            type Output = SuperElement<C>;
            fn $m(self, rhs: Self) -> SuperElement<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for SuperElement<C> {
    type Output = SuperElement<C>;
    fn neg(self) -> SuperElement<C> {
        self.neg_ref()
    }
}
