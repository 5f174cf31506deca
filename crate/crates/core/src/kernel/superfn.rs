//! Scalar functions lifted to even super-elements by Taylor expansion
//! around the body. The series terminates because the soul is nilpotent.

use super::element::{Parity, SuperElement};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// A scalar function known through its derivatives.
pub trait SuperFunction<C> {
    /// `f⁽ʲ⁾(at)`, or `None` where it does not exist.
    fn derivative(&self, order: usize, at: &C) -> Option<C>;
}

impl<C, F> SuperFunction<C> for F
where
    F: Fn(usize, &C) -> Option<C>,
{
    fn derivative(&self, order: usize, at: &C) -> Option<C> {
        self(order, at)
    }
}

/// `Σ cₖ tᵏ`, differentiated exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialFn<C>(pub Vec<C>);

impl<C: Coefficient> PolynomialFn<C> {
    pub fn identity() -> Self {
        PolynomialFn(vec![C::zero(), C::one()])
    }

    pub fn constant(c: C) -> Self {
        PolynomialFn(vec![c])
    }
}

impl<C: Coefficient> SuperFunction<C> for PolynomialFn<C> {
    fn derivative(&self, order: usize, at: &C) -> Option<C> {
        let mut acc = C::zero();
        for (k, c) in self.0.iter().enumerate().skip(order).rev() {
            let falling: i64 = ((k - order + 1)..=k).map(|x| x as i64).product();
            acc = acc * at.clone() + C::from_i64(falling) * c.clone();
        }
        Some(acc)
    }
}

impl<C: Coefficient> SuperElement<C> {
    /// Smallest `k` with `soul^k = 0`.
    pub fn nilpotency_degree(&self) -> Result<usize> {
        let soul = self.soul();
        let bound = self.algebra().len() + 1;
        let mut power = Self::one(self.algebra());
        for k in 0..=bound {
            if power.is_zero() {
                return Ok(k);
            }
            power = &power * &soul;
        }
        Err(Error::NotNilpotent)
    }

    /// `f(x) = Σ_{j<k} f⁽ʲ⁾(x_B) x_Sʲ / j!` for even `x`.
    pub fn apply_superfunction<F: SuperFunction<C> + ?Sized>(&self, f: &F) -> Result<Self> {
        if self.parity() != Parity::Even {
            return Err(Error::Parity("superfunctions apply to even elements only".into()));
        }
        let degree = self.nilpotency_degree()?;
        let body = self.body();
        let soul = self.soul();
        let mut out = Self::zero(self.algebra());
        let mut power = Self::one(self.algebra());
        let mut factorial: i64 = 1;
        for j in 0..degree {
            if j > 0 {
                factorial *= j as i64;
                power = &power * &soul;
            }
            let d = f.derivative(j, &body).ok_or(Error::NonDifferentiable { order: j })?;
            out = &out + &power.scale(&(d * C::from_ratio(1, factorial)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Algebra;
    use crate::scalar::{Poly, Symbol};

    type E = SuperElement<Poly>;

    fn z(body: Poly) -> E {
        let alg = Algebra::phase_space();
        let p = alg.pair("alpha").unwrap();
        &E::scalar(&alg, body) + &E::word(&alg, Poly::one(), &[p.var, p.conj])
    }

    #[test]
    fn square_of_one_pair_element() {
        let zb = Poly::symbol(Symbol::real("zb"));
        let x = z(zb.clone());
        let sq = PolynomialFn(vec![Poly::zero(), Poly::zero(), Poly::one()]);
        let got = x.apply_superfunction(&sq).unwrap();
        let alg = x.algebra().clone();
        let p = alg.pair("alpha").unwrap();
        let expected = &E::scalar(&alg, zb.clone() * zb.clone())
            + &E::word(&alg, Poly::from_i64(2) * zb, &[p.var, p.conj]);
        assert_eq!(got, expected);
        assert_eq!(got, &x * &x);
    }

    #[test]
    fn scaled_exponential_gives_gaussian_closed_form() {
        // c·exp(t/c) at t = αα*: c + αα*
        let nbar = Poly::symbol(Symbol::real("nbar"));
        let c = Poly::from_ratio(1, 2) - nbar;
        let x = z(Poly::zero());
        let cc = c.clone();
        let f = move |j: usize, _: &Poly| match j {
            0 => Some(cc.clone()),
            1 => Some(Poly::one()),
            _ => None,
        };
        assert_eq!(x.apply_superfunction(&f).unwrap(), z(c));
    }

    #[test]
    fn identity_and_constant() {
        let x = z(Poly::from_ratio(3, 7));
        assert_eq!(x.apply_superfunction(&PolynomialFn::identity()).unwrap(), x);
        let c = PolynomialFn::constant(Poly::from_i64(5));
        assert_eq!(x.apply_superfunction(&c).unwrap(), E::scalar(x.algebra(), Poly::from_i64(5)));
    }

    #[test]
    fn odd_input_rejected() {
        let alg = Algebra::phase_space();
        let x = E::named(&alg, "alpha").unwrap();
        let r = x.apply_superfunction(&PolynomialFn::<Poly>::identity());
        assert!(matches!(r, Err(Error::Parity(_))));
    }

    #[test]
    fn missing_derivative_reported() {
        let x = z(Poly::zero());
        let f = |j: usize, _: &Poly| (j == 0).then(Poly::zero);
        assert_eq!(x.apply_superfunction(&f), Err(Error::NonDifferentiable { order: 1 }));
    }

    #[test]
    fn number_operator_is_not_nilpotent() {
        let alg = Algebra::phase_space();
        let n = &E::named(&alg, "ad").unwrap() * &E::named(&alg, "a").unwrap();
        assert_eq!(n.nilpotency_degree(), Err(Error::NotNilpotent));
    }

    #[test]
    fn polynomial_derivatives() {
        // 1 + 2t + 3t²: f'(t) = 2 + 6t, f''(t) = 6
        let p = PolynomialFn(vec![Poly::from_i64(1), Poly::from_i64(2), Poly::from_i64(3)]);
        let t = Poly::from_i64(2);
        assert_eq!(p.derivative(0, &t), Some(Poly::from_i64(17)));
        assert_eq!(p.derivative(1, &t), Some(Poly::from_i64(14)));
        assert_eq!(p.derivative(2, &t), Some(Poly::from_i64(6)));
        assert_eq!(p.derivative(3, &t), Some(Poly::zero()));
    }
}
