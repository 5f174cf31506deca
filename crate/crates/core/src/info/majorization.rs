use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::phase_space::PhaseSpaceDistribution;
use crate::scalar::Coefficient;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type RealDerivative = Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>;

#[derive(Clone)]
enum Shape {
    /// `min(x, t) − min(0, t)`
    Hinge(f64),
    NegativeSquare,
    Identity,
    Custom { f: RealFn, df: RealDerivative },
}

/// A concave `f` with `f(0) = 0`, together with its derivative.
#[derive(Clone)]
pub struct ConcaveTestFunction {
    name: String,
    param: Option<f64>,
    shape: Shape,
}

impl fmt::Debug for ConcaveTestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConcaveTestFunction")
            .field("name", &self.name)
            .field("param", &self.param)
            .finish()
    }
}

/// Interval on which concavity is checked; covers every body in `[−½, 1]`.
const CHECK_RANGE: (f64, f64) = (-1.5, 1.5);
const CHECK_POINTS: usize = 61;
const CONCAVITY_TOL: f64 = 1e-12;

impl ConcaveTestFunction {
    pub fn hinge(threshold: f64) -> Self {
        ConcaveTestFunction {
            name: format!("hinge(t={threshold})"),
            param: Some(threshold),
            shape: Shape::Hinge(threshold),
        }
    }

    /// `−x²`.
    pub fn negative_square() -> Self {
        ConcaveTestFunction { name: "-x^2".into(), param: None, shape: Shape::NegativeSquare }
    }

    /// `x`, the linear boundary case.
    pub fn identity() -> Self {
        ConcaveTestFunction { name: "x".into(), param: None, shape: Shape::Identity }
    }

    /// `df` returns `None` on the points where `f` is not differentiable.
    pub fn custom(
        name: impl Into<String>,
        param: Option<f64>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        ConcaveTestFunction {
            name: name.into(),
            param,
            shape: Shape::Custom { f: Arc::new(f), df: Arc::new(df) },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param(&self) -> Option<f64> {
        self.param
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Hinge(t) => x.min(*t) - 0f64.min(*t),
            Shape::NegativeSquare => -x * x,
            Shape::Identity => x,
            Shape::Custom { f, .. } => f(x),
        }
    }

    pub fn derivative(&self, x: f64) -> Option<f64> {
        match &self.shape {
            Shape::Hinge(t) if x < *t => Some(1.0),
            Shape::Hinge(t) if x > *t => Some(0.0),
            Shape::Hinge(_) => None,
            Shape::NegativeSquare => Some(-2.0 * x),
            Shape::Identity => Some(1.0),
            Shape::Custom { df, .. } => df(x),
        }
    }

    /// `f⁽ʲ⁾` at a coefficient, exact for the built-in shapes.
    fn derivative_at<C: Coefficient>(&self, order: usize, at: &C) -> Option<C> {
        let x = at.to_real()?;
        match (&self.shape, order) {
            (Shape::Hinge(t), 0) if x <= *t => Some(at.clone() - C::from_f64(0f64.min(*t))?),
            (Shape::Hinge(t), 0) => C::from_f64(t - 0f64.min(*t)),
            (Shape::Hinge(_), 1) => self.derivative(x).and_then(C::from_f64),
            (Shape::Hinge(t), _) => (x != *t).then(C::zero),
            (Shape::NegativeSquare, 0) => Some(-(at.clone() * at.clone())),
            (Shape::NegativeSquare, 1) => Some(at.clone() * C::from_i64(-2)),
            (Shape::NegativeSquare, 2) => Some(C::from_i64(-2)),
            (Shape::NegativeSquare, _) => Some(C::zero()),
            (Shape::Identity, 0) => Some(at.clone()),
            (Shape::Identity, 1) => Some(C::one()),
            (Shape::Identity, _) => Some(C::zero()),
            (Shape::Custom { f, .. }, 0) => C::from_f64(f(x)),
            (Shape::Custom { df, .. }, 1) => df(x).and_then(C::from_f64),
            (Shape::Custom { .. }, _) => None,
        }
    }

    /// `f(0) = 0` exactly and the midpoint inequality on a grid.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidTestFunction { name: self.name.clone(), reason };
        let f0 = self.value(0.0);
        if f0 != 0.0 {
            return Err(invalid(format!("f(0) = {f0}")));
        }
        let (lo, hi) = CHECK_RANGE;
        let step = (hi - lo) / (CHECK_POINTS - 1) as f64;
        let xs: Vec<f64> = (0..CHECK_POINTS).map(|k| lo + step * k as f64).collect();
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i + 1..] {
                let mid = self.value(0.5 * (x + y));
                let chord = 0.5 * (self.value(x) + self.value(y));
                if mid < chord - CONCAVITY_TOL {
                    return Err(invalid(format!("midpoint test fails on [{x}, {y}]")));
                }
            }
        }
        Ok(())
    }
}

/// Hinges at 25 thresholds on `[−1.25, 1.25]`, then `−x²` and `x`.
/// Thresholds that land on one of `bodies` are moved up by `1e−6`.
pub fn default_family(bodies: &[f64]) -> Vec<ConcaveTestFunction> {
    let mut family: Vec<ConcaveTestFunction> = (0..25)
        .map(|k| {
            let mut t = -1.25 + 2.5 * k as f64 / 24.0;
            if t.abs() < 1e-12 {
                t = 0.0;
            }
            if bodies.iter().any(|b| (b - t).abs() < 1e-9) {
                t += 1e-6;
            }
            ConcaveTestFunction::hinge(t)
        })
        .collect();
    family.push(ConcaveTestFunction::negative_square());
    family.push(ConcaveTestFunction::identity());
    family
}

fn real_body<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> Result<f64> {
    z.body()
        .to_real()
        .ok_or_else(|| Error::UnsupportedOperand(format!("{} body `{}` is not a real number", z.kind(), z.body())))
}

/// `∫Dα f(z) = f′(z_B)·∫Dα z`.
pub fn concave_average<C: Coefficient>(f: &ConcaveTestFunction, z: &PhaseSpaceDistribution<C>) -> Result<C> {
    let d = f.derivative_at(1, &z.body()).ok_or(Error::NonDifferentiable { order: 1 })?;
    Ok(d * z.normalization())
}

/// `∫Dα f(z)` with `f(z)` built as a superfunction.
pub fn concave_average_kernel<C: Coefficient>(
    f: &ConcaveTestFunction,
    z: &PhaseSpaceDistribution<C>,
) -> Result<C> {
    let lifted = z.element().apply_superfunction(&|j: usize, at: &C| f.derivative_at(j, at))?;
    Ok(lifted.integrate(z.pair()).body())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `z1 ≺ z2`
    MajorizedBy,
    /// `z2 ≺ z1`
    Majorizes,
    Equivalent,
    /// Retained for completeness; one-pair bodies are totally ordered.
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::MajorizedBy => "z1 ≺ z2",
            Relation::Majorizes => "z2 ≺ z1",
            Relation::Equivalent => "z1 ~ z2",
            Relation::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Witness {
    pub function: String,
    pub left: f64,
    pub right: f64,
    /// The inequality demanded by the analytic relation holds.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    pub bodies: (f64, f64),
    pub witnesses: Vec<Witness>,
    /// Some function separates the two strictly.
    pub strict: bool,
}

const AVERAGE_TOL: f64 = 1e-12;

/// Decides `z1 ≺ z2` by comparing bodies and confirms the verdict on every
/// member of `family` through kernel-computed averages.
pub fn majorizes<C: Coefficient>(
    z1: &PhaseSpaceDistribution<C>,
    z2: &PhaseSpaceDistribution<C>,
    family: &[ConcaveTestFunction],
) -> Result<MajorizationVerdict> {
    for f in family {
        f.validate()?;
    }
    for z in [z1, z2] {
        let norm = z.normalization().to_real();
        if norm.is_none_or(|c| (c - 1.0).abs() > AVERAGE_TOL) {
            return Err(Error::Domain(format!("{} is not normalized", z.kind())));
        }
    }
    let (b1, b2) = (real_body(z1)?, real_body(z2)?);
    let relation = match b1.partial_cmp(&b2) {
        Some(std::cmp::Ordering::Less) => Relation::MajorizedBy,
        Some(std::cmp::Ordering::Greater) => Relation::Majorizes,
        Some(std::cmp::Ordering::Equal) => Relation::Equivalent,
        None => Relation::Incomparable,
    };
    let mut witnesses = Vec::with_capacity(family.len());
    let mut strict = false;
    for f in family {
        let avg = |z: &PhaseSpaceDistribution<C>| -> Result<f64> {
            concave_average_kernel(f, z)?
                .to_real()
                .ok_or_else(|| Error::UnsupportedOperand(format!("average of {} is not real", f.name())))
        };
        let (left, right) = (avg(z1)?, avg(z2)?);
        let pass = match relation {
            Relation::MajorizedBy => left >= right - AVERAGE_TOL,
            Relation::Majorizes => right >= left - AVERAGE_TOL,
            Relation::Equivalent => (left - right).abs() <= AVERAGE_TOL,
            Relation::Incomparable => true,
        };
        strict |= (left - right).abs() > AVERAGE_TOL;
        witnesses.push(Witness { function: f.name().to_string(), left, right, pass });
    }
    if let Some(w) = witnesses.iter().find(|w| !w.pass) {
        return Err(Error::Inconsistent(format!(
            "bodies {b1} and {b2} give {relation}, but {} averages to {} and {}",
            w.function, w.left, w.right
        )));
    }
    Ok(MajorizationVerdict { relation, bodies: (b1, b2), witnesses, strict })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::phase_space::PhaseSpace;
    use crate::scalar::Poly;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn family_has_27_valid_members() {
        let fam = default_family(&[0.0, 0.5]);
        assert_eq!(fam.len(), 27);
        for f in &fam {
            f.validate().unwrap();
        }
        let t: Vec<f64> = fam.iter().filter_map(|f| f.param()).collect();
        assert_eq!(t[12], 1e-6);
        assert_eq!(t[0], -1.25);
        assert_eq!(t[24], 1.25);
    }

    #[test]
    fn validation_rejects_bad_functions() {
        let convex = ConcaveTestFunction::custom("x^2", None, |x| x * x, |x| Some(2.0 * x));
        assert!(matches!(convex.validate(), Err(Error::InvalidTestFunction { .. })));
        let shifted = ConcaveTestFunction::custom("x+1", None, |x| x + 1.0, |_| Some(1.0));
        assert!(matches!(shifted.validate(), Err(Error::InvalidTestFunction { .. })));
        let ps = PhaseSpace::new();
        let z = ps.wigner_of(c(0.0));
        assert!(majorizes(&z, &z, &[convex]).is_err());
    }

    #[test]
    fn concave_average_examples() {
        let ps = PhaseSpace::new();
        let w0 = ps.wigner_of(Poly::zero());
        let sq = ConcaveTestFunction::negative_square();
        assert_eq!(concave_average(&sq, &w0).unwrap(), Poly::from_i64(-1));
        assert_eq!(concave_average_kernel(&sq, &w0).unwrap(), Poly::from_i64(-1));
        let id = ConcaveTestFunction::identity();
        assert_eq!(concave_average(&id, &ps.husimi_of(Poly::from_ratio(1, 3))).unwrap(), Poly::one());
        let high = ConcaveTestFunction::hinge(2.0);
        assert_eq!(concave_average(&high, &ps.husimi_of(c(0.0))).unwrap(), c(1.0));
    }

    #[test]
    fn kinked_point_is_an_error() {
        let ps = PhaseSpace::new();
        let w = ps.wigner_of(c(0.5));
        let kink = ConcaveTestFunction::hinge(0.0);
        assert_eq!(concave_average(&kink, &w), Err(Error::NonDifferentiable { order: 1 }));
        assert!(concave_average_kernel(&kink, &w).is_err());
    }

    #[test]
    fn analytic_and_kernel_averages_agree_exactly() {
        let ps = PhaseSpace::new();
        for k in 0..=8 {
            let n = Poly::from_ratio(k, 8);
            for z in [ps.wigner_of(n.clone()), ps.husimi_of(n.clone())] {
                let b = z.body().to_real().unwrap();
                for f in default_family(&[b]) {
                    assert_eq!(concave_average(&f, &z).unwrap(), concave_average_kernel(&f, &z).unwrap());
                }
            }
        }
    }

    #[test]
    fn reflexive() {
        let ps = PhaseSpace::new();
        let z = ps.husimi_of(c(0.3));
        let v = majorizes(&z, &z, &default_family(&[0.7])).unwrap();
        assert_eq!(v.relation, Relation::Equivalent);
        assert!(!v.strict);
    }

    #[test]
    fn wigner_chain() {
        let ps = PhaseSpace::new();
        let chain: Vec<_> = [1.0, 0.8, 0.5, 0.2, 0.0].iter().map(|&n| ps.wigner_of(c(n))).collect();
        let bodies: Vec<f64> = chain.iter().map(|z| z.body().re).collect();
        let fam = default_family(&bodies);
        for pair in chain.windows(2) {
            let v = majorizes(&pair[0], &pair[1], &fam).unwrap();
            assert_eq!(v.relation, Relation::MajorizedBy);
            assert!(v.strict);
            let back = majorizes(&pair[1], &pair[0], &fam).unwrap();
            assert_eq!(back.relation, Relation::Majorizes);
        }
    }
}
