use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_space::{DistributionKind, PhaseSpace, PhaseSpaceDistribution};
use crate::scalar::Coefficient;

/// Rényi entropy of order `r` (Shannon at `r = 1`); `+∞` for a zero body.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct EntropyValue {
    pub order: f64,
    pub value: f64,
    pub kind: DistributionKind,
    pub nbar: Option<f64>,
}

impl EntropyValue {
    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }
}

fn check_order(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("entropy order r = {r} must be positive and finite")))
    }
}

/// `ln r/(1−r)`, continued to `−1` at `r = 1`.
pub fn renyi_offset(r: f64) -> f64 {
    if r == 1.0 {
        -1.0
    } else {
        r.ln() / (1.0 - r)
    }
}

fn real_body<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> Result<f64> {
    z.body()
        .to_real()
        .ok_or_else(|| Error::UnsupportedOperand(format!("{} body `{}` is not a real number", z.kind(), z.body())))
}

fn check_normalized<C: Coefficient>(z: &PhaseSpaceDistribution<C>) -> Result<()> {
    match z.normalization().to_complex() {
        Some(c) if (c - Complex64::new(1.0, 0.0)).norm() <= 1e-12 => Ok(()),
        _ => Err(Error::Domain(format!("{} is not normalized: ∫Dα z = {}", z.kind(), z.normalization()))),
    }
}

/// `S_r(z) = ln r/(1−r) − ln|z_B|`, from `∫Dα |z|^r = r|z_B|^{r−1}`.
pub fn renyi_entropy<C: Coefficient>(z: &PhaseSpaceDistribution<C>, r: f64) -> Result<EntropyValue> {
    check_order(r)?;
    let body = real_body(z)?;
    check_normalized(z)?;
    Ok(EntropyValue {
        order: r,
        value: renyi_offset(r) - body.abs().ln(),
        kind: z.kind(),
        nbar: z.nbar().to_real(),
    })
}

/// The same entropy computed in the algebra: `|z|^r` (or `−z ln|z|`) is
/// applied as a superfunction and Berezin-integrated. A negative body is
/// handled through `−z`, normalized by its own integral.
pub fn renyi_entropy_kernel<C: Coefficient>(z: &PhaseSpaceDistribution<C>, r: f64) -> Result<f64> {
    check_order(r)?;
    let body = real_body(z)?;
    if body == 0.0 {
        return Ok(f64::INFINITY);
    }
    let w = z.element().scale(&C::from_i64(if body < 0.0 { -1 } else { 1 }));
    let b = body.abs();
    let lift = |x: f64| C::from_f64(x);
    let integrand = if r == 1.0 {
        w.apply_superfunction(&|j: usize, _: &C| match j {
            0 => lift(-b * b.ln()),
            1 => lift(-(b.ln() + 1.0)),
            _ => lift(falling_log_derivative(b, j)),
        })?
    } else {
        w.apply_superfunction(&|j: usize, _: &C| {
            let coeff: f64 = (0..j).map(|k| r - k as f64).product();
            lift(coeff * b.powf(r - j as f64))
        })?
    };
    let num = integrand.integrate(z.pair()).body().to_real();
    let den = w.integrate(z.pair()).body().to_real();
    let (Some(num), Some(den)) = (num, den) else {
        return Err(Error::UnsupportedOperand("entropy integrand is not real".into()));
    };
    let avg = num / den;
    Ok(if r == 1.0 { avg } else { avg.ln() / (1.0 - r) })
}

/// `dʲ/dxʲ (−x ln x)` for `j ≥ 2`.
fn falling_log_derivative(x: f64, j: usize) -> f64 {
    // −(−1)^j (j−2)! x^{1−j}
    let fact: f64 = (1..j.saturating_sub(1)).map(|k| k as f64).product();
    let sign = if j.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * fact * x.powi(1 - j as i32)
}

/// `⟨n⟩ ∈ (½, 1)` where `S_r(W) = S_r(Q)`, by bisection.
pub fn find_wq_crossing(r: f64) -> Result<f64> {
    check_order(r)?;
    let ps = PhaseSpace::new();
    let gap = |n: f64| -> Result<f64> {
        let nb = Complex64::new(n, 0.0);
        Ok(renyi_entropy(&ps.wigner_of(nb), r)?.value - renyi_entropy(&ps.husimi_of(nb), r)?.value)
    };
    let (mut lo, mut hi) = (0.5 + 1e-9, 1.0 - 1e-9);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::Domain(format!("no sign change of S_r(W) − S_r(Q) on ({lo}, {hi})")));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if gap(mid)?.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
