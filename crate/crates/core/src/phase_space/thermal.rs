//! Fermi-Dirac parametrization of the physical states.
//!
//! `⟨n⟩ = e^ν/(1+e^ν) = 1/(1+e^{ε/T})` with `ν = −ε/T`. Zero and infinite
//! temperatures are carried by IEEE signed zeros and infinities, so the
//! endpoints come out as exact `0`, `1` and `½`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemperatureBranch {
    /// `T > 0`, including `T → 0⁺`: `⟨n⟩ < ½`.
    Positive,
    /// `T < 0`, including `T → 0⁻`: `⟨n⟩ > ½`.
    Negative,
    /// `|T| = ∞`: `⟨n⟩ = ½`.
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalParams {
    pub nbar: f64,
    pub nu: f64,
    pub epsilon: f64,
    pub temperature: f64,
}

/// `1/(1+eˣ)` without overflow.
pub fn fermi_dirac(eps_over_t: f64) -> f64 {
    if eps_over_t == 0.0 {
        0.5
    } else if eps_over_t > 0.0 {
        let e = (-eps_over_t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + eps_over_t.exp())
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("excitation energy ε = {epsilon} must be positive and finite")))
    }
}

impl ThermalParams {
    pub fn from_nbar(nbar: f64, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(0.0..=1.0).contains(&nbar) {
            return Err(Error::Domain(format!("⟨n⟩ = {nbar} outside [0, 1]")));
        }
        // ν = ln(n/(1−n)); ε/T = −ν
        let nu = nbar.ln() - (1.0 - nbar).ln();
        let ratio = -nu;
        Ok(ThermalParams { nbar, nu, epsilon, temperature: epsilon / ratio })
    }

    /// From `ε/T`; `±∞` gives the zero-temperature limits.
    pub fn from_ratio(eps_over_t: f64, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if eps_over_t.is_nan() {
            return Err(Error::Domain("ε/T is NaN".into()));
        }
        let nu = -eps_over_t;
        Ok(ThermalParams {
            nbar: fermi_dirac(eps_over_t),
            nu,
            epsilon,
            temperature: epsilon / eps_over_t,
        })
    }

    pub fn from_nu(nu: f64, epsilon: f64) -> Result<Self> {
        Self::from_ratio(-nu, epsilon)
    }

    /// From a signed temperature; `+0.0`/`-0.0` select the vacuum/excited state.
    pub fn from_temperature(temperature: f64, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if temperature.is_nan() {
            return Err(Error::Domain("T is NaN".into()));
        }
        let mut p = Self::from_ratio(epsilon / temperature, epsilon)?;
        p.temperature = temperature;
        Ok(p)
    }

    pub fn eps_over_t(&self) -> f64 {
        -self.nu
    }

    pub fn branch(&self) -> TemperatureBranch {
        if self.temperature.is_infinite() {
            TemperatureBranch::Infinite
        } else if self.temperature.is_sign_positive() {
            TemperatureBranch::Positive
        } else {
            TemperatureBranch::Negative
        }
    }
}
