use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::info::{covariance, renyi_entropy, renyi_offset};
use crate::phase_space::{PhaseSpace, PhaseSpaceDistribution};

/// One side of a check: a float, or the canonical text of an exact value.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckValue {
    Real(f64),
    Exact(String),
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Real(x) => write!(f, "{x}"),
            CheckValue::Exact(s) => f.write_str(s),
        }
    }
}

impl From<f64> for CheckValue {
    fn from(x: f64) -> Self {
        CheckValue::Real(x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub parameters: BTreeMap<String, f64>,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
    pub pass: bool,
    /// `0` for exact comparisons.
    pub tolerance: f64,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        parameters: &[(&str, f64)],
        lhs: impl Into<CheckValue>,
        rhs: impl Into<CheckValue>,
        pass: bool,
        tolerance: f64,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
            tolerance,
        }
    }

    /// Exact equality of two canonical forms.
    pub fn exact<T: fmt::Display + PartialEq>(check: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        CheckRecord::new(
            check,
            &[],
            CheckValue::Exact(lhs.to_string()),
            CheckValue::Exact(rhs.to_string()),
            lhs == rhs,
            0.0,
        )
    }

    /// `|lhs − rhs| ≤ tol`; equal infinities pass.
    pub fn close(check: impl Into<String>, parameters: &[(&str, f64)], lhs: f64, rhs: f64, tol: f64) -> Self {
        let pass = lhs == rhs || (lhs - rhs).abs() <= tol;
        CheckRecord::new(check, parameters, lhs, rhs, pass, tol)
    }

    /// `lhs ≥ rhs − tol`.
    pub fn at_least(check: impl Into<String>, parameters: &[(&str, f64)], lhs: f64, rhs: f64, tol: f64) -> Self {
        CheckRecord::new(check, parameters, lhs, rhs, lhs >= rhs - tol, tol)
    }

    fn param(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).copied()
    }
}

fn write_value<M: SerializeMap>(map: &mut M, key: &'static str, flag: &'static str, v: &CheckValue) -> Result<(), M::Error> {
    match v {
        CheckValue::Exact(s) => map.serialize_entry(key, s),
        CheckValue::Real(x) if x.is_finite() => map.serialize_entry(key, x),
        CheckValue::Real(x) => {
            map.serialize_entry(key, &None::<f64>)?;
            let tag = if x.is_nan() {
                "nan"
            } else if *x > 0.0 {
                "+inf"
            } else {
                "-inf"
            };
            map.serialize_entry(flag, tag)
        }
    }
}

impl Serialize for CheckRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("check", &self.check)?;
        map.serialize_entry("parameters", &self.parameters)?;
        write_value(&mut map, "lhs", "lhs_nonfinite", &self.lhs)?;
        write_value(&mut map, "rhs", "rhs_nonfinite", &self.rhs)?;
        map.serialize_entry("pass", &self.pass)?;
        map.serialize_entry("tolerance", &self.tolerance)?;
        map.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn push(&mut self, record: CheckRecord) {
        if record.pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Stable order: unparametrized checks first, then by `nbar`, then by `r`.
    pub fn sort(&mut self) {
        fn key(v: Option<f64>, w: Option<f64>, x: Option<f64>, y: Option<f64>) -> Ordering {
            let cmp = |a: Option<f64>, b: Option<f64>| match (a, b) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(a), Some(b)) => a.total_cmp(&b),
            };
            cmp(v, x).then(cmp(w, y))
        }
        self.checks
            .sort_by(|a, b| key(a.param("nbar"), a.param("r"), b.param("nbar"), b.param("r")));
    }
}

fn det_of(z: &PhaseSpaceDistribution<Complex64>) -> f64 {
    covariance(z).det().re
}

/// Second-moment and entropic bounds at every `nbar` of `grid` and every
/// order in `orders`, including the attained bounds and the identity
/// `S_r = ln r/(1−r) − ½ ln(−det γ)`.
pub fn verify_uncertainty_relations(grid: &[f64], orders: &[f64], tol: f64) -> Result<VerificationReport> {
    if let Some(n) = grid.iter().find(|n| !(0.0..=1.0).contains(*n)) {
        return Err(Error::Domain(format!("grid point {n} outside [0, 1]")));
    }
    let ps = PhaseSpace::new();
    let mut report = VerificationReport::default();
    let ln2 = std::f64::consts::LN_2;
    for &n in grid {
        let p = [("nbar", n)];
        let nb = Complex64::new(n, 0.0);
        let (w, q) = (ps.wigner_of(nb), ps.husimi_of(nb));
        let (det_w, det_q) = (det_of(&w), det_of(&q));

        report.push(CheckRecord::new(
            "det_gamma_W_in_[-1/4,0]",
            &p,
            det_w,
            -0.25,
            det_w >= -0.25 - tol && det_w <= tol,
            tol,
        ));
        if n == 0.0 || n == 1.0 {
            report.push(CheckRecord::close("det_gamma_W_attains_-1/4", &p, det_w, -0.25, tol));
        }
        if n == 0.5 {
            report.push(CheckRecord::close("det_gamma_W_attains_0", &p, det_w, 0.0, tol));
        }
        report.push(CheckRecord::new(
            "det_gamma_Q_in_[-1,0]",
            &p,
            det_q,
            -1.0,
            det_q >= -1.0 - tol && det_q <= tol,
            tol,
        ));
        if n == 0.0 {
            report.push(CheckRecord::close("det_gamma_Q_attains_-1", &p, det_q, -1.0, tol));
        }
        if n == 1.0 {
            report.push(CheckRecord::close("det_gamma_Q_attains_0", &p, det_q, 0.0, tol));
        }

        for &r in orders {
            let pr = [("nbar", n), ("r", r)];
            let off = renyi_offset(r);
            let s_w = renyi_entropy(&w, r)?.value;
            let s_q = renyi_entropy(&q, r)?.value;
            report.push(CheckRecord::at_least("S_W_lower_bound", &pr, s_w, off + ln2, tol));
            report.push(CheckRecord::at_least("S_Q_lower_bound", &pr, s_q, off, tol));
            if n == 0.0 || n == 1.0 {
                report.push(CheckRecord::close("S_W_attains_bound", &pr, s_w, off + ln2, tol));
            }
            if n == 0.0 {
                report.push(CheckRecord::close("S_Q_attains_bound", &pr, s_q, off, tol));
            }
            if det_w != 0.0 {
                let rhs = off - 0.5 * (-det_w).ln();
                report.push(CheckRecord::close("S_W_equals_det_form", &pr, s_w, rhs, tol));
            }
            if det_q != 0.0 {
                let rhs = off - 0.5 * (-det_q).ln();
                report.push(CheckRecord::close("S_Q_equals_det_form", &pr, s_q, rhs, tol));
            }
        }
    }
    Ok(report)
}
