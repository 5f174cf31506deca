use num_complex::Complex64;

use super::report::{verify_uncertainty_relations, CheckRecord, CheckValue, VerificationReport};
use crate::error::{Error, Result};
use crate::info::{
    concave_average, concave_average_kernel, covariance, default_family, find_wq_crossing, first_moments, majorizes,
    renyi_entropy, renyi_entropy_kernel, Relation,
};
use crate::kernel::SuperElement;
use crate::phase_space::{KetSign, PhaseSpace, PhaseSpaceDistribution, ThermalParams};
use crate::scalar::{Coefficient, Poly, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Symbolic identities with polynomial coefficients, compared exactly.
    Exact,
    /// The same identities at every grid point in floating point.
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub mode: Mode,
    pub grid: usize,
    pub orders: Vec<f64>,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { mode: Mode::Exact, grid: 513, orders: vec![0.25, 0.5, 1.0, 2.0, 4.0], tol: 1e-12 }
    }
}

/// `k/(points−1)` for `k = 0..points`.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|k| k as f64 / (points - 1) as f64).collect(),
    }
}

/// Runs every identity, bound, chain and figure check.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    if config.grid < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {}", config.grid)));
    }
    if let Some(r) = config.orders.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Error::Domain(format!("entropy order r = {r} must be positive and finite")));
    }
    let grid = uniform_grid(config.grid);
    let mut orders = config.orders.clone();
    orders.sort_by(f64::total_cmp);
    orders.dedup();
    let tol = config.tol;

    let mut report = match config.mode {
        Mode::Exact => exact_identities()?,
        Mode::Float => float_identities(&grid, tol)?,
    };
    report.extend(verify_uncertainty_relations(&grid, &orders, tol)?);
    report.extend(entropy_checks(&grid, &orders, tol)?);
    report.extend(majorization_checks(&grid, config.mode, tol)?);
    report.extend(thermal_checks(tol)?);
    report.sort();
    Ok(report)
}

fn exact_identities() -> Result<VerificationReport> {
    let ps = PhaseSpace::new();
    let n = Poly::symbol(Symbol::real("nbar"));
    let one = Poly::one();
    let half = Poly::from_ratio(1, 2);
    let mut rep = VerificationReport::default();
    let rho = ps.thermal_state(n.clone())?;

    let purity = rho.purity()?;
    rep.push(CheckRecord::exact(
        "purity",
        &purity,
        &(one.clone() - Poly::from_i64(2) * n.clone() * (one.clone() - n.clone())),
    ));
    let chi = ps.characteristic(&rho, ps.alpha())?;
    rep.push(CheckRecord::exact(
        "characteristic_function",
        chi.element(),
        &ps.characteristic_closed_form(&n, ps.alpha()),
    ));
    rep.push(CheckRecord::exact(
        "fourier_kernel_series",
        &ps.fourier_kernel::<Poly>()?,
        &ps.fourier_kernel_expanded(),
    ));
    let w = ps.wigner(&rho)?;
    rep.push(CheckRecord::exact("wigner_pipeline", w.element(), &ps.wigner_closed_form(&n)));
    let q = ps.husimi(&rho)?;
    rep.push(CheckRecord::exact("husimi_trace_pipeline", q.element(), &ps.husimi_closed_form(&n)));
    let q2 = ps.husimi_matrix_element(&rho)?;
    rep.push(CheckRecord::exact("husimi_matrix_element_pipeline", q2.element(), &ps.husimi_closed_form(&n)));
    rep.push(CheckRecord::exact("wigner_normalization", &w.normalization(), &one));
    rep.push(CheckRecord::exact("husimi_normalization", &q.normalization(), &one));

    let d: SuperElement<Poly> = ps.displacement(ps.alpha());
    let d_minus = ps.displacement_signed(ps.alpha(), true);
    rep.push(CheckRecord::exact("displacement_unitary_left", &(&d.adjoint() * &d), &ps.one()));
    rep.push(CheckRecord::exact("displacement_unitary_right", &(&d * &d.adjoint()), &ps.one()));
    rep.push(CheckRecord::exact("displacement_adjoint_is_reflection", &d.adjoint(), &d_minus));
    let alpha = SuperElement::generator(ps.algebra(), ps.alpha().var);
    rep.push(CheckRecord::exact(
        "displaced_annihilator",
        &(&(&d_minus * &ps.a()) * &d),
        &(&ps.a() + &alpha),
    ));
    rep.push(CheckRecord::exact(
        "coherent_resolution_of_identity",
        &ps.coherent_projector::<Poly>(ps.alpha()).integrate(ps.alpha()),
        &ps.one(),
    ));
    rep.push(CheckRecord::exact("coherent_trace_of_state", &ps.trace_coherent(rho.element())?, &one));
    rep.push(CheckRecord::exact(
        "coherent_trace_sign_regression",
        &ps.trace_coherent_with(rho.element(), KetSign::Plus)?,
        &(one.clone() - Poly::from_i64(2) * n.clone()),
    ));

    let zb_w = half.clone() - n.clone();
    let zb_q = one.clone() - n.clone();
    rep.push(CheckRecord::exact("det_gamma_W_symbolic", &covariance(&w).det(), &-(zb_w.clone() * zb_w)));
    rep.push(CheckRecord::exact("det_gamma_Q_symbolic", &covariance(&q).det(), &-(zb_q.clone() * zb_q)));
    let q0 = ps.husimi(&ps.thermal_state(Poly::zero())?)?;
    rep.push(CheckRecord::exact("det_gamma_Q0", &covariance(&q0).det(), &Poly::from_i64(-1)));
    let w_half = ps.wigner(&ps.thermal_state(half)?)?;
    rep.push(CheckRecord::exact("det_gamma_W_half", &covariance(&w_half).det(), &Poly::zero()));
    let zero2 = [Poly::zero(), Poly::zero()];
    rep.push(CheckRecord::new(
        "first_moments_vanish",
        &[],
        CheckValue::Exact(format!("{:?}", first_moments(&w).map(|c| c.to_string()))),
        CheckValue::Exact(format!("{:?}", zero2.clone().map(|c| c.to_string()))),
        first_moments(&w) == zero2 && first_moments(&q) == zero2,
        0.0,
    ));
    Ok(rep)
}

fn float_identities(grid: &[f64], tol: f64) -> Result<VerificationReport> {
    let ps = PhaseSpace::new();
    let mut rep = VerificationReport::default();
    let kernel = ps.fourier_kernel::<Complex64>()?;
    let dist = |e: &SuperElement<Complex64>, closed: &SuperElement<Complex64>| {
        let diff = e - closed;
        diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    };
    for &n in grid {
        let p = [("nbar", n)];
        let nb = Complex64::new(n, 0.0);
        let rho = ps.thermal_state(nb)?;
        let purity = rho.purity()?.re;
        rep.push(CheckRecord::close("purity", &p, purity, 1.0 - 2.0 * n * (1.0 - n), tol));
        let chi = ps.characteristic(&rho, ps.beta())?;
        let w = (&kernel * chi.element()).integrate(ps.beta());
        rep.push(CheckRecord::close("wigner_pipeline", &p, dist(&w, &ps.wigner_closed_form(&nb)), 0.0, tol));
        let q = ps.husimi(&rho)?;
        rep.push(CheckRecord::close(
            "husimi_trace_pipeline",
            &p,
            dist(q.element(), &ps.husimi_closed_form(&nb)),
            0.0,
            tol,
        ));
        let q2 = ps.husimi_matrix_element(&rho)?;
        rep.push(CheckRecord::close(
            "husimi_matrix_element_pipeline",
            &p,
            dist(q2.element(), &ps.husimi_closed_form(&nb)),
            0.0,
            tol,
        ));
        let tr = ps.trace_coherent(rho.element())?;
        rep.push(CheckRecord::close("coherent_trace_of_state", &p, tr.re, 1.0, tol));
        let tr_plus = ps.trace_coherent_with(rho.element(), KetSign::Plus)?;
        rep.push(CheckRecord::close("coherent_trace_sign_regression", &p, tr_plus.re, 1.0 - 2.0 * n, tol));
    }
    let d: SuperElement<Complex64> = ps.displacement(ps.alpha());
    rep.push(CheckRecord::close(
        "displacement_unitary",
        &[],
        dist(&(&d.adjoint() * &d), &ps.one()),
        0.0,
        tol,
    ));
    rep.push(CheckRecord::close(
        "coherent_resolution_of_identity",
        &[],
        dist(&ps.coherent_projector::<Complex64>(ps.alpha()).integrate(ps.alpha()), &ps.one()),
        0.0,
        tol,
    ));
    Ok(rep)
}

fn entropy_checks(grid: &[f64], orders: &[f64], tol: f64) -> Result<VerificationReport> {
    let ps = PhaseSpace::new();
    let mut rep = VerificationReport::default();
    let c = |x: f64| Complex64::new(x, 0.0);
    let ln2 = std::f64::consts::LN_2;

    let s_w0 = renyi_entropy(&ps.wigner_of(c(0.0)), 1.0)?.value;
    rep.push(CheckRecord::close("shannon_W0", &[("nbar", 0.0), ("r", 1.0)], s_w0, -1.0 + ln2, tol));
    let s_q0 = renyi_entropy(&ps.husimi_of(c(0.0)), 1.0)?.value;
    rep.push(CheckRecord::close("shannon_Q0", &[("nbar", 0.0), ("r", 1.0)], s_q0, -1.0, tol));
    let s2 = renyi_entropy(&ps.wigner_of(c(0.0)), 2.0)?.value;
    rep.push(CheckRecord::close("collision_W0", &[("nbar", 0.0), ("r", 2.0)], s2, 0.0, tol));

    for &r in orders {
        let x = find_wq_crossing(r)?;
        rep.push(CheckRecord::close("wq_entropy_crossing", &[("r", r)], x, 0.75, 1e-10));
    }

    for &n in grid {
        let nb = c(n);
        let (w, q) = (ps.wigner_of(nb), ps.husimi_of(nb));
        let w_mirror = ps.wigner_of(c(1.0 - n));
        let mut prev: Option<(f64, f64)> = None;
        for &r in orders {
            let pr = [("nbar", n), ("r", r)];
            let s_w = renyi_entropy(&w, r)?.value;
            let s_q = renyi_entropy(&q, r)?.value;
            rep.push(CheckRecord::close("S_W_mirror_symmetry", &pr, s_w, renyi_entropy(&w_mirror, r)?.value, tol));
            for (name, z, s) in [("S_W_kernel_route", &w, s_w), ("S_Q_kernel_route", &q, s_q)] {
                if !s.is_infinite() {
                    rep.push(CheckRecord::close(name, &pr, renyi_entropy_kernel(z, r)?, s, tol));
                }
            }
            let ordering = if n < 0.75 {
                CheckRecord::new("S_W_vs_S_Q_ordering", &pr, s_w, s_q, s_w > s_q, 0.0)
            } else if n > 0.75 {
                CheckRecord::new("S_W_vs_S_Q_ordering", &pr, s_w, s_q, s_w < s_q, 0.0)
            } else {
                CheckRecord::close("S_W_vs_S_Q_ordering", &pr, s_w, s_q, tol)
            };
            rep.push(ordering);
            if let Some((pw, pq)) = prev {
                if w.body().re != 0.0 {
                    rep.push(CheckRecord::at_least("S_W_monotone_in_r", &pr, s_w, pw, tol));
                }
                if q.body().re != 0.0 {
                    rep.push(CheckRecord::at_least("S_Q_monotone_in_r", &pr, s_q, pq, tol));
                }
            }
            prev = Some((s_w, s_q));
        }
    }
    Ok(rep)
}

fn relation_record(name: &str, params: &[(&str, f64)], got: Result<Relation>, want: Relation) -> CheckRecord {
    let lhs = match &got {
        Ok(r) => r.to_string(),
        Err(e) => e.to_string(),
    };
    CheckRecord::new(
        name,
        params,
        CheckValue::Exact(lhs),
        CheckValue::Exact(want.to_string()),
        got.as_ref().ok() == Some(&want),
        0.0,
    )
}

fn chain_links<C: Coefficient>(
    rep: &mut VerificationReport,
    name: &str,
    chain: &[(f64, PhaseSpaceDistribution<C>)],
) -> Result<()> {
    let bodies: Vec<f64> = chain.iter().filter_map(|(_, z)| z.body().to_real()).collect();
    let family = default_family(&bodies);
    rep.push(CheckRecord::at_least("concave_family_size", &[], family.len() as f64, 27.0, 0.0));
    for link in chain.windows(2) {
        let (n1, z1) = &link[0];
        let (n2, z2) = &link[1];
        let got = majorizes(z1, z2, &family).map(|v| v.relation);
        rep.push(relation_record(name, &[("nbar_left", *n1), ("nbar_right", *n2)], got, Relation::MajorizedBy));
    }
    let (n_first, first) = &chain[0];
    let (n_last, last) = &chain[chain.len() - 1];
    let got = majorizes(first, last, &family).map(|v| v.relation);
    rep.push(relation_record(
        &format!("{name}_transitive"),
        &[("nbar_left", *n_first), ("nbar_right", *n_last)],
        got,
        Relation::MajorizedBy,
    ));
    Ok(())
}

fn majorization_checks(grid: &[f64], mode: Mode, tol: f64) -> Result<VerificationReport> {
    let ps = PhaseSpace::new();
    let mut rep = VerificationReport::default();
    match mode {
        Mode::Exact => {
            let r = |a: i64, b: i64| Poly::from_ratio(a, b);
            let w_chain: Vec<_> = [(1, 1), (4, 5), (1, 2), (1, 5), (0, 1)]
                .iter()
                .map(|&(a, b)| (a as f64 / b as f64, ps.wigner_of(r(a, b))))
                .collect();
            chain_links(&mut rep, "wigner_majorization_chain", &w_chain)?;
            let q_chain: Vec<_> = [(1, 1), (1, 2), (0, 1)]
                .iter()
                .map(|&(a, b)| (a as f64 / b as f64, ps.husimi_of(r(a, b))))
                .collect();
            chain_links(&mut rep, "husimi_majorization_chain", &q_chain)?;
        }
        Mode::Float => {
            let c = |x: f64| Complex64::new(x, 0.0);
            let w_chain: Vec<_> = [1.0, 0.8, 0.5, 0.2, 0.0].iter().map(|&n| (n, ps.wigner_of(c(n)))).collect();
            chain_links(&mut rep, "wigner_majorization_chain", &w_chain)?;
            let q_chain: Vec<_> = [1.0, 0.5, 0.0].iter().map(|&n| (n, ps.husimi_of(c(n)))).collect();
            chain_links(&mut rep, "husimi_majorization_chain", &q_chain)?;
        }
    }

    // concave-average oracle and the moment criterion along the grid
    for &n in grid {
        let nb = Complex64::new(n, 0.0);
        let family = default_family(&[0.5 - n, 1.0 - n]);
        for z in [ps.wigner_of(nb), ps.husimi_of(nb)] {
            let mut worst: f64 = 0.0;
            for f in &family {
                let a = concave_average(f, &z)?;
                let k = concave_average_kernel(f, &z)?;
                worst = worst.max((a - k).norm());
            }
            rep.push(CheckRecord::close(
                format!("concave_average_oracle_{}", z.kind()),
                &[("nbar", n)],
                worst,
                0.0,
                tol,
            ));
        }
    }
    for pair in grid.windows(2) {
        let (n1, n2) = (pair[0], pair[1]);
        let (q1, q2) = (ps.husimi_of(Complex64::new(n1, 0.0)), ps.husimi_of(Complex64::new(n2, 0.0)));
        let family = default_family(&[q1.body().re, q2.body().re]);
        // larger ⟨n⟩ means smaller body, hence smaller −det γ
        let by_moments = -covariance(&q2).det().re <= -covariance(&q1).det().re;
        let got = majorizes(&q2, &q1, &family).map(|v| v.relation);
        let want = if by_moments { Relation::MajorizedBy } else { Relation::Majorizes };
        rep.push(relation_record("husimi_majorization_vs_moments", &[("nbar", n1)], got, want));
    }
    Ok(rep)
}

fn thermal_checks(tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::default();
    let at_zero = ThermalParams::from_ratio(0.0, 1.0)?.nbar;
    rep.push(CheckRecord::close("fermi_dirac_symmetric_point", &[], at_zero, 0.5, tol));
    let ratios: Vec<f64> = (0..=400).map(|k| -20.0 + 0.1 * k as f64).collect();
    let mut monotone = true;
    let mut prev = f64::INFINITY;
    for &x in &ratios {
        let n = ThermalParams::from_ratio(x, 1.0)?.nbar;
        monotone &= n < prev;
        prev = n;
    }
    rep.push(CheckRecord::new(
        "fermi_dirac_decreasing",
        &[],
        CheckValue::Exact(format!("{} points on [-20, 20]", ratios.len())),
        CheckValue::Exact("strictly decreasing".into()),
        monotone,
        0.0,
    ));
    let plus = ThermalParams::from_temperature(0.0, 1.0)?.nbar;
    let minus = ThermalParams::from_temperature(-0.0, 1.0)?.nbar;
    rep.push(CheckRecord::close("fermi_dirac_zero_temperature_plus", &[], plus, 0.0, 0.0));
    rep.push(CheckRecord::close("fermi_dirac_zero_temperature_minus", &[], minus, 1.0, 0.0));
    Ok(rep)
}
