//! Discrepancy report: stated closed forms next to independent oracles.

use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::{CurveProfile, Interval};
use crate::grid::{GridAxis, TubeGrid, TubePoint};
use crate::induction::{
    diffusive_filament_solve, heliotron_nondynamo_torsion, integrate_field_ode, marginal_axial_field,
    radial_mode_solve, radial_quadratic_roots, zeldovich_rate_with, CurvaturePower, FieldSample, VolumeElement,
    STATED_MARGINAL_EXPONENTS,
};
use crate::exec::Execution;
use crate::tube_metric::{
    default_oracle_step, riemann_components_stated, riemann_oracle, riemann_thin_tube, CurvatureSource,
};

use super::config::{ParamPoint, Scenario, ScenarioConfig};
use super::scenario::EXPONENT_GAP_THRESHOLD;

/// Absolute accuracy of the finite-difference curvature oracle.
pub const CURVATURE_ORACLE_TOL: f64 = 1e-5;
/// Accuracy of the RK4 field oracle on the filament case.
pub const FILAMENT_ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    DimensionalWarning,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::DimensionalWarning => "dimensional_warning",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyEntry {
    pub equation: &'static str,
    pub quantity: &'static str,
    pub point: String,
    pub stated_value: f64,
    pub oracle_value: Option<f64>,
    pub abs_gap: Option<f64>,
    pub rel_gap: Option<f64>,
    pub verdict: Verdict,
    pub note: &'static str,
}

impl DiscrepancyEntry {
    /// Consistent iff |gap| ≤ max(tol, entry_tol) · max(1, |oracle|).
    #[allow(clippy::too_many_arguments)]
    fn compared(
        equation: &'static str,
        quantity: &'static str,
        point: String,
        stated: f64,
        oracle: f64,
        gap: f64,
        tol: f64,
        entry_tol: f64,
        note: &'static str,
    ) -> Self {
        let allowed = tol.max(entry_tol) * oracle.abs().max(1.0);
        let verdict = if gap <= allowed { Verdict::Consistent } else { Verdict::Inconsistent };
        let rel_gap = if oracle != 0.0 {
            gap / oracle.abs()
        } else if gap == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        DiscrepancyEntry {
            equation,
            quantity,
            point,
            stated_value: stated,
            oracle_value: Some(oracle),
            abs_gap: Some(gap),
            rel_gap: Some(rel_gap),
            verdict,
            note,
        }
    }

    fn dimensional(equation: &'static str, quantity: &'static str, point: String, stated: f64, note: &'static str) -> Self {
        DiscrepancyEntry {
            equation,
            quantity,
            point,
            stated_value: stated,
            oracle_value: None,
            abs_gap: None,
            rel_gap: None,
            verdict: Verdict::DimensionalWarning,
            note,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscrepancyReport {
    pub entries: Vec<DiscrepancyEntry>,
    /// points that could not be evaluated, with the reason
    pub failures: Vec<String>,
}

impl DiscrepancyReport {
    pub fn find(&self, equation: &str) -> impl Iterator<Item = &DiscrepancyEntry> {
        let equation = equation.to_string();
        self.entries.iter().filter(move |e| e.equation == equation)
    }
}

pub const EQUATION_IDS: &[&str] = &[
    "curvature_chain_1",
    "curvature_chain_2",
    "curvature_chain_3",
    "thin_tube_limit",
    "radial_exponent_plus",
    "radial_exponent_minus",
    "marginal_exponent_plus",
    "marginal_exponent_minus",
    "radial_growth_plus",
    "radial_growth_minus",
    "filament_closed_form",
    "filament_first_power",
    "zeldovich_marginal",
    "filament_axial_flow_constraint",
    "torsion_quantization",
];

fn point_label(point: &ParamPoint) -> String {
    point
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn value(point: &ParamPoint, key: &str) -> f64 {
    point.iter().find(|(k, _)| *k == key).map(|p| p.1).unwrap_or(f64::NAN)
}

fn default_point(scenario: Scenario) -> ParamPoint {
    scenario.schema().to_vec()
}

fn chain_id(source: CurvatureSource) -> &'static str {
    match source {
        CurvatureSource::StatedChain1 => "curvature_chain_1",
        CurvatureSource::StatedChain2 => "curvature_chain_2",
        CurvatureSource::StatedChain3 => "curvature_chain_3",
        CurvatureSource::ThinTubeLimit => "thin_tube_limit",
        CurvatureSource::Oracle => "oracle",
    }
}

fn curvature_entries(point: &ParamPoint, tol: f64, out: &mut Vec<DiscrepancyEntry>) -> Result<()> {
    let (kappa, r, theta) = (value(point, "kappa"), value(point, "r"), value(point, "theta"));
    let step = value(point, "step");
    let h = if step > 0.0 { step } else { default_oracle_step(r) };
    let oracle = riemann_oracle(kappa, r, theta, h)?;
    let (o_rs, o_ts) = (oracle.r_rsrs.unwrap_or(f64::NAN), oracle.r_thetas_thetas.unwrap_or(f64::NAN));
    let label = point_label(point);
    let note = "finite-difference Riemann tensor of diag(1, r², K²)";
    for c in riemann_components_stated(r, theta, kappa)? {
        let id = chain_id(c.source);
        if let Some(v) = c.r_rsrs {
            out.push(DiscrepancyEntry::compared(id, "R_rsrs", label.clone(), v, o_rs, (v - o_rs).abs(), tol, CURVATURE_ORACLE_TOL, note));
        }
        if let Some(v) = c.r_thetas_thetas {
            out.push(DiscrepancyEntry::compared(
                id,
                "R_thetas_thetas",
                label.clone(),
                v,
                o_ts,
                (v - o_ts).abs(),
                tol,
                CURVATURE_ORACLE_TOL,
                note,
            ));
        }
    }
    let thin = riemann_thin_tube(r)?;
    out.push(DiscrepancyEntry::compared(
        "thin_tube_limit",
        "R_rsrs",
        label,
        thin,
        o_rs,
        (thin - o_rs).abs(),
        tol,
        CURVATURE_ORACLE_TOL,
        note,
    ));
    Ok(())
}

fn radial_entries(point: &ParamPoint, tol: f64, out: &mut Vec<DiscrepancyEntry>) -> Result<()> {
    let rep = radial_mode_solve(value(point, "eta"), value(point, "gamma"))?;
    let label = point_label(point);
    let note = "oracle roots of n^2 + 3n + 2 - gamma/eta";
    let (gp, gm) = rep.exponent_gaps();
    out.push(DiscrepancyEntry::compared(
        "radial_exponent_plus",
        "n_plus",
        label.clone(),
        rep.stated_exponents.n_plus.re,
        rep.oracle.n_plus.re,
        gp,
        tol,
        EXPONENT_GAP_THRESHOLD,
        note,
    ));
    out.push(DiscrepancyEntry::compared(
        "radial_exponent_minus",
        "n_minus",
        label.clone(),
        rep.stated_exponents.n_minus.re,
        rep.oracle.n_minus.re,
        gm,
        tol,
        EXPONENT_GAP_THRESHOLD,
        note,
    ));
    let growth_note = "stated growth rate at the stated exponent against the input gamma";
    for (id, q, stated) in [
        ("radial_growth_plus", "gamma_plus", rep.stated_growth.gamma_plus),
        ("radial_growth_minus", "gamma_minus", rep.stated_growth.gamma_minus),
    ] {
        out.push(DiscrepancyEntry::compared(
            id,
            q,
            label.clone(),
            stated,
            rep.gamma,
            (stated - rep.gamma).abs(),
            tol,
            EXPONENT_GAP_THRESHOLD * rep.eta,
            growth_note,
        ));
    }
    Ok(())
}

fn marginal_entries(tol: f64, out: &mut Vec<DiscrepancyEntry>) {
    let (mp, mm) = radial_quadratic_roots(0.0);
    let (sp, sm) = STATED_MARGINAL_EXPONENTS;
    let marginal_note = "marginal profiles r^n against the oracle roots at gamma = 0";
    out.push(DiscrepancyEntry::compared(
        "marginal_exponent_plus",
        "n_plus",
        "gamma=0".into(),
        sp,
        mp.re,
        (mp - sp).norm(),
        tol,
        EXPONENT_GAP_THRESHOLD,
        marginal_note,
    ));
    out.push(DiscrepancyEntry::compared(
        "marginal_exponent_minus",
        "n_minus",
        "gamma=0".into(),
        sm,
        mm.re,
        (mm - sm).norm(),
        tol,
        EXPONENT_GAP_THRESHOLD,
        marginal_note,
    ));
}

/// κ(s) = 1 + 0.1 sin s, η = 0.05, L = 20, B0 = 1.
pub fn filament_default_case() -> (CurveProfile, f64, f64, Interval) {
    let domain = Interval::new(0.0, 20.0).expect("valid interval");
    let profile = CurveProfile::closed_form(|s: f64| 1.0 + 0.1 * s.sin(), |_| 0.5, domain);
    (profile, 0.05, 1.0, domain)
}

fn filament_entries(tol: f64, out: &mut Vec<DiscrepancyEntry>) -> Result<()> {
    let (profile, eta, b0, domain) = filament_default_case();
    let sol = diffusive_filament_solve(b0, &profile, eta, domain)?;
    let end = domain.max();
    let oracle = integrate_field_ode(&profile, eta, b0, domain.min(), end, CurvaturePower::Second);
    let label = "kappa=1+0.1sin(s);eta=0.05;L=20;b0=1".to_string();
    let closed = sol.b_s(end);
    out.push(DiscrepancyEntry::compared(
        "filament_closed_form",
        "B_s(L)",
        label.clone(),
        closed,
        oracle,
        (closed - oracle).abs(),
        tol,
        FILAMENT_ORACLE_TOL,
        "RK4 of dB/ds = -eta kappa^2 B",
    ));
    let first = sol.b_s_first_power(end);
    out.push(DiscrepancyEntry::compared(
        "filament_first_power",
        "B_s(L)",
        label,
        first,
        oracle,
        (first - oracle).abs(),
        tol,
        FILAMENT_ORACLE_TOL,
        "first-power equation dB/ds = -eta kappa B integrated literally",
    ));
    Ok(())
}

fn zeldovich_entry(tol: f64, exec: Execution, out: &mut Vec<DiscrepancyEntry>) -> Result<()> {
    let grid = TubeGrid::new(
        GridAxis::cell_centres(0.0, 1.0, 16)?,
        GridAxis::cell_centres(0.0, 2.0 * PI, 16)?,
        GridAxis::cell_centres(0.0, 1.0, 16)?,
        0.2,
    )?;
    let tau0 = 0.7;
    let fields = |p: TubePoint| {
        let b_theta = 1.0 + 0.5 * p.r * p.theta.cos();
        FieldSample {
            b_s: marginal_axial_field(b_theta, tau0, p.r),
            b_theta,
            v_s: 0.3 + p.s,
            v_theta: 1.0 + p.r,
        }
    };
    let rate = zeldovich_rate_with(fields, tau0, &grid, VolumeElement::TubeMetric, exec)?;
    out.push(DiscrepancyEntry::compared(
        "zeldovich_marginal",
        "4pi d(eps_M)/dt",
        "grid=16^3;tau0=0.7;kappa=0.2".into(),
        rate.d_eps_dt,
        0.0,
        rate.d_eps_dt.abs(),
        tol,
        1e-12,
        "B_s = B_theta / (tau0 r) pointwise",
    ));
    Ok(())
}

fn dimensional_entries(out: &mut Vec<DiscrepancyEntry>) -> Result<()> {
    let (profile, eta, b0, domain) = filament_default_case();
    let sol = diffusive_filament_solve(b0, &profile, eta, domain)?;
    out.push(DiscrepancyEntry::dimensional(
        "filament_axial_flow_constraint",
        "v_s",
        format!("tau0={}", sol.tau0),
        sol.v_s_constraint,
        "v_s = -tau0^2 sets a velocity equal to an inverse length squared",
    ));
    let torsion = heliotron_nondynamo_torsion(1.0, 1.0, 0)?;
    out.push(DiscrepancyEntry::dimensional(
        "torsion_quantization",
        "tau0",
        "a=1;theta_R=1;m=0".into(),
        torsion,
        "inverse length set equal to 2pi/a times a pure number",
    ));
    Ok(())
}

/// Builds the full report. Curvature points come from a `curvature_report`
/// config and radial points from a `radial_modes` config; the other section
/// uses its schema defaults.
pub fn build_report(cfg: &ScenarioConfig, tol: f64, exec: Execution) -> DiscrepancyReport {
    let mut report = DiscrepancyReport::default();
    let curvature_points = if cfg.scenario == Scenario::CurvatureReport {
        cfg.points()
    } else {
        vec![default_point(Scenario::CurvatureReport)]
    };
    let radial_points = if cfg.scenario == Scenario::RadialModes {
        cfg.points()
    } else {
        vec![default_point(Scenario::RadialModes)]
    };
    let record = |res: Result<()>, what: String, failures: &mut Vec<String>| {
        if let Err(e) = res {
            failures.push(format!("{what}: {e}"));
        }
    };
    for p in &curvature_points {
        let res = curvature_entries(p, tol, &mut report.entries);
        record(res, format!("curvature {}", point_label(p)), &mut report.failures);
    }
    for p in &radial_points {
        let res = radial_entries(p, tol, &mut report.entries);
        record(res, format!("radial {}", point_label(p)), &mut report.failures);
    }
    marginal_entries(tol, &mut report.entries);
    let res = filament_entries(tol, &mut report.entries);
    record(res, "filament".into(), &mut report.failures);
    let res = zeldovich_entry(tol, exec, &mut report.entries);
    record(res, "zeldovich".into(), &mut report.failures);
    let res = dimensional_entries(&mut report.entries);
    record(res, "dimensional".into(), &mut report.failures);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(text: &str) -> DiscrepancyReport {
        build_report(&ScenarioConfig::parse(text).unwrap(), 1e-9, Execution::Sequential)
    }

    #[test]
    fn default_report_covers_every_id() {
        let rep = report("[curvature_report]\n");
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.entries.len() >= 5);
        for id in EQUATION_IDS {
            assert!(rep.find(id).next().is_some(), "missing {id}");
        }
    }

    #[test]
    fn verdicts() {
        let rep = report("[radial_modes]\n");
        let plus = rep.find("radial_exponent_plus").next().unwrap();
        assert_eq!(plus.verdict, Verdict::Inconsistent);
        assert_eq!(plus.abs_gap, Some(3.0));
        assert_eq!(rep.find("zeldovich_marginal").next().unwrap().verdict, Verdict::Consistent);
        assert_eq!(rep.find("filament_closed_form").next().unwrap().verdict, Verdict::Consistent);
        assert_eq!(rep.find("filament_first_power").next().unwrap().verdict, Verdict::Inconsistent);
        assert_eq!(rep.find("torsion_quantization").next().unwrap().verdict, Verdict::DimensionalWarning);
        assert_eq!(rep.find("radial_growth_plus").next().unwrap().verdict, Verdict::Consistent);
    }

    #[test]
    fn bad_points_are_recorded() {
        let rep = report("[radial_modes]\neta = 0\n");
        assert_eq!(rep.failures.len(), 1);
        assert!(rep.find("radial_exponent_plus").next().is_none());
    }
}
