//! Evaluation of one parameter point per scenario.

use crate::classification::{classify, log_eta_ladder, DynamoLabel, GrowthCurve};
use crate::error::{DynamoError, Result};
use crate::exec::{self, Execution};
use crate::flows::{solenoidal_residual_filament, stretch_rate_filament, tube_stretch_exponent, StretchState};
use crate::geometry::{CurveProfile, Interval};
use crate::induction::{
    chicone_latushkin_gamma, diffusive_filament_solve, euclidean_fast_dynamo, heliotron_nondynamo_torsion,
    heliotron_system_residual, integrate_field_ode, nondynamo_axial_flow, radial_mode_solve, CurvaturePower,
    FastDynamoParams, HeliotronState,
};
use crate::tube_metric::{
    default_oracle_step, metric_factor, riemann_components_stated, riemann_oracle_tensor, riemann_thin_tube,
    symmetry_violation, R, S, THETA,
};

use super::config::{ParamPoint, Scenario};

/// η values used to build each row's growth curve for classification.
pub fn classification_ladder() -> Vec<f64> {
    log_eta_ladder(1e-1, 1e-6, 11)
}

/// Gap above which stated and oracle radial exponents are flagged.
pub const EXPONENT_GAP_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub gamma: Option<f64>,
    pub gamma_units: &'static str,
    pub class: Option<DynamoLabel>,
    pub sources: Vec<&'static str>,
    /// one cell per entry of [`output_columns`]
    pub outputs: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub index: usize,
    pub params: ParamPoint,
    pub outcome: std::result::Result<Evaluation, String>,
}

impl Row {
    pub fn status(&self) -> String {
        match &self.outcome {
            Ok(_) => "ok".to_string(),
            Err(reason) => format!("error:{}", reason.replace([',', '\n', '\r'], ";")),
        }
    }
}

pub fn output_columns(scenario: Scenario) -> &'static [&'static str] {
    match scenario {
        Scenario::DiffusiveFilament => &[
            "b_s_end",
            "b_s_first_power_end",
            "b_s_ode_end",
            "kappa_end",
            "curvature_energy",
            "total_torsion",
            "v_s_constraint",
        ],
        Scenario::EuclideanFast => &[
            "b_s_end",
            "b_n_general_end",
            "b_n_weak_end",
            "eps_m_start",
            "eps_m_end",
            "fitted_energy_rate",
            "energy_doubling_time",
        ],
        Scenario::Heliotron => &[
            "k_factor",
            "beta",
            "eta_derived",
            "toroidal_residual",
            "poloidal_residual",
            "imaginary_eq_residual_re",
            "imaginary_eq_residual_im",
            "nondynamo_u_s",
            "nondynamo_torsion",
        ],
        Scenario::RadialModes => &[
            "oracle_n_plus_re",
            "oracle_n_plus_im",
            "oracle_n_minus_re",
            "oracle_n_minus_im",
            "oracle_residual",
            "stated_n_plus",
            "stated_n_minus",
            "stated_gamma_plus",
            "stated_gamma_minus",
            "gap_n_plus",
            "gap_n_minus",
            "exponent_verdict",
        ],
        Scenario::ChiconeLatushkin => &["growth_rate_imag", "oscillatory"],
        Scenario::CurvatureReport => &[
            "k_factor",
            "stated_chain_1_r_rsrs",
            "stated_chain_1_r_thetas_thetas",
            "stated_chain_2_r_rsrs",
            "stated_chain_2_r_thetas_thetas",
            "stated_chain_3_r_rsrs",
            "thin_tube_r_rsrs",
            "oracle_r_rsrs",
            "oracle_r_thetas_thetas",
            "oracle_symmetry_violation",
        ],
        Scenario::StretchAnalysis => &[
            "filament_stretch_rate",
            "filament_solenoidal_residual",
            "line_element_final",
        ],
    }
}

fn get(point: &ParamPoint, key: &str) -> f64 {
    point
        .iter()
        .find(|(k, _)| *k == key)
        .map(|p| p.1)
        .unwrap_or(f64::NAN)
}

fn integer(point: &ParamPoint, key: &'static str) -> Result<i64> {
    let v = get(point, key);
    if v.fract() != 0.0 || v.abs() > 1e15 {
        return Err(DynamoError::InvalidParameter {
            name: key,
            value: v,
            reason: "must be an integer",
        });
    }
    Ok(v as i64)
}

fn class_of(curve: Result<GrowthCurve>, tol: f64) -> Result<DynamoLabel> {
    Ok(classify(&curve?, tol)?.label)
}

/// Classifies an η-independent growth rate.
fn constant_class(gamma: f64, tol: f64) -> Result<DynamoLabel> {
    class_of(GrowthCurve::from_fn(&classification_ladder(), |_| gamma, "constant"), tol)
}

pub fn evaluate(scenario: Scenario, point: &ParamPoint, tol: f64) -> Result<Evaluation> {
    let p = |k: &str| get(point, k);
    match scenario {
        Scenario::DiffusiveFilament => {
            let (k0, ka, kw, t0, ta) = (p("kappa0"), p("kappa_amp"), p("kappa_wavenumber"), p("tau0"), p("tau_amp"));
            let domain = Interval::new(0.0, p("length"))?;
            let profile = CurveProfile::closed_form(
                move |s: f64| k0 + ka * (kw * s).sin(),
                move |s: f64| t0 + ta * (kw * s).cos(),
                domain,
            );
            let sol = diffusive_filament_solve(p("b0"), &profile, p("eta"), domain)?;
            let end = domain.max();
            let energy = sol.total_curvature_energy();
            let length = domain.length();
            let class = class_of(
                GrowthCurve::from_fn(&classification_ladder(), |eta| -eta * energy / length, "diffusive_filament"),
                tol,
            )?;
            Ok(Evaluation {
                gamma: Some(sol.mean_decay_rate()),
                gamma_units: "1/cm",
                class: Some(class),
                sources: vec!["closed_form", "first_power_ode", "rk4_oracle"],
                outputs: vec![
                    sol.b_s(end).into(),
                    sol.b_s_first_power(end).into(),
                    integrate_field_ode(&profile, sol.eta, sol.b0, 0.0, end, CurvaturePower::Second).into(),
                    sol.kappa(end).into(),
                    energy.into(),
                    sol.total_torsion().into(),
                    sol.v_s_constraint.into(),
                ],
            })
        }
        Scenario::EuclideanFast => {
            let samples = integer(point, "samples")?;
            let weak = integer(point, "weak_torsion")?;
            let params = FastDynamoParams {
                b0: p("b0"),
                tau0: p("tau0"),
                v0: p("v0"),
                c1: p("c1"),
                a: p("a"),
                s: p("s"),
                weak_torsion: weak != 0,
            };
            let series = euclidean_fast_dynamo(params, Interval::new(0.0, p("t_end"))?, samples.max(0) as usize)?;
            let (first, last) = (series.samples[0], series.samples[series.samples.len() - 1]);
            Ok(Evaluation {
                gamma: Some(series.gamma),
                gamma_units: "1/s",
                class: Some(constant_class(series.gamma, tol)?),
                sources: vec!["closed_form", "least_squares_fit"],
                outputs: vec![
                    last.field.b_s.into(),
                    last.b_n_general.into(),
                    last.b_n_weak.unwrap_or(f64::NAN).into(),
                    first.eps_m().into(),
                    last.eps_m().into(),
                    series.fitted_energy_rate().into(),
                    series.energy_doubling_time().unwrap_or(f64::NAN).into(),
                ],
            })
        }
        Scenario::Heliotron => {
            let state = HeliotronState::new(
                p("b_s0"),
                p("b_theta0"),
                p("u_s"),
                p("u_theta"),
                p("gamma"),
                p("tau0"),
                p("u_max"),
                p("length"),
                p("re_m"),
            )?;
            let (theta, r) = (p("theta"), p("r"));
            let k = metric_factor(r, theta, p("kappa"));
            let res = heliotron_system_residual(&state, theta, r, k)?;
            let torsion = heliotron_nondynamo_torsion(p("a"), p("theta_r"), integer(point, "m")?)?;
            Ok(Evaluation {
                gamma: Some(state.gamma),
                gamma_units: "U_max/L",
                class: Some(constant_class(state.gamma, tol)?),
                sources: vec!["residual", "dimensional_warning"],
                outputs: vec![
                    k.into(),
                    res.beta.into(),
                    state.eta().into(),
                    res.toroidal.re.into(),
                    res.poloidal.re.into(),
                    res.poloidal_imaginary.re.into(),
                    res.poloidal_imaginary.im.into(),
                    nondynamo_axial_flow(state.u_theta, state.tau0, r, k).into(),
                    torsion.into(),
                ],
            })
        }
        Scenario::RadialModes => {
            let rep = radial_mode_solve(p("eta"), p("gamma"))?;
            let n_plus = rep.stated_exponents.n_plus.re;
            let class = class_of(
                GrowthCurve::from_fn(&classification_ladder(), |eta| 4.0 * (n_plus - 2.0) * eta, "radial_modes"),
                tol,
            )?;
            let (gap_p, gap_m) = rep.exponent_gaps();
            let verdict = if gap_p.max(gap_m) > EXPONENT_GAP_THRESHOLD { "inconsistent" } else { "consistent" };
            Ok(Evaluation {
                gamma: Some(rep.gamma),
                gamma_units: "1/s",
                class: Some(class),
                sources: rep.results().iter().map(|r| r.source.tag()).collect(),
                outputs: vec![
                    rep.oracle.n_plus.re.into(),
                    rep.oracle.n_plus.im.into(),
                    rep.oracle.n_minus.re.into(),
                    rep.oracle.n_minus.im.into(),
                    rep.oracle_residual.into(),
                    n_plus.into(),
                    rep.stated_exponents.n_minus.re.into(),
                    rep.stated_growth.gamma_plus.into(),
                    rep.stated_growth.gamma_minus.into(),
                    gap_p.into(),
                    gap_m.into(),
                    verdict.into(),
                ],
            })
        }
        Scenario::ChiconeLatushkin => {
            let kappa = p("kappa");
            let rate = chicone_latushkin_gamma(p("eta"), kappa);
            let ladder = classification_ladder();
            let oscillatory = ladder.iter().any(|&e| chicone_latushkin_gamma(e, kappa).oscillatory);
            let curve = GrowthCurve::from_fn(&ladder, |e| chicone_latushkin_gamma(e, kappa).real, "chicone_latushkin")
                .map(|c| c.with_oscillatory(oscillatory));
            Ok(Evaluation {
                gamma: Some(rate.real),
                gamma_units: "1/s",
                class: Some(class_of(curve, tol)?),
                sources: vec!["closed_form"],
                outputs: vec![rate.imag.into(), if rate.oscillatory { "true" } else { "false" }.into()],
            })
        }
        Scenario::CurvatureReport => {
            let (kappa, r, theta) = (p("kappa"), p("r"), p("theta"));
            let h = if p("step") > 0.0 { p("step") } else { default_oracle_step(r) };
            let chains = riemann_components_stated(r, theta, kappa)?;
            let tensor = riemann_oracle_tensor(kappa, r, theta, h)?;
            let opt = |v: Option<f64>| Cell::Num(v.unwrap_or(f64::NAN));
            let mut sources: Vec<&'static str> = chains.iter().map(|c| c.source.tag()).collect();
            sources.extend(["thin_tube_limit", "oracle"]);
            Ok(Evaluation {
                gamma: None,
                gamma_units: "none",
                class: None,
                sources,
                outputs: vec![
                    metric_factor(r, theta, kappa).into(),
                    opt(chains[0].r_rsrs),
                    opt(chains[0].r_thetas_thetas),
                    opt(chains[1].r_rsrs),
                    opt(chains[1].r_thetas_thetas),
                    opt(chains[2].r_rsrs),
                    riemann_thin_tube(r)?.into(),
                    tensor[R][S][R][S].into(),
                    tensor[THETA][S][THETA][S].into(),
                    symmetry_violation(&tensor).into(),
                ],
            })
        }
        Scenario::StretchAnalysis => {
            let gamma = tube_stretch_exponent(p("v_theta"), p("v0"), p("tau0"), p("a"))?;
            let state = StretchState::after(p("l0"), gamma, p("duration"))?;
            let (kappa, v_n, dvs) = (p("kappa"), p("v_n"), p("v_s_prime"));
            Ok(Evaluation {
                gamma: Some(gamma),
                gamma_units: "1/s",
                class: Some(constant_class(gamma, tol)?),
                sources: vec!["closed_form"],
                outputs: vec![
                    stretch_rate_filament(kappa, v_n, dvs).into(),
                    solenoidal_residual_filament(kappa, v_n, dvs).into(),
                    state.l.into(),
                ],
            })
        }
    }
}

/// Evaluates every point; rows come back in point order.
pub fn run_points(scenario: Scenario, points: &[ParamPoint], tol: f64, exec: Execution) -> Vec<Row> {
    exec::map_indexed(points.len(), exec, |i| Row {
        index: i,
        params: points[i].clone(),
        outcome: evaluate(scenario, &points[i], tol).map_err(|e| e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::ScenarioConfig;

    fn rows(text: &str) -> Vec<Row> {
        let cfg = ScenarioConfig::parse(text).unwrap();
        run_points(cfg.scenario, &cfg.points(), 1e-9, Execution::Sequential)
    }

    fn num(c: &Cell) -> f64 {
        match c {
            Cell::Num(v) => *v,
            Cell::Text(t) => panic!("text cell {t}"),
        }
    }

    #[test]
    fn every_scenario_fills_its_columns() {
        for s in Scenario::ALL {
            let r = rows(&format!("[{s}]\n"));
            let ev = r[0].outcome.as_ref().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(ev.outputs.len(), output_columns(s).len(), "{s}");
        }
    }

    #[test]
    fn radial_sweep_keeps_oracle_roots() {
        for row in rows("[radial_modes]\nsweep = eta 1e-6 1e-1 6\nsweep_spacing = log\n") {
            let ev = row.outcome.unwrap();
            assert_eq!(num(&ev.outputs[0]), -1.0);
            assert_eq!(num(&ev.outputs[2]), -2.0);
            assert_eq!(num(&ev.outputs[5]), 2.0);
            assert_eq!(num(&ev.outputs[6]), -5.0);
            assert_eq!(ev.outputs[11], Cell::from("inconsistent"));
            assert_eq!(ev.class, Some(DynamoLabel::Marginal));
        }
    }

    #[test]
    fn chicone_latushkin_diffusionless_sweep() {
        for row in rows("[chicone_latushkin]\neta = 0\nsweep = kappa -2 0 9\n") {
            let kappa = row.params[1].1;
            let ev = row.outcome.unwrap();
            assert!((ev.gamma.unwrap() - 0.5 * (-4.0 * kappa).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn frozen_filament_keeps_its_field() {
        let r = rows("[diffusive_filament]\neta = 0\nb0 = 3\n");
        assert_eq!(r.len(), 1);
        let ev = r[0].outcome.as_ref().unwrap();
        assert_eq!(num(&ev.outputs[0]), 3.0);
    }

    #[test]
    fn numeric_failures_mark_the_cell() {
        let r = rows("[radial_modes]\nsweep = eta -1 1 3\n");
        assert!(r[0].status().starts_with("error:"));
        assert!(!r[0].status().contains(','));
        assert!(r[1].status().starts_with("error:"));
        assert_eq!(r[2].status(), "ok");
    }
}
