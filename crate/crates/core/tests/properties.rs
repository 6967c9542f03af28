#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use proptest::prelude::*;

use tube_dynamo::classification::{classify, log_eta_ladder, DynamoLabel, GrowthCurve};
use tube_dynamo::cli::{build_report, run_points, Scenario, ScenarioConfig};
use tube_dynamo::exec::Execution;
use tube_dynamo::flows::{
    beltrami_residual_with, binormal_flow_gamma, poloidal_vorticity, solenoidal_residual_filament,
    stretch_factor, stretch_rate_filament, vorticity_components, TubeVectorField,
};
use tube_dynamo::geometry::{evolve_frame, reconstruct_curve, CurveProfile, FrenetFrame, Interval, Vec3};
use tube_dynamo::grid::{GridAxis, TubeGrid, TubePoint};
use tube_dynamo::induction::{
    chicone_latushkin_gamma, euclidean_fast_dynamo, marginal_axial_field, nonstretching_filament_rate,
    radial_mode_solve, radial_quadratic_residual, radial_quadratic_roots, stated_growth_rates,
    zeldovich_rate_with, FastDynamoParams, FieldSample, VolumeElement,
};
use tube_dynamo::tube_metric::{
    basis_transform, default_oracle_step, metric_factor, riemann_oracle_tensor, riemann_tensor_fd,
    symmetry_violation,
};

fn ladder() -> Vec<f64> {
    log_eta_ladder(1e-1, 1e-6, 11)
}

/// Real roots of n² + 3n + (2 − ratio) located by a sign-change scan and bisection.
fn scanned_roots(ratio: f64) -> Vec<f64> {
    let p = |n: f64| n * n + 3.0 * n + 2.0 - ratio;
    let bound = 3.0 + (2.0 - ratio).abs().sqrt() + 1.0;
    let steps = 4000;
    let mut roots = Vec::new();
    let h = 2.0 * bound / steps as f64;
    for i in 0..steps {
        let (mut a, mut b) = (-bound + i as f64 * h, -bound + (i + 1) as f64 * h);
        if p(a) == 0.0 {
            roots.push(a);
            continue;
        }
        if p(a) * p(b) < 0.0 {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if p(a) * p(m) <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

/// J_n(x) from its power series; adequate for |x| ≲ 10.
fn bessel_j(n: u32, x: f64) -> f64 {
    let mut term = (0.5 * x).powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    for k in 1..60 {
        term *= -(0.25 * x * x) / (k as f64 * (k + n) as f64);
        sum += term;
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stretching_then_unstretching_restores_length(
        a in -2.0..2.0f64, b in -2.0..2.0f64, t1 in 0.1..5.0f64, l0 in 0.01..100.0f64,
    ) {
        let g = |t: f64| a + b * t.sin();
        let l1 = stretch_factor(g, 0.0, t1, l0).unwrap();
        let back = stretch_factor(|t| -g(t), 0.0, t1, l1).unwrap();
        prop_assert!(((back - l0) / l0).abs() <= 1e-12);
    }

    #[test]
    fn binormal_gamma_sign_rule(tau0 in -5.0..5.0f64, v0 in -5.0..5.0f64) {
        let positive = binormal_flow_gamma(tau0, v0) > 0.0;
        let same_sign = tau0 != 0.0 && v0 != 0.0 && tau0.signum() == v0.signum();
        prop_assert_eq!(positive, same_sign);
    }

    #[test]
    fn incompressible_filament_flow_does_not_stretch(kappa in -10.0..10.0f64, v_n in -10.0..10.0f64) {
        let v_s_prime = kappa * v_n;
        prop_assert_eq!(solenoidal_residual_filament(kappa, v_n, v_s_prime), 0.0);
        prop_assert_eq!(stretch_rate_filament(kappa, v_n, v_s_prime), 0.0);
    }

    #[test]
    fn poloidal_vorticity_recovers_omega0(omega0 in -10.0..10.0f64, r in 0.01..2.0f64, theta in 0.0..6.3f64) {
        let w = vorticity_components(0.5, r, theta, 1.0, 0.0, omega0).unwrap();
        // v_s = −ω₀ r is linear in r, so ∂_r v_s = −ω₀
        prop_assert_eq!(w.axial_flow, -omega0 * r);
        prop_assert_eq!(poloidal_vorticity(-omega0), omega0);
        prop_assert_eq!(w.omega_theta, omega0);
    }

    #[test]
    fn nonstretching_rate_is_exactly_zero(b_s in prop::num::f64::NORMAL, v_s in prop::num::f64::NORMAL) {
        prop_assert_eq!(nonstretching_filament_rate(b_s, v_s).d_eps_dt, 0.0);
    }

    #[test]
    fn labels_are_scale_equivariant(
        g0 in -1e-2..1e-2f64, g1 in -10.0..10.0f64, g2 in -50.0..50.0f64, c in 1e-3..1e3f64,
    ) {
        let tol = 1e-9;
        let curve = GrowthCurve::from_fn(&ladder(), |e| g0 + g1 * e + g2 * e * e, "poly").unwrap();
        let base = classify(&curve, tol).unwrap().label;
        let scaled = classify(&curve.scaled(c), tol * c).unwrap().label;
        match base {
            DynamoLabel::Fast => prop_assert_ne!(scaled, DynamoLabel::Decaying),
            DynamoLabel::Decaying => prop_assert_ne!(scaled, DynamoLabel::Fast),
            DynamoLabel::Marginal => prop_assert_eq!(scaled, DynamoLabel::Marginal),
            DynamoLabel::Slow => {}
        }
        prop_assert_eq!(classify(&curve, tol).unwrap().label, base);
    }

    #[test]
    fn stated_growth_curves_are_never_fast(n in -20.0..20.0f64) {
        for pick in [0, 1] {
            let curve = GrowthCurve::from_fn(&ladder(), |e| {
                let (p, m) = stated_growth_rates(n, n, e);
                if pick == 0 { p } else { m }
            }, "stated").unwrap();
            let label = classify(&curve, 1e-9).unwrap().label;
            prop_assert!(matches!(label, DynamoLabel::Slow | DynamoLabel::Marginal), "{label}");
        }
    }

    #[test]
    fn basis_transform_is_an_isometry(theta in -10.0..10.0f64, x in -1e3..1e3f64, y in -1e3..1e3f64) {
        let t = basis_transform(theta);
        let (n, b) = t.to_frenet(x, y);
        let norm = (x * x + y * y).sqrt();
        prop_assert!(((n * n + b * b).sqrt() - norm).abs() <= 1e-12 * norm.max(1.0));
        let (x2, y2) = t.from_frenet(n, b);
        prop_assert!((x2 - x).abs() <= 1e-12 * norm.max(1.0));
        prop_assert!((y2 - y).abs() <= 1e-12 * norm.max(1.0));
    }

    #[test]
    fn metric_factor_thin_tube_bound(r in 0.0..1.0f64, theta in -10.0..10.0f64, kappa in -5.0..5.0f64) {
        let k = metric_factor(r, theta, kappa);
        prop_assert!((k - 1.0).abs() <= kappa.abs() * r + f64::EPSILON);
    }

    #[test]
    fn chicone_latushkin_vanishes_without_curvature(eta in 0.0..1e6f64) {
        let g = chicone_latushkin_gamma(eta, 0.0);
        prop_assert_eq!(g.real, 0.0);
        prop_assert_eq!(g.imag, 0.0);
    }

    #[test]
    fn fast_dynamo_energy_is_exponential(tau0 in -0.5..0.5f64, v0 in 0.01..0.5f64, t_end in 1.0..50.0f64) {
        let params = FastDynamoParams { tau0, v0, ..FastDynamoParams::default() };
        let series = euclidean_fast_dynamo(params, Interval::new(0.0, t_end).unwrap(), 17).unwrap();
        let gamma = tau0 * v0;
        for w in series.samples.windows(2) {
            let expected = (2.0 * gamma * (w[1].t - w[0].t)).exp();
            let ratio = w[1].eps_m() / w[0].eps_m();
            prop_assert!(((ratio - expected) / expected).abs() <= 1e-10);
        }
    }

    #[test]
    fn radial_roots_match_scan_and_substitute(eta in 1e-6..1.0f64, gamma in -5.0..5.0f64) {
        let rep = radial_mode_solve(eta, gamma).unwrap();
        let ratio = gamma / eta;
        let (p, m) = (rep.oracle.n_plus, rep.oracle.n_minus);
        prop_assert!(radial_quadratic_residual(p, ratio) <= 1e-10 * (1.0 + ratio.abs()));
        prop_assert!(radial_quadratic_residual(m, ratio) <= 1e-10 * (1.0 + ratio.abs()));
        if p.im == 0.0 && p.re != m.re && ratio.abs() < 1e4 {
            let scan = scanned_roots(ratio);
            prop_assert_eq!(scan.len(), 2);
            prop_assert!((scan[1] - p.re).abs() <= 1e-9 * (1.0 + p.re.abs()));
            prop_assert!((scan[0] - m.re).abs() <= 1e-9 * (1.0 + m.re.abs()));
        } else if p.im != 0.0 {
            prop_assert_eq!(p, m.conj());
        }
    }

    #[test]
    fn stated_exponents_disagree_at_marginality(eta in 1e-8..10.0f64) {
        let rep = radial_mode_solve(eta, 0.0).unwrap();
        let (gp, gm) = rep.exponent_gaps();
        prop_assert!(gp > 1e-6 && gm > 1e-6);
        prop_assert_eq!(radial_quadratic_roots(0.0), (rep.oracle.n_plus, rep.oracle.n_minus));
    }

    #[test]
    fn curvature_oracle_symmetries(kappa in -0.9..0.9f64, r in 0.1..0.9f64, theta in 0.0..6.3f64) {
        let t = riemann_oracle_tensor(kappa, r, theta, default_oracle_step(r)).unwrap();
        prop_assert!(symmetry_violation(&t) <= 1e-8);
        // the tube metric is Euclidean space in tube coordinates
        let worst = t.iter().flatten().flatten().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
        prop_assert!(worst <= 1e-4, "{worst}");
    }

    #[test]
    fn fd_riemann_matches_unit_three_sphere(chi in 0.3..2.8f64, theta in 0.3..2.8f64, phi in 0.0..6.0f64) {
        let metric = |x: [f64; 3]| {
            let s = x[0].sin();
            [1.0, s * s, s * s * x[1].sin().powi(2)]
        };
        let x = [chi, theta, phi];
        let t = riemann_tensor_fd(&metric, x, 1e-4);
        let g = metric(x);
        let gm = |a: usize, b: usize| if a == b { g[a] } else { 0.0 };
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let exact = gm(a, c) * gm(b, d) - gm(a, d) * gm(b, c);
                        prop_assert!((t[a][b][c][d] - exact).abs() <= 1e-5, "R[{a}{b}{c}{d}]");
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_report_is_total(kappa in 0.05..0.5f64, r in 0.1..0.9f64, theta in 0.0..6.0f64) {
        let cfg = ScenarioConfig::parse(&format!("[curvature_report]\nkappa = {kappa}\nr = {r}\ntheta = {theta}\n")).unwrap();
        let rep = build_report(&cfg, 1e-9, Execution::Sequential);
        prop_assert!(rep.failures.is_empty());
        for id in ["curvature_chain_1", "curvature_chain_2", "curvature_chain_3", "thin_tube_limit"] {
            prop_assert!(rep.find(id).next().is_some(), "{id}");
            prop_assert!(rep.find(id).all(|e| e.oracle_value.is_some()));
        }
    }

    #[test]
    fn unknown_config_keys_are_named(key in "[a-z]{3,10}_x") {
        let err = ScenarioConfig::parse(&format!("[radial_modes]\n{key} = 1\n")).unwrap_err();
        prop_assert!(err.to_string().contains(&key));
        prop_assert!(err.to_string().contains("line 2"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn straight_circle_frames_close(kappa in 0.2..3.0f64) {
        let period = 2.0 * PI / kappa;
        let profile = CurveProfile::constant(kappa, 0.0, Interval::new(0.0, period).unwrap());
        let traj = evolve_frame(&profile, &FrenetFrame::identity(), 1e-3 / kappa.max(1.0)).unwrap();
        let (_, first) = traj.first();
        let (_, last) = traj.last();
        prop_assert!((last.t() - first.t()).norm() <= 1e-6);
        prop_assert!((last.n() - first.n()).norm() <= 1e-6);
        let curve = reconstruct_curve(traj.samples(), Vec3::zeros()).unwrap();
        let end = curve.points().last().unwrap().1;
        prop_assert!(end.norm() <= 1e-6);
        for ((_, est), (_, frame)) in curve.tangent_estimates().iter().zip(traj.samples()) {
            prop_assert!((est - frame.t()).norm() <= 1e-4);
        }
    }

    #[test]
    fn parallel_matches_sequential(tau0 in 0.2..2.0f64, kappa in 0.0..0.5f64, amp in 0.0..1.0f64) {
        let grid = TubeGrid::new(
            GridAxis::cell_centres(0.05, 0.95, 8).unwrap(),
            GridAxis::periodic(0.0, 2.0 * PI, 8).unwrap(),
            GridAxis::periodic(0.0, 2.0 * PI, 8).unwrap(),
            kappa,
        ).unwrap();
        let fields = |p: TubePoint| {
            let b_theta = 1.0 + amp * p.theta.cos();
            FieldSample {
                b_s: marginal_axial_field(b_theta, tau0, p.r) + amp * p.s.sin(),
                b_theta,
                v_s: p.s.cos(),
                v_theta: 1.0 + p.r,
            }
        };
        let seq = zeldovich_rate_with(fields, tau0, &grid, VolumeElement::TubeMetric, Execution::Sequential).unwrap();
        let par = zeldovich_rate_with(fields, tau0, &grid, VolumeElement::TubeMetric, Execution::Parallel).unwrap();
        prop_assert_eq!(seq.d_eps_dt.to_bits(), par.d_eps_dt.to_bits());

        let field = TubeVectorField::from_fn(grid, |p| [amp * p.s.sin(), p.r * p.theta.cos(), 1.0 - p.r * p.r]);
        let a = beltrami_residual_with(&field, 0.7, Execution::Sequential).unwrap();
        let b = beltrami_residual_with(&field, 0.7, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);

        let cfg = ScenarioConfig::parse(&format!("[chicone_latushkin]\nkappa = {}\nsweep = eta 0 1 9\n", -amp)).unwrap();
        let rs = run_points(Scenario::ChiconeLatushkin, &cfg.points(), 1e-9, Execution::Sequential);
        let rp = run_points(Scenario::ChiconeLatushkin, &cfg.points(), 1e-9, Execution::Parallel);
        prop_assert_eq!(rs, rp);
    }
}

#[test]
fn lundquist_field_is_beltrami() {
    // B = (0, J1(λr), J0(λr)) on a straight tube is force-free with eigenvalue λ
    let lambda = 2.0;
    let residual = |n: usize| {
        let grid = TubeGrid::new(
            GridAxis::nodes(0.2, 1.2, n).unwrap(),
            GridAxis::periodic(0.0, 2.0 * PI, 8).unwrap(),
            GridAxis::periodic(0.0, 2.0 * PI, 8).unwrap(),
            0.0,
        )
        .unwrap();
        let field = TubeVectorField::from_fn(grid, |p| [0.0, bessel_j(1, lambda * p.r), bessel_j(0, lambda * p.r)]);
        beltrami_residual_with(&field, lambda, Execution::Sequential).unwrap().max_norm
    };
    let (coarse, fine) = (residual(21), residual(41));
    let h = 1.0 / 40.0;
    assert!(fine < 10.0 * h * h, "{fine}");
    assert!(coarse / fine > 3.5, "order: {coarse} / {fine}");
}

#[test]
fn bessel_series_identities() {
    // J0(x) zero and the Wronskian-like identity J0' = −J1
    assert!(bessel_j(0, 2.404_825_557_695_773).abs() < 1e-14);
    let h = 1e-5;
    for x in [0.3, 1.0, 2.5] {
        let d = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2.0 * h);
        assert!((d + bessel_j(1, x)).abs() < 1e-9);
    }
}
