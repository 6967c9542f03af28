//! Euclidean filamentary fast dynamo driven by a binormal flow.

use std::f64::consts::PI;

use super::{EnergyRate, MagneticField};
use crate::error::{DynamoError, Result};
use crate::flows::binormal_flow_gamma;
use crate::geometry::Interval;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastDynamoParams {
    pub b0: f64,
    pub tau0: f64,
    pub v0: f64,
    pub c1: f64,
    /// tube radius (cm), enters ε_M
    pub a: f64,
    /// arclength at which v_s and the general B_n branch are evaluated
    pub s: f64,
    /// report the weak-torsion B_n branch in [`MagneticField::b_n`]
    pub weak_torsion: bool,
}

impl Default for FastDynamoParams {
    fn default() -> Self {
        FastDynamoParams {
            b0: 1.0,
            tau0: 1.0,
            v0: 1.0,
            c1: 0.0,
            a: 1.0,
            s: 0.0,
            weak_torsion: false,
        }
    }
}

impl FastDynamoParams {
    pub fn gamma(&self) -> f64 {
        binormal_flow_gamma(self.tau0, self.v0)
    }

    /// v_s(s) = τ0 v0 s + c1
    pub fn v_s(&self, s: f64) -> f64 {
        self.tau0 * self.v0 * s + self.c1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastDynamoSample {
    pub t: f64,
    pub field: MagneticField,
    /// (1/v0)(v_s − τ0) e^{γt}
    pub b_n_general: f64,
    /// (τ0 c1 B0 / γ) e^{γt}; `None` when γ = 0
    pub b_n_weak: Option<f64>,
    pub energy: EnergyRate,
}

impl FastDynamoSample {
    pub fn eps_m(&self) -> f64 {
        self.energy.eps_m.unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FastDynamoSeries {
    pub params: FastDynamoParams,
    pub gamma: f64,
    pub samples: Vec<FastDynamoSample>,
}

impl FastDynamoSeries {
    /// Slope of ln ε_M against t by least squares over the emitted series.
    pub fn fitted_energy_rate(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.samples.iter().map(|s| (s.t, s.eps_m().ln())).collect();
        let n = pts.len() as f64;
        let tm = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let ym = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - tm) * (p.1 - ym)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - tm) * (p.0 - tm)).sum();
        sxy / sxx
    }

    /// ln 2 over the fitted energy rate; `None` unless the energy grows.
    pub fn energy_doubling_time(&self) -> Option<f64> {
        let rate = self.fitted_energy_rate();
        (rate > 0.0 && rate.is_finite()).then(|| std::f64::consts::LN_2 / rate)
    }

    pub fn is_marginal(&self) -> bool {
        self.gamma == 0.0
    }
}

/// (a²/8)(B_s² + B_n²)
pub fn energy_from_components(a: f64, b_s: f64, b_n: f64) -> f64 {
    a * a / 8.0 * (b_s * b_s + b_n * b_n)
}

/// Samples the closed-form solution at `samples` uniform times over `t_span`.
pub fn euclidean_fast_dynamo(params: FastDynamoParams, t_span: Interval, samples: usize) -> Result<FastDynamoSeries> {
    if params.v0 == 0.0 {
        return Err(DynamoError::SingularParameter("v0 = 0 in the normal field branch"));
    }
    if !(params.a > 0.0 && params.a.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "a",
            value: params.a,
            reason: "tube radius must be positive",
        });
    }
    if samples < 2 {
        return Err(DynamoError::TooFewSamples(samples));
    }
    let gamma = params.gamma();
    if params.weak_torsion && gamma == 0.0 {
        return Err(DynamoError::MarginalDivision("weak-torsion normal field divides by gamma = 0"));
    }
    let FastDynamoParams { b0, tau0, v0, c1, a, .. } = params;
    let eps0 = a * a / 8.0 * (b0 * b0 * (1.0 + c1 * c1 / (v0 * v0)));
    let dt = t_span.length() / (samples - 1) as f64;
    let out = (0..samples)
        .map(|i| {
            let t = if i + 1 == samples { t_span.max() } else { t_span.min() + i as f64 * dt };
            let growth = (gamma * t).exp();
            let b_n_general = (params.v_s(params.s) - tau0) / v0 * growth;
            let b_n_weak = (gamma != 0.0).then(|| tau0 * c1 * b0 / gamma * growth);
            let b_n = if params.weak_torsion { b_n_weak.unwrap_or(f64::NAN) } else { b_n_general };
            let field = MagneticField::filament(b0 * growth, b_n, b0, gamma)?;
            let eps_m = eps0 * (2.0 * gamma * t).exp();
            Ok(FastDynamoSample {
                t,
                field,
                b_n_general,
                b_n_weak,
                energy: EnergyRate {
                    d_eps_dt: 4.0 * PI * 2.0 * gamma * eps_m,
                    eps_m: Some(eps_m),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FastDynamoSeries {
        params,
        gamma,
        samples: out,
    })
}
