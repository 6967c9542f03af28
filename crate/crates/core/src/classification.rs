//! Fast / slow / marginal / decaying labels from sampled γ(η).
//!
//! The η → 0 limit of γ is estimated by a least-squares line through the
//! smallest-η half of the samples. Labels are then assigned in this order:
//!
//! 1. `marginal` if every |γ| ≤ tol
//! 2. `fast` if the limit exceeds tol
//! 3. `decaying` if the limit is below −tol
//! 4. `slow` otherwise: growth or decay that vanishes with η

use std::fmt;

use crate::error::{DynamoError, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Two-sided 95% normal quantile used for the limit's interval.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCurve {
    samples: Vec<(f64, f64)>,
    provenance: String,
    oscillatory: bool,
}

impl GrowthCurve {
    /// `samples` are (η, γ) pairs with η > 0 strictly decreasing.
    pub fn new(samples: Vec<(f64, f64)>, provenance: impl Into<String>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(DynamoError::TooFewGrowthSamples(samples.len()));
        }
        if samples.iter().any(|&(eta, g)| !(eta > 0.0 && eta.is_finite() && g.is_finite())) {
            return Err(DynamoError::InvalidGrowthCurve("eta must be positive and gamma finite"));
        }
        if samples.windows(2).any(|w| !(w[1].0 < w[0].0)) {
            return Err(DynamoError::InvalidGrowthCurve("eta must decrease strictly"));
        }
        Ok(GrowthCurve {
            samples,
            provenance: provenance.into(),
            oscillatory: false,
        })
    }

    /// Samples `gamma` at each η of `etas`.
    pub fn from_fn<F: Fn(f64) -> f64>(etas: &[f64], gamma: F, provenance: impl Into<String>) -> Result<Self> {
        Self::new(etas.iter().map(|&e| (e, gamma(e))).collect(), provenance)
    }

    /// Marks γ as the real part of a complex growth rate.
    pub fn with_oscillatory(mut self, oscillatory: bool) -> Self {
        self.oscillatory = oscillatory;
        self
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn oscillatory(&self) -> bool {
        self.oscillatory
    }

    /// Multiplies every γ by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        GrowthCurve {
            samples: self.samples.iter().map(|&(e, g)| (e, g * c)).collect(),
            provenance: self.provenance.clone(),
            oscillatory: self.oscillatory,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynamoLabel {
    Fast,
    Slow,
    Marginal,
    Decaying,
}

impl DynamoLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            DynamoLabel::Fast => "fast",
            DynamoLabel::Slow => "slow",
            DynamoLabel::Marginal => "marginal",
            DynamoLabel::Decaying => "decaying",
        }
    }
}

impl fmt::Display for DynamoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evidence {
    /// fitted γ at η = 0
    pub limit: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub std_error: f64,
    pub fit_samples: usize,
    pub max_gamma: f64,
    pub min_gamma: f64,
    pub oscillatory: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamoClass {
    pub label: DynamoLabel,
    pub evidence: Evidence,
}

/// Least-squares intercept at η = 0 and its standard error.
fn fit_limit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let em = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let gm = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - em).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - em) * (p.1 - gm)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = gm - slope * em;
    let ssr: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let dof = pts.len().saturating_sub(2).max(1) as f64;
    let var = ssr / dof;
    let se = if sxx > 0.0 { (var * (1.0 / n + em * em / sxx)).sqrt() } else { (var / n).sqrt() };
    (intercept, se)
}

pub fn classify(curve: &GrowthCurve, tol: f64) -> Result<DynamoClass> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "classification tolerance must be positive",
        });
    }
    let all = curve.samples();
    let m = all.len().div_ceil(2).max(3).min(all.len());
    let tail = &all[all.len() - m..];
    let (limit, se) = fit_limit(tail);
    let max_gamma = all.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let min_gamma = all.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);

    let label = if all.iter().all(|p| p.1.abs() <= tol) {
        DynamoLabel::Marginal
    } else if limit > tol {
        DynamoLabel::Fast
    } else if limit < -tol {
        DynamoLabel::Decaying
    } else {
        DynamoLabel::Slow
    };
    Ok(DynamoClass {
        label,
        evidence: Evidence {
            limit,
            ci_low: limit - Z95 * se,
            ci_high: limit + Z95 * se,
            std_error: se,
            fit_samples: m,
            max_gamma,
            min_gamma,
            oscillatory: curve.oscillatory(),
        },
    })
}

/// `count` values of η spaced geometrically from `high` down to `low`.
pub fn log_eta_ladder(high: f64, low: f64, count: usize) -> Vec<f64> {
    let (lh, ll) = (high.ln(), low.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                high
            } else if i + 1 == count {
                low
            } else {
                (lh + (ll - lh) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ladder() -> Vec<f64> {
        log_eta_ladder(1e-1, 1e-6, 11)
    }

    fn label_of<F: Fn(f64) -> f64>(f: F) -> DynamoLabel {
        classify(&GrowthCurve::from_fn(&ladder(), f, "test").unwrap(), DEFAULT_TOLERANCE)
            .unwrap()
            .label
    }

    #[test]
    fn examples() {
        assert_eq!(label_of(|e| 4.0 * (2.0 - 2.0) * e), DynamoLabel::Marginal);
        assert_eq!(label_of(|e| 0.5 * e), DynamoLabel::Slow);
        assert_eq!(label_of(|_| 0.01), DynamoLabel::Fast);
        assert_eq!(label_of(|_| -0.01), DynamoLabel::Decaying);
    }

    #[test]
    fn growth_rate_vanishing_from_below_is_slow() {
        assert_eq!(label_of(|e| -12.0 * e), DynamoLabel::Slow);
    }

    #[test]
    fn evidence_for_constant_curve() {
        let c = classify(&GrowthCurve::from_fn(&ladder(), |_| 0.25, "c").unwrap(), 1e-9).unwrap();
        assert!((c.evidence.limit - 0.25).abs() < 1e-14);
        assert!(c.evidence.ci_low <= 0.25 && c.evidence.ci_high >= 0.25);
        assert_eq!(c.evidence.fit_samples, 6);
    }

    #[test]
    fn rejects_invalid_curves() {
        assert!(matches!(
            GrowthCurve::new(vec![(1.0, 0.0), (0.5, 0.0)], "x"),
            Err(DynamoError::TooFewGrowthSamples(2))
        ));
        assert!(GrowthCurve::new(vec![(1.0, 0.0), (1.0, 0.0), (0.5, 0.0)], "x").is_err());
        assert!(GrowthCurve::new(vec![(1.0, 0.0), (0.5, 0.0), (0.0, 0.0)], "x").is_err());
        let ok = GrowthCurve::new(vec![(1.0, 0.0), (0.5, 0.0), (0.1, 0.0)], "x").unwrap();
        assert!(classify(&ok, 0.0).is_err());
    }

    #[test]
    fn ladder_endpoints_exact() {
        let l = ladder();
        assert_eq!(l[0], 1e-1);
        assert_eq!(l[10], 1e-6);
        assert!(l.windows(2).all(|w| w[1] < w[0]));
    }
}
