//! Diffusive non-stretching filaments.
//!
//! The closed forms are `B_s(s) = B0 exp(−η ∫κ² ds)` and
//! `κ(s) = κ0 exp(η ∫τ ds)`. The scalar equation they are said to solve,
//! `dB_s = −η κ B_s`, is first order in κ; it is integrated literally as a
//! separate quantity so the two can be compared.

use crate::error::{DynamoError, Result};
use crate::geometry::{CurveProfile, Interval};
use crate::numerics;

/// Power of κ on the right-hand side of `dB_s/ds = −η κ^p B_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvaturePower {
    /// −η κ B_s, as the scalar equation is written
    First,
    /// −η κ² B_s, consistent with the closed-form exponent
    Second,
}

const ODE_STEPS: usize = 20_000;

/// RK4 integration of `dB/ds = −η κ(s)^p B` from `s0` to `s1` in
/// 20 000 uniform steps.
pub fn integrate_field_ode(profile: &CurveProfile, eta: f64, b0: f64, s0: f64, s1: f64, power: CurvaturePower) -> f64 {
    let rhs = |s: f64, y: &[f64; 1]| {
        let k = profile.kappa(s);
        let kp = match power {
            CurvaturePower::First => k,
            CurvaturePower::Second => k * k,
        };
        [-eta * kp * y[0]]
    };
    let span = s1 - s0;
    if span == 0.0 {
        return b0;
    }
    numerics::rk4_integrate(rhs, s0, s1, [b0], span.abs() / ODE_STEPS as f64)[0]
}

/// Closed-form solution for a diffusive filament.
#[derive(Debug, Clone)]
pub struct DiffusiveFilamentSolution {
    profile: CurveProfile,
    span: Interval,
    pub b0: f64,
    pub kappa0: f64,
    pub tau0: f64,
    pub eta: f64,
    /// v_s = −τ0², compared across different physical dimensions.
    pub v_s_constraint: f64,
}

impl DiffusiveFilamentSolution {
    pub fn span(&self) -> Interval {
        self.span
    }

    pub fn profile(&self) -> &CurveProfile {
        &self.profile
    }

    /// B0 exp(−η ∫_{s0}^{s} κ² ds).
    pub fn b_s(&self, s: f64) -> f64 {
        self.b0 * (-self.eta * self.profile.curvature_energy(self.span.min(), s)).exp()
    }

    /// κ0 exp(η ∫_{s0}^{s} τ ds).
    pub fn kappa(&self, s: f64) -> f64 {
        self.kappa0 * (self.eta * self.profile.total_torsion(self.span.min(), s)).exp()
    }

    /// B_s from integrating the first-power equation literally.
    pub fn b_s_first_power(&self, s: f64) -> f64 {
        integrate_field_ode(&self.profile, self.eta, self.b0, self.span.min(), s, CurvaturePower::First)
    }

    pub fn total_curvature_energy(&self) -> f64 {
        self.profile.curvature_energy(self.span.min(), self.span.max())
    }

    pub fn total_torsion(&self) -> f64 {
        self.profile.total_torsion(self.span.min(), self.span.max())
    }

    /// ln(B_s(L)/B0) / L: mean exponential rate along the filament (1/cm).
    pub fn mean_decay_rate(&self) -> f64 {
        -self.eta * self.total_curvature_energy() / self.span.length()
    }

    /// The field decays whenever the curvature energy is positive and η > 0.
    pub fn decays(&self) -> bool {
        self.eta > 0.0 && self.total_curvature_energy() > 0.0
    }
}

pub fn diffusive_filament_solve(
    b0: f64,
    profile: &CurveProfile,
    eta: f64,
    s_span: Interval,
) -> Result<DiffusiveFilamentSolution> {
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "magnetic diffusivity must be non-negative",
        });
    }
    if !(b0 > 0.0 && b0.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "b0",
            value: b0,
            reason: "initial field must be positive",
        });
    }
    let domain = profile.domain();
    if !(domain.contains(s_span.min()) && domain.contains(s_span.max())) {
        return Err(DynamoError::InvalidParameter {
            name: "s_span",
            value: s_span.max(),
            reason: "span must lie inside the profile domain",
        });
    }
    let kappa0 = profile.kappa(s_span.min());
    let tau0 = profile.tau(s_span.min());
    if !(kappa0.is_finite() && tau0.is_finite()) {
        return Err(DynamoError::NonFiniteProfile { s: s_span.min() });
    }
    Ok(DiffusiveFilamentSolution {
        profile: profile.clone(),
        span: s_span,
        b0,
        kappa0,
        tau0,
        eta,
        v_s_constraint: -tau0 * tau0,
    })
}
