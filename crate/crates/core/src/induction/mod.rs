//! Induction-equation scenarios on filaments and flux tubes.
//!
//! Each submodule implements one scenario in closed form. Where two stated
//! forms of the same quantity disagree, both are evaluated and returned side
//! by side instead of choosing one.
//!
//! Units are CGS: fields in Gauss, lengths in cm, η in cm²/s. Growth rates
//! are in 1/s except in the heliotron scenario, where γ is dimensionless
//! (scaled by U_max / L).

mod fast_dynamo;
mod filament;
mod heliotron;
mod radial;
mod zeldovich;

pub use fast_dynamo::{
    energy_from_components, euclidean_fast_dynamo, FastDynamoParams, FastDynamoSample, FastDynamoSeries,
};
pub use filament::{diffusive_filament_solve, integrate_field_ode, CurvaturePower, DiffusiveFilamentSolution};
pub use heliotron::{
    heliotron_nondynamo_torsion, heliotron_system_residual, nondynamo_axial_flow, HeliotronResidual,
    HeliotronState,
};
pub use radial::{
    chicone_latushkin_gamma, coupled_radial_residual, reduced_radial_residual, marginal_mode_profile, stated_exponents,
    stated_growth_rates, radial_mode_solve, radial_quadratic_residual, radial_quadratic_roots,
    ChiconeLatushkinRate, RadialModeReport, RadialModeResult, RadialModeSource, STATED_MARGINAL_EXPONENTS,
};
pub use zeldovich::{
    marginal_axial_field, nonstretching_filament_rate, tube_volume, zeldovich_integrand, zeldovich_rate,
    zeldovich_rate_with, FieldSample, VolumeElement,
};

use num_complex::Complex64;

use crate::error::{DynamoError, Result};

/// Tolerance on the solenoidal residual at field construction.
pub const SOLENOIDAL_TOLERANCE: f64 = 1e-10;

/// Magnetic field amplitudes and growth parameters.
///
/// `k_s` and `k_theta` are complex because the radial-mode scenario takes
/// an imaginary axial wavenumber `k_s = i k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticField {
    pub b_s: f64,
    pub b_theta: f64,
    pub b_n: f64,
    pub b0: f64,
    pub gamma: f64,
    pub k_s: Complex64,
    pub k_theta: Complex64,
    pub k0: f64,
}

impl MagneticField {
    /// Filament field with toroidal and normal components.
    pub fn filament(b_s: f64, b_n: f64, b0: f64, gamma: f64) -> Result<Self> {
        check_amplitude(b0)?;
        Ok(MagneticField {
            b_s,
            b_theta: 0.0,
            b_n,
            b0,
            gamma,
            k_s: Complex64::new(0.0, 0.0),
            k_theta: Complex64::new(0.0, 0.0),
            k0: 0.0,
        })
    }

    /// Axial mode `B0(r) t exp(γt + i(k_s s + k_θ θ))` with explicit
    /// wavenumbers. The solenoidal condition `k_s − τ0 k_θ = 0` must hold.
    pub fn axial_mode(b0: f64, gamma: f64, k_s: Complex64, k_theta: Complex64, tau0: f64) -> Result<Self> {
        check_amplitude(b0)?;
        let residual = (k_s - k_theta * tau0).norm();
        if !(residual <= SOLENOIDAL_TOLERANCE) {
            return Err(DynamoError::SolenoidalViolation { residual });
        }
        Ok(MagneticField {
            b_s: b0,
            b_theta: 0.0,
            b_n: 0.0,
            b0,
            gamma,
            k_s,
            k_theta,
            k0: k_s.im,
        })
    }

    /// Axial mode with `k_s = i k0` and `k_θ = k_s / τ0`.
    pub fn radial_mode(b0: f64, gamma: f64, k0: f64, tau0: f64) -> Result<Self> {
        if tau0 == 0.0 {
            return Err(DynamoError::SingularParameter("tau0 = 0"));
        }
        let k_s = Complex64::new(0.0, k0);
        Self::axial_mode(b0, gamma, k_s, k_s / tau0, tau0)
    }
}

fn check_amplitude(b0: f64) -> Result<()> {
    if !(b0 >= 0.0 && b0.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "b0",
            value: b0,
            reason: "field amplitude must be non-negative and finite",
        });
    }
    Ok(())
}

/// Magnetic energy and its rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRate {
    /// 4π dε_M/dt
    pub d_eps_dt: f64,
    /// ε_M where the scenario provides it
    pub eps_m: Option<f64>,
}

impl EnergyRate {
    pub fn rate(d_eps_dt: f64) -> Self {
        EnergyRate { d_eps_dt, eps_m: None }
    }
}

/// B_θ / B_s = v_θ / v_s for steady dynamos.
pub fn steady_field_flow_ratio(v_theta: f64, v_s: f64) -> Result<f64> {
    if v_s == 0.0 {
        return Err(DynamoError::SingularParameter("v_s = 0 leaves B_theta/B_s undefined"));
    }
    Ok(v_theta / v_s)
}

/// B_s / B_θ ≈ τ0 r cos θ near the tube axis.
pub fn axis_field_ratio(tau0: f64, r: f64, theta: f64) -> f64 {
    tau0 * r * theta.cos()
}
