//! Heliotron flux tube with a Beltrami plasma flow.
//!
//! The three scalar induction equations are evaluated as residuals
//! (left side minus right side) rather than solved.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{DynamoError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeliotronState {
    pub b_s0: f64,
    pub b_theta0: f64,
    pub u_s: f64,
    pub u_theta: f64,
    /// dimensionless growth rate in units of U_max / L
    pub gamma: f64,
    pub tau0: f64,
    pub u_max: f64,
    pub length: f64,
    pub re_m: f64,
}

impl HeliotronState {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        b_s0: f64,
        b_theta0: f64,
        u_s: f64,
        u_theta: f64,
        gamma: f64,
        tau0: f64,
        u_max: f64,
        length: f64,
        re_m: f64,
    ) -> Result<Self> {
        for (name, value) in [("u_max", u_max), ("length", length), ("re_m", re_m)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(DynamoError::InvalidParameter {
                    name,
                    value,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(HeliotronState {
            b_s0,
            b_theta0,
            u_s,
            u_theta,
            gamma,
            tau0,
            u_max,
            length,
            re_m,
        })
    }

    /// η = U L / Re_m
    pub fn eta(&self) -> f64 {
        self.u_max * self.length / self.re_m
    }

    /// γ U_max / L
    pub fn growth_prefactor(&self) -> f64 {
        self.gamma * self.u_max / self.length
    }

    /// β = B_s / K − τ0⁻¹ B_θ⁰ / r
    pub fn beta(&self, r: f64, k: f64) -> f64 {
        self.b_s0 / k - self.b_theta0 / (self.tau0 * r)
    }
}

/// Residuals of the toroidal, first poloidal and second poloidal equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeliotronResidual {
    pub toroidal: Complex64,
    pub poloidal: Complex64,
    pub poloidal_imaginary: Complex64,
    pub beta: f64,
}

impl HeliotronResidual {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.toroidal, self.poloidal, self.poloidal_imaginary]
    }

    pub fn max_norm(&self) -> f64 {
        self.as_array().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

pub fn heliotron_system_residual(state: &HeliotronState, theta: f64, r: f64, k: f64) -> Result<HeliotronResidual> {
    if r == 0.0 {
        return Err(DynamoError::SingularAxis);
    }
    if !(r > 0.0) {
        return Err(DynamoError::InvalidParameter {
            name: "r",
            value: r,
            reason: "radius must be positive",
        });
    }
    if k == 0.0 {
        return Err(DynamoError::SingularParameter("K = 0"));
    }
    if state.tau0 == 0.0 {
        return Err(DynamoError::SingularParameter("tau0 = 0"));
    }
    let HeliotronState {
        b_s0,
        b_theta0,
        u_s,
        u_theta,
        tau0,
        ..
    } = *state;
    let g = state.growth_prefactor();
    let beta = state.beta(r, k);
    let (sin, tan) = (theta.sin(), theta.tan());

    let toroidal = g * b_s0 - (b_theta0 * tau0 * sin + u_theta * tau0 * sin * beta);
    let csc_term = if u_s == 0.0 { 0.0 } else { u_s * tau0 / sin };
    let poloidal = g * b_theta0 - (b_s0 * tau0 + beta * u_theta * tau0 * tan + csc_term);
    let bracket = u_s / k - u_theta / (tau0 * r);
    let poloidal_imaginary = Complex64::new(g * b_theta0 + beta * u_theta * tau0 * tan, -bracket);

    Ok(HeliotronResidual {
        toroidal: Complex64::new(toroidal, 0.0),
        poloidal: Complex64::new(poloidal, 0.0),
        poloidal_imaginary,
        beta,
    })
}

/// u_s = K τ0⁻¹ u_θ / r, which clears the imaginary part at γ = 0.
pub fn nondynamo_axial_flow(u_theta: f64, tau0: f64, r: f64, k: f64) -> f64 {
    k * (u_theta / (tau0 * r))
}

/// τ0 = (2π/a)(θ_R − 2πm). The left side is an inverse length while the
/// right side is 2π/a times a pure number.
pub fn heliotron_nondynamo_torsion(a: f64, theta_r: f64, m: i64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "a",
            value: a,
            reason: "tube radius must be positive",
        });
    }
    Ok(2.0 * PI / a * (theta_r - 2.0 * PI * m as f64))
}
