//! Non-stretched diffusive radial modes `B0(r) = r^n` and the
//! Chicone–Latushkin growth rate.
//!
//! The indicial equation `n² + 3n + (2 − γ/η) = 0` is solved directly and
//! its roots are returned next to the stated closed-form exponents and
//! growth rates, each tagged with its source.

use num_complex::Complex64;

use crate::error::{DynamoError, Result};

/// Marginal exponents (n₊, n₋) stated for γ± = 0.
pub const STATED_MARGINAL_EXPONENTS: (f64, f64) = (2.0, -5.0);

const ROOT_RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialModeSource {
    OracleQuadratic,
    StatedExponents,
    StatedGrowthRates,
}

impl RadialModeSource {
    pub fn tag(self) -> &'static str {
        match self {
            RadialModeSource::OracleQuadratic => "oracle_quadratic",
            RadialModeSource::StatedExponents => "stated_exponents",
            RadialModeSource::StatedGrowthRates => "stated_growth_rates",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialModeResult {
    pub n_plus: Complex64,
    pub n_minus: Complex64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub source: RadialModeSource,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialModeReport {
    pub eta: f64,
    pub gamma: f64,
    pub oracle: RadialModeResult,
    pub stated_exponents: RadialModeResult,
    pub stated_growth: RadialModeResult,
    /// Largest |n² + 3n + 2 − γ/η| over the oracle roots.
    pub oracle_residual: f64,
}

impl RadialModeReport {
    pub fn results(&self) -> [RadialModeResult; 3] {
        [self.oracle, self.stated_exponents, self.stated_growth]
    }

    /// |oracle − closed form| for (n₊, n₋).
    pub fn exponent_gaps(&self) -> (f64, f64) {
        (
            (self.oracle.n_plus - self.stated_exponents.n_plus).norm(),
            (self.oracle.n_minus - self.stated_exponents.n_minus).norm(),
        )
    }

    /// Gaps between the oracle roots at γ = 0 and the stated marginal
    /// exponents.
    pub fn marginal_gaps(&self) -> (f64, f64) {
        let (plus, minus) = radial_quadratic_roots(0.0);
        (
            (plus - STATED_MARGINAL_EXPONENTS.0).norm(),
            (minus - STATED_MARGINAL_EXPONENTS.1).norm(),
        )
    }
}

/// Roots of `n² + 3n + (2 − ratio)`, larger real part first.
///
/// Real roots use the cancellation-free form `q = −(3 + √D)/2`,
/// `n = q, c/q`.
pub fn radial_quadratic_roots(ratio: f64) -> (Complex64, Complex64) {
    let c = 2.0 - ratio;
    let disc = 9.0 - 4.0 * c;
    if disc >= 0.0 {
        let q = -0.5 * (3.0 + disc.sqrt());
        let (a, b) = (q, c / q);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        (Complex64::new(hi, 0.0), Complex64::new(lo, 0.0))
    } else {
        let im = 0.5 * (-disc).sqrt();
        (Complex64::new(-1.5, im), Complex64::new(-1.5, -im))
    }
}

pub fn radial_quadratic_residual(n: Complex64, ratio: f64) -> f64 {
    (n * n + 3.0 * n + (2.0 - ratio)).norm()
}

/// n± = −3/2 ± (7/2)(1 − ratio/14)
pub fn stated_exponents(ratio: f64) -> (f64, f64) {
    let half_width = 3.5 * (1.0 - ratio / 14.0);
    (-1.5 + half_width, -1.5 - half_width)
}

/// γ₊ = 4(n₊ − 2)η, γ₋ = −4(n₋ + 5)η
pub fn stated_growth_rates(n_plus: f64, n_minus: f64, eta: f64) -> (f64, f64) {
    (4.0 * (n_plus - 2.0) * eta, -4.0 * (n_minus + 5.0) * eta)
}

/// r^n
pub fn marginal_mode_profile(exponent: f64, r: f64) -> f64 {
    r.powf(exponent)
}

pub fn radial_mode_solve(eta: f64, gamma: f64) -> Result<RadialModeReport> {
    if eta == 0.0 {
        return Err(DynamoError::DiffusionlessLimit("gamma/eta is undefined at eta = 0"));
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(DynamoError::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "magnetic diffusivity must be positive",
        });
    }
    if !gamma.is_finite() {
        return Err(DynamoError::NonFinite("gamma"));
    }
    let ratio = gamma / eta;
    let (n_plus, n_minus) = radial_quadratic_roots(ratio);
    let oracle_residual = radial_quadratic_residual(n_plus, ratio).max(radial_quadratic_residual(n_minus, ratio));
    let scale = 1.0 + ratio.abs();
    if !(oracle_residual <= ROOT_RESIDUAL_TOLERANCE * scale) {
        return Err(DynamoError::NonFinite("indicial roots failed back-substitution"));
    }
    let (p_plus, p_minus) = stated_exponents(ratio);
    let (g_plus, g_minus) = stated_growth_rates(p_plus, p_minus, eta);
    let real = |x: f64| Complex64::new(x, 0.0);
    Ok(RadialModeReport {
        eta,
        gamma,
        oracle: RadialModeResult {
            n_plus,
            n_minus,
            gamma_plus: gamma,
            gamma_minus: gamma,
            source: RadialModeSource::OracleQuadratic,
        },
        stated_exponents: RadialModeResult {
            n_plus: real(p_plus),
            n_minus: real(p_minus),
            gamma_plus: gamma,
            gamma_minus: gamma,
            source: RadialModeSource::StatedExponents,
        },
        stated_growth: RadialModeResult {
            n_plus: real(p_plus),
            n_minus: real(p_minus),
            gamma_plus: g_plus,
            gamma_minus: g_minus,
            source: RadialModeSource::StatedGrowthRates,
        },
        oracle_residual,
    })
}

/// Residual of the full radial equation before the solenoidal
/// simplification, for a profile sample `[B0, ∂_r B0, ∂_r² B0]`:
///
/// `γB0 − η[B0'' + τ0 cos θ B0' − (1 − τ0⁻²/r²) Δk² B0 + i Δk (sin θ / r) B0]`
/// with `Δk = k_s − τ0 k_θ`.
#[allow(clippy::too_many_arguments)]
pub fn coupled_radial_residual(
    profile: [f64; 3],
    gamma: f64,
    eta: f64,
    tau0: f64,
    r: f64,
    theta: f64,
    k_s: Complex64,
    k_theta: Complex64,
) -> Complex64 {
    let [b0, db0, d2b0] = profile;
    let dk = k_s - k_theta * tau0;
    let geometric = 1.0 - 1.0 / (tau0 * tau0 * r * r);
    let bracket = d2b0 + tau0 * theta.cos() * db0 - dk * dk * geometric * b0
        + Complex64::i() * dk * (theta.sin() / r) * b0;
    gamma * b0 - eta * bracket
}

/// `∂_r² B0 − γ/η B0`
pub fn reduced_radial_residual(b0: f64, d2b0: f64, gamma: f64, eta: f64) -> f64 {
    d2b0 - gamma / eta * b0
}

/// Growth rate `½[−η(1+κ²) + √(η²(1−κ²)² − 4κ)]`; a negative radicand
/// yields a complex-conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiconeLatushkinRate {
    pub real: f64,
    /// non-negative member of the conjugate pair
    pub imag: f64,
    pub oscillatory: bool,
}

impl ChiconeLatushkinRate {
    pub fn pair(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.real, self.imag), Complex64::new(self.real, -self.imag))
    }
}

pub fn chicone_latushkin_gamma(eta: f64, kappa: f64) -> ChiconeLatushkinRate {
    let k2 = kappa * kappa;
    let base = -eta * (1.0 + k2);
    let radicand = eta * eta * (1.0 - k2) * (1.0 - k2) - 4.0 * kappa;
    if radicand >= 0.0 {
        ChiconeLatushkinRate {
            real: 0.5 * (base + radicand.sqrt()),
            imag: 0.0,
            oscillatory: false,
        }
    } else {
        ChiconeLatushkinRate {
            real: 0.5 * base,
            imag: 0.5 * (-radicand).sqrt(),
            oscillatory: true,
        }
    }
}
