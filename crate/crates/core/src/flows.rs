//! Flows on filaments and tubes: line stretching, incompressibility,
//! vorticity and the Beltrami condition.
//!
//! Velocities are in cm/s, rates in 1/s.

use crate::error::{DynamoError, Result};
use crate::exec::{self, Execution};
use crate::grid::{GridAxis, TubeGrid};
use crate::numerics;

/// Local filament flow `v = v_s t + v_n n + v_b b` with ∂_s v_s and the
/// constant binormal amplitude `v0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilamentFlow {
    pub v_s: f64,
    pub v_n: f64,
    pub v_b: f64,
    pub v_s_prime: f64,
    pub v0: f64,
}

impl FilamentFlow {
    pub fn stretch_rate(&self, kappa: f64) -> f64 {
        stretch_rate_filament(kappa, self.v_n, self.v_s_prime)
    }

    pub fn solenoidal_residual(&self, kappa: f64) -> f64 {
        solenoidal_residual_filament(kappa, self.v_n, self.v_s_prime)
    }
}

/// Tube flow `v_s t + v_θ e_θ`; `u_s`/`u_theta` name the same components
/// in the heliotron setting, `lambda_b` is the Beltrami eigenvalue (1/cm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeFlow {
    pub v_s: f64,
    pub v_theta: f64,
    pub lambda_b: f64,
}

impl TubeFlow {
    pub fn u_s(&self) -> f64 {
        self.v_s
    }

    pub fn u_theta(&self) -> f64 {
        self.v_theta
    }

    /// Frenet components (v_n, v_b) = (−v_θ sin θ, v_θ cos θ).
    pub fn frenet_components(&self, theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        (-self.v_theta * s, self.v_theta * c)
    }
}

/// Material line element before and after stretching at rate `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchState {
    pub l0: f64,
    pub l: f64,
    pub gamma: f64,
}

impl StretchState {
    /// State after `duration` of constant stretching.
    pub fn after(l0: f64, gamma: f64, duration: f64) -> Result<Self> {
        if !(l0 > 0.0) {
            return Err(DynamoError::InvalidParameter {
                name: "l0",
                value: l0,
                reason: "initial line element must be positive",
            });
        }
        let l = l0 * (gamma * duration).exp();
        if !(l > 0.0 && l.is_finite()) {
            return Err(DynamoError::NonFinite("stretched line element"));
        }
        Ok(StretchState { l0, l, gamma })
    }
}

/// γ = −κ v_n + ∂_s v_s.
pub fn stretch_rate_filament(kappa: f64, v_n: f64, v_s_prime: f64) -> f64 {
    -kappa * v_n + v_s_prime
}

/// l0 · exp(∫ γ dt) over `[t0, t1]`, with the integral by quadrature.
pub fn stretch_factor<G: Fn(f64) -> f64>(gamma: G, t0: f64, t1: f64, l0: f64) -> Result<f64> {
    if !(l0 > 0.0) {
        return Err(DynamoError::InvalidParameter {
            name: "l0",
            value: l0,
            reason: "initial line element must be positive",
        });
    }
    let exponent = numerics::integrate(&gamma, t0, t1, 1e-14, 1e-300);
    if !exponent.is_finite() {
        return Err(DynamoError::NonFinite("stretching exponent integrand"));
    }
    Ok(l0 * exponent.exp())
}

/// Tube stretching rate κ v_θ sin θ + ∂_s v_s.
pub fn stretch_rate_tube(kappa: f64, v_theta: f64, theta: f64, v_s_prime: f64) -> f64 {
    kappa * v_theta * theta.sin() + v_s_prime
}

/// Exponent v_θ / (v0 τ0 a) of the twisted-tube stretch factor.
pub fn tube_stretch_exponent(v_theta: f64, v0: f64, tau0: f64, a: f64) -> Result<f64> {
    if v0 == 0.0 {
        return Err(DynamoError::SingularParameter("v0 = 0"));
    }
    if tau0 == 0.0 {
        return Err(DynamoError::SingularParameter("tau0 = 0"));
    }
    if !(a > 0.0) {
        return Err(DynamoError::InvalidParameter {
            name: "a",
            value: a,
            reason: "tube radius must be positive",
        });
    }
    Ok(v_theta / (v0 * tau0 * a))
}

/// ∂_s v_s − κ v_n; zero for an incompressible filament flow.
pub fn solenoidal_residual_filament(kappa: f64, v_n: f64, v_s_prime: f64) -> f64 {
    v_s_prime - kappa * v_n
}

/// ∂_s v_θ = r κ τ sin θ v_θ.
pub fn poloidal_evolution_rhs(r: f64, kappa: f64, tau: f64, theta: f64, v_theta: f64) -> f64 {
    r * kappa * tau * theta.sin() * v_theta
}

/// Closed-form solution of the poloidal evolution for constant coefficients.
pub fn poloidal_profile(v_theta0: f64, r: f64, kappa: f64, tau: f64, theta: f64, s: f64) -> f64 {
    v_theta0 * (r * kappa * tau * theta.sin() * s).exp()
}

/// Vorticity components in the tube basis (1/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vorticity {
    pub omega_r: f64,
    pub omega_theta: f64,
    pub omega_s: f64,
    pub omega_0: f64,
    /// Axial flow consistent with the poloidal vorticity, v_s = −ω₀ r.
    pub axial_flow: f64,
}

/// Thin-tube vorticity:
/// ω_r = −τ0² r sin θ v_θ, ω_θ = ω₀ with v_s = −ω₀ r,
/// ω_s = −[∂_r v_θ − (cos θ / r) τ0 v_θ].
pub fn vorticity_components(
    tau0: f64,
    r: f64,
    theta: f64,
    v_theta: f64,
    dv_theta_dr: f64,
    omega0: f64,
) -> Result<Vorticity> {
    if r == 0.0 {
        return Err(DynamoError::SingularAxis);
    }
    let (sin, cos) = theta.sin_cos();
    Ok(Vorticity {
        omega_r: -tau0 * tau0 * r * sin * v_theta,
        omega_theta: omega0,
        omega_s: -(dv_theta_dr - cos / r * tau0 * v_theta),
        omega_0: omega0,
        axial_flow: axial_flow_from_vorticity(omega0, r),
    })
}

/// v_s = −ω₀ r.
pub fn axial_flow_from_vorticity(omega0: f64, r: f64) -> f64 {
    -omega0 * r
}

/// ω_θ = −∂_r v_s.
pub fn poloidal_vorticity(dv_s_dr: f64) -> f64 {
    -dv_s_dr
}

/// Filament stretching rate for a binormal flow, γ = τ0 v0.
pub fn binormal_flow_gamma(tau0: f64, v0: f64) -> f64 {
    tau0 * v0
}

/// Physical components (u_r, u_θ, u_s) of a vector field sampled on a [`TubeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct TubeVectorField {
    grid: TubeGrid,
    values: Vec<[f64; 3]>,
}

impl TubeVectorField {
    pub fn new(grid: TubeGrid, values: Vec<[f64; 3]>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(DynamoError::FieldSizeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(TubeVectorField { grid, values })
    }

    pub fn from_fn<F>(grid: TubeGrid, f: F) -> Self
    where
        F: Fn(crate::grid::TubePoint) -> [f64; 3],
    {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        TubeVectorField { grid, values }
    }

    pub fn grid(&self) -> &TubeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[[f64; 3]] {
        &self.values
    }
}

/// ∇×u − λ_B u on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BeltramiResidual {
    pub residual: Vec<[f64; 3]>,
    /// max over nodes of the Euclidean norm of the residual vector
    pub max_norm: f64,
}

pub fn beltrami_residual(field: &TubeVectorField, lambda_b: f64) -> Result<BeltramiResidual> {
    beltrami_residual_with(field, lambda_b, Execution::default())
}

/// Beltrami residual using the orthogonal tube metric (scale factors 1, r, K)
/// with second-order central differences; non-periodic boundaries use
/// second-order one-sided differences.
pub fn beltrami_residual_with(field: &TubeVectorField, lambda_b: f64, exec: Execution) -> Result<BeltramiResidual> {
    let grid = field.grid;
    if [grid.r, grid.theta, grid.s].iter().any(|axis| axis.count < 3) {
        return Err(DynamoError::DegenerateGrid("every axis needs at least 3 nodes"));
    }
    if !lambda_b.is_finite() {
        return Err(DynamoError::NonFinite("Beltrami eigenvalue"));
    }

    let n = grid.len();
    // products differentiated by the curl
    let mut u_r = Vec::with_capacity(n);
    let mut r_u_theta = Vec::with_capacity(n);
    let mut k_u_s = Vec::with_capacity(n);
    for (i, v) in field.values.iter().enumerate() {
        let p = grid.point(i);
        u_r.push(v[0]);
        r_u_theta.push(p.r * v[1]);
        k_u_s.push(grid.metric_factor(p) * v[2]);
    }

    let residual = exec::map_indexed(n, exec, |idx| {
        let (ir, it, is) = grid.unflatten(idx);
        let p = grid.point(idx);
        let k = grid.metric_factor(p);
        let d = |f: &[f64], axis: Axis| derivative(&grid, f, axis, ir, it, is);
        let curl_r = (d(&k_u_s, Axis::Theta) - d(&r_u_theta, Axis::S)) / (p.r * k);
        let curl_theta = (d(&u_r, Axis::S) - d(&k_u_s, Axis::R)) / k;
        let curl_s = (d(&r_u_theta, Axis::R) - d(&u_r, Axis::Theta)) / p.r;
        let u = field.values[idx];
        [
            curl_r - lambda_b * u[0],
            curl_theta - lambda_b * u[1],
            curl_s - lambda_b * u[2],
        ]
    });
    let max_norm = residual
        .iter()
        .map(|v| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt())
        .fold(0.0, f64::max);
    Ok(BeltramiResidual { residual, max_norm })
}

#[derive(Clone, Copy)]
enum Axis {
    R,
    Theta,
    S,
}

fn derivative(grid: &TubeGrid, f: &[f64], axis: Axis, ir: usize, it: usize, is: usize) -> f64 {
    let (ax, i): (&GridAxis, usize) = match axis {
        Axis::R => (&grid.r, ir),
        Axis::Theta => (&grid.theta, it),
        Axis::S => (&grid.s, is),
    };
    let at = |j: usize| -> f64 {
        let idx = match axis {
            Axis::R => grid.index(j, it, is),
            Axis::Theta => grid.index(ir, j, is),
            Axis::S => grid.index(ir, it, j),
        };
        f[idx]
    };
    let n = ax.count;
    let h = ax.step;
    if ax.periodic {
        let next = (i + 1) % n;
        let prev = (i + n - 1) % n;
        (at(next) - at(prev)) / (2.0 * h)
    } else if i == 0 {
        (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
    } else if i == n - 1 {
        (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h)
    } else {
        (at(i + 1) - at(i - 1)) / (2.0 * h)
    }
}
