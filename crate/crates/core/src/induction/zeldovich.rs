//! Zeldovich energy integral on a flux tube and the non-stretching
//! filament lemma.

use super::EnergyRate;
use crate::error::{DynamoError, Result};
use crate::exec::{self, Execution};
use crate::grid::{TubeGrid, TubePoint};

/// Field and flow components at one point of the tube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub b_s: f64,
    pub b_theta: f64,
    pub v_s: f64,
    pub v_theta: f64,
}

/// Jacobian used for the volume integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeElement {
    /// dV = dr dθ ds
    Unit,
    /// dV = r dr dθ ds
    Cylindrical,
    /// dV = r K dr dθ ds, the tube metric's √g
    TubeMetric,
}

impl VolumeElement {
    fn jacobian(self, grid: &TubeGrid, p: TubePoint) -> f64 {
        match self {
            VolumeElement::Unit => 1.0,
            VolumeElement::Cylindrical => p.r,
            VolumeElement::TubeMetric => p.r * grid.metric_factor(p),
        }
    }
}

/// B_s that makes the integrand vanish: B_θ τ0⁻¹ / r.
pub fn marginal_axial_field(b_theta: f64, tau0: f64, r: f64) -> f64 {
    b_theta / (tau0 * r)
}

/// `[B_θ τ0² sin θ (v_θ − τ0⁻¹ v_s) + B_s v_θ] (B_s − B_θ τ0⁻¹ / r)`.
pub fn zeldovich_integrand(f: FieldSample, tau0: f64, p: TubePoint) -> f64 {
    let transport = f.b_theta * tau0 * tau0 * p.theta.sin() * (f.v_theta - f.v_s / tau0) + f.b_s * f.v_theta;
    transport * (f.b_s - marginal_axial_field(f.b_theta, tau0, p.r))
}

/// Σ dV over the grid (midpoint rule).
pub fn tube_volume(grid: &TubeGrid, volume: VolumeElement) -> f64 {
    let cell = grid.r.step * grid.theta.step * grid.s.step;
    (0..grid.len())
        .map(|i| volume.jacobian(grid, grid.point(i)) * cell)
        .sum()
}

pub fn zeldovich_rate<F>(fields: F, tau0: f64, grid: &TubeGrid, volume: VolumeElement) -> Result<EnergyRate>
where
    F: Fn(TubePoint) -> FieldSample + Sync + Send,
{
    zeldovich_rate_with(fields, tau0, grid, volume, Execution::default())
}

/// 4π dε_M/dt as a midpoint-rule volume integral of [`zeldovich_integrand`].
///
/// Grid nodes are taken as cell centres with the axis steps as cell widths
/// (see [`crate::grid::GridAxis::cell_centres`]). Radial slabs are summed in
/// parallel and then combined in index order, so the result does not depend
/// on the execution mode.
pub fn zeldovich_rate_with<F>(
    fields: F,
    tau0: f64,
    grid: &TubeGrid,
    volume: VolumeElement,
    exec: Execution,
) -> Result<EnergyRate>
where
    F: Fn(TubePoint) -> FieldSample + Sync + Send,
{
    if tau0 == 0.0 || !tau0.is_finite() {
        return Err(DynamoError::SingularParameter("tau0 must be finite and non-zero"));
    }
    if !(grid.r.start > 0.0) {
        return Err(DynamoError::SingularAxis);
    }
    let cell = grid.r.step * grid.theta.step * grid.s.step;
    let slab = grid.theta.count * grid.s.count;
    let slabs = exec::map_indexed(grid.r.count, exec, |ir| {
        (ir * slab..(ir + 1) * slab)
            .map(|idx| {
                let p = grid.point(idx);
                zeldovich_integrand(fields(p), tau0, p) * volume.jacobian(grid, p)
            })
            .sum::<f64>()
    });
    let total = slabs.iter().sum::<f64>() * cell;
    if !total.is_finite() {
        return Err(DynamoError::NonFinite("Zeldovich integral"));
    }
    Ok(EnergyRate::rate(total))
}

/// Energy rate of a purely toroidal field `B = B_s t` transported along a
/// non-stretching filament: the integrand `B_s² v_s (t·n)` vanishes
/// identically because t and n are orthogonal.
pub fn nonstretching_filament_rate(b_s: f64, v_s: f64) -> EnergyRate {
    let t_dot_n = frame_metric(FrameLeg::Tangent, FrameLeg::Normal);
    let d_eps_dt = if t_dot_n == 0.0 { 0.0 } else { b_s * b_s * v_s * t_dot_n };
    EnergyRate::rate(d_eps_dt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FrameLeg {
    Tangent,
    Normal,
}

/// Inner product of two legs of an orthonormal frame.
fn frame_metric(a: FrameLeg, b: FrameLeg) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}
