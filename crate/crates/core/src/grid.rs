//! Uniform (r, θ, s) grids over a flux tube.

use crate::error::{DynamoError, Result};
use crate::tube_metric::metric_factor;

/// One uniform grid axis. Periodic axes wrap around in finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
    pub periodic: bool,
}

impl GridAxis {
    /// `count` nodes from `start` to `stop` inclusive.
    pub fn nodes(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(DynamoError::DegenerateGrid("axis needs at least 2 nodes"));
        }
        let step = (stop - start) / (count - 1) as f64;
        Self::checked(start, step, count, false)
    }

    /// `count` nodes covering one period `[start, start + period)`.
    pub fn periodic(start: f64, period: f64, count: usize) -> Result<Self> {
        if count < 3 {
            return Err(DynamoError::DegenerateGrid("periodic axis needs at least 3 nodes"));
        }
        Self::checked(start, period / count as f64, count, true)
    }

    /// Midpoints of `count` equal cells spanning `[start, stop]`, for
    /// midpoint-rule quadrature. `step` is the cell width.
    pub fn cell_centres(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 1 {
            return Err(DynamoError::DegenerateGrid("axis needs at least one cell"));
        }
        let step = (stop - start) / count as f64;
        Self::checked(start + 0.5 * step, step, count, false)
    }

    fn checked(start: f64, step: f64, count: usize, periodic: bool) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) {
            return Err(DynamoError::DegenerateGrid("axis spacing must be positive and finite"));
        }
        Ok(GridAxis {
            start,
            step,
            count,
            periodic,
        })
    }

    pub fn at(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.at(i))
    }
}

/// A point of the tube in (r, θ, s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubePoint {
    pub r: f64,
    pub theta: f64,
    pub s: f64,
}

/// Tensor-product grid with axis curvature `kappa` (for K = 1 − κ r cos θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeGrid {
    pub r: GridAxis,
    pub theta: GridAxis,
    pub s: GridAxis,
    pub kappa: f64,
}

impl TubeGrid {
    pub fn new(r: GridAxis, theta: GridAxis, s: GridAxis, kappa: f64) -> Result<Self> {
        if !(r.start > 0.0) {
            return Err(DynamoError::SingularAxis);
        }
        if r.periodic {
            return Err(DynamoError::DegenerateGrid("radial axis cannot be periodic"));
        }
        if !kappa.is_finite() {
            return Err(DynamoError::NonFinite("grid curvature"));
        }
        Ok(TubeGrid { r, theta, s, kappa })
    }

    pub fn len(&self) -> usize {
        self.r.count * self.theta.count * self.s.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index, s fastest.
    pub fn index(&self, ir: usize, it: usize, is: usize) -> usize {
        (ir * self.theta.count + it) * self.s.count + is
    }

    pub fn unflatten(&self, idx: usize) -> (usize, usize, usize) {
        let is = idx % self.s.count;
        let rest = idx / self.s.count;
        (rest / self.theta.count, rest % self.theta.count, is)
    }

    pub fn point(&self, idx: usize) -> TubePoint {
        let (ir, it, is) = self.unflatten(idx);
        TubePoint {
            r: self.r.at(ir),
            theta: self.theta.at(it),
            s: self.s.at(is),
        }
    }

    pub fn metric_factor(&self, p: TubePoint) -> f64 {
        metric_factor(p.r, p.theta, self.kappa)
    }
}
