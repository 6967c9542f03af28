//! Filament axes described by curvature and torsion along arclength.
//!
//! A [`CurveProfile`] carries κ(s) and τ(s) either as closed-form callables
//! or as a uniformly sampled table (linearly interpolated). Frames are
//! propagated with the Frenet-Serret equations
//!
//! ```text
//! t' = κ n,   n' = -κ t + τ b,   b' = -τ n
//! ```
//!
//! using a fixed-step classical Runge-Kutta scheme. Frames are never
//! re-orthonormalized; the drift is measured on the returned trajectory.
//! Lengths are in cm.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use crate::error::{DynamoError, Result};
use crate::numerics;

pub type Vec3 = Vector3<f64>;

/// Closed-form scalar function of arclength.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tolerance used when validating a [`FrenetFrame`] at construction.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// Closed interval `[min, max]` of arclength with `max > min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    min: f64,
    max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(DynamoError::DegenerateDomain { min, max });
        }
        Ok(Interval { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn length(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.min && s <= self.max
    }
}

#[derive(Clone)]
enum Representation {
    Closed {
        kappa: ScalarFn,
        tau: ScalarFn,
    },
    Sampled {
        s: Vec<f64>,
        kappa: Vec<f64>,
        tau: Vec<f64>,
    },
}

/// Curvature κ(s) and torsion τ(s) of a filament axis (both 1/cm).
#[derive(Clone)]
pub struct CurveProfile {
    repr: Representation,
    domain: Interval,
}

impl fmt::Debug for CurveProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Representation::Closed { .. } => "closed".to_string(),
            Representation::Sampled { s, .. } => format!("sampled({})", s.len()),
        };
        f.debug_struct("CurveProfile")
            .field("representation", &kind)
            .field("domain", &self.domain)
            .finish()
    }
}

impl CurveProfile {
    pub fn closed_form<K, T>(kappa: K, tau: T, domain: Interval) -> Self
    where
        K: Fn(f64) -> f64 + Send + Sync + 'static,
        T: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        CurveProfile {
            repr: Representation::Closed {
                kappa: Arc::new(kappa),
                tau: Arc::new(tau),
            },
            domain,
        }
    }

    pub fn constant(kappa: f64, tau: f64, domain: Interval) -> Self {
        Self::closed_form(move |_| kappa, move |_| tau, domain)
    }

    /// Tabulated profile; values between samples are linearly interpolated
    /// and evaluation outside the table clamps to the end samples.
    pub fn sampled(s: Vec<f64>, kappa: Vec<f64>, tau: Vec<f64>) -> Result<Self> {
        if s.len() < 2 {
            return Err(DynamoError::TooFewSamples(s.len()));
        }
        for values in [&kappa, &tau] {
            if values.len() != s.len() {
                return Err(DynamoError::SampleLengthMismatch {
                    s: s.len(),
                    values: values.len(),
                });
            }
        }
        if let Some(i) = s.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(DynamoError::NonIncreasingSamples(i + 1));
        }
        let domain = Interval::new(s[0], s[s.len() - 1])?;
        Ok(CurveProfile {
            repr: Representation::Sampled { s, kappa, tau },
            domain,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn sample_count(&self) -> Option<usize> {
        match &self.repr {
            Representation::Sampled { s, .. } => Some(s.len()),
            Representation::Closed { .. } => None,
        }
    }

    pub fn kappa(&self, s: f64) -> f64 {
        match &self.repr {
            Representation::Closed { kappa, .. } => kappa(s),
            Representation::Sampled { s: xs, kappa, .. } => interpolate(xs, kappa, s),
        }
    }

    pub fn tau(&self, s: f64) -> f64 {
        match &self.repr {
            Representation::Closed { tau, .. } => tau(s),
            Representation::Sampled { s: xs, tau, .. } => interpolate(xs, tau, s),
        }
    }

    /// ∫ g(κ(s), τ(s)) ds over `[a, b]`.
    ///
    /// Sampled profiles are integrated piecewise between samples with an
    /// eight-point Gauss-Legendre rule, which is exact for any polynomial
    /// `g` of degree ≤ 15. Closed-form profiles use adaptive panel doubling.
    pub fn integrate<G>(&self, a: f64, b: f64, g: G) -> f64
    where
        G: Fn(f64, f64) -> f64,
    {
        if a == b {
            return 0.0;
        }
        if a > b {
            return -self.integrate(b, a, g);
        }
        match &self.repr {
            Representation::Closed { kappa, tau } => {
                let f = |s: f64| g(kappa(s), tau(s));
                numerics::integrate(&f, a, b, 1e-14, 1e-300)
            }
            Representation::Sampled { s: xs, .. } => {
                let f = |s: f64| g(self.kappa(s), self.tau(s));
                let mut breaks = vec![a];
                breaks.extend(xs.iter().copied().filter(|&x| x > a && x < b));
                breaks.push(b);
                breaks
                    .windows(2)
                    .map(|w| numerics::gauss_legendre8(&f, w[0], w[1]))
                    .sum()
            }
        }
    }

    /// Total curvature energy ∫κ² ds over `[a, b]`.
    pub fn curvature_energy(&self, a: f64, b: f64) -> f64 {
        self.integrate(a, b, |k, _| k * k)
    }

    /// Total torsion ∫τ ds over `[a, b]`.
    pub fn total_torsion(&self, a: f64, b: f64) -> f64 {
        self.integrate(a, b, |_, t| t)
    }
}

fn interpolate(xs: &[f64], ys: &[f64], s: f64) -> f64 {
    let last = xs.len() - 1;
    if s <= xs[0] {
        return ys[0];
    }
    if s >= xs[last] {
        return ys[last];
    }
    let hi = xs.partition_point(|&x| x <= s).min(last);
    let lo = hi - 1;
    let w = (s - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + w * (ys[hi] - ys[lo])
}

/// Helical profile with κ(s) = τ(s) = `kappa0` on `domain`.
pub fn helical_profile(kappa0: f64, domain: Interval) -> Result<CurveProfile> {
    if !kappa0.is_finite() {
        return Err(DynamoError::NonFinite("helical curvature"));
    }
    Ok(CurveProfile::constant(kappa0, kappa0, domain))
}

/// Orthonormal right-handed triad (t, n, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    t: Vec3,
    n: Vec3,
    b: Vec3,
}

impl FrenetFrame {
    pub fn new(t: Vec3, n: Vec3, b: Vec3) -> Result<Self> {
        let frame = FrenetFrame { t, n, b };
        let deviation = frame.orthonormality_drift().max(frame.handedness_drift());
        if !(deviation <= FRAME_TOLERANCE) {
            return Err(DynamoError::InvalidFrame { deviation });
        }
        Ok(frame)
    }

    /// t = x̂, n = ŷ, b = ẑ.
    pub fn identity() -> Self {
        FrenetFrame {
            t: Vec3::x(),
            n: Vec3::y(),
            b: Vec3::z(),
        }
    }

    pub fn t(&self) -> Vec3 {
        self.t
    }

    pub fn n(&self) -> Vec3 {
        self.n
    }

    pub fn b(&self) -> Vec3 {
        self.b
    }

    /// Largest of |‖t‖−1|, |‖n‖−1|, |‖b‖−1|, |t·n|, |t·b|, |n·b|.
    pub fn orthonormality_drift(&self) -> f64 {
        [
            (self.t.norm() - 1.0).abs(),
            (self.n.norm() - 1.0).abs(),
            (self.b.norm() - 1.0).abs(),
            self.t.dot(&self.n).abs(),
            self.t.dot(&self.b).abs(),
            self.n.dot(&self.b).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Scalar triple product t·(n×b); +1 for a right-handed orthonormal frame.
    pub fn handedness(&self) -> f64 {
        self.t.dot(&self.n.cross(&self.b))
    }

    pub fn handedness_drift(&self) -> f64 {
        (self.handedness() - 1.0).abs()
    }

    fn to_state(self) -> [f64; 9] {
        [
            self.t.x, self.t.y, self.t.z, self.n.x, self.n.y, self.n.z, self.b.x, self.b.y, self.b.z,
        ]
    }

    fn from_state(y: &[f64; 9]) -> Self {
        FrenetFrame {
            t: Vec3::new(y[0], y[1], y[2]),
            n: Vec3::new(y[3], y[4], y[5]),
            b: Vec3::new(y[6], y[7], y[8]),
        }
    }
}

/// Derivatives of the three frame vectors, in arclength or time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameDerivative {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
}

/// Frenet-Serret arclength derivatives (κn, −κt + τb, −τn).
pub fn frenet_arclength_derivative(frame: &FrenetFrame, kappa: f64, tau: f64) -> FrameDerivative {
    FrameDerivative {
        t: frame.n * kappa,
        n: frame.t * (-kappa) + frame.b * tau,
        b: frame.n * (-tau),
    }
}

/// Time evolution of a holonomic frame: (κ'b − κτn, κτt, −κ't).
pub fn frame_time_derivative(kappa: f64, kappa_prime: f64, tau: f64, frame: &FrenetFrame) -> FrameDerivative {
    FrameDerivative {
        t: frame.b * kappa_prime - frame.n * (kappa * tau),
        n: frame.t * (kappa * tau),
        b: frame.t * (-kappa_prime),
    }
}

/// Frames sampled along arclength.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameTrajectory {
    samples: Vec<(f64, FrenetFrame)>,
}

impl FrameTrajectory {
    pub fn samples(&self) -> &[(f64, FrenetFrame)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> (f64, FrenetFrame) {
        self.samples[0]
    }

    pub fn last(&self) -> (f64, FrenetFrame) {
        self.samples[self.samples.len() - 1]
    }

    pub fn max_orthonormality_drift(&self) -> f64 {
        self.samples
            .iter()
            .map(|(_, f)| f.orthonormality_drift())
            .fold(0.0, f64::max)
    }

    pub fn max_handedness_drift(&self) -> f64 {
        self.samples
            .iter()
            .map(|(_, f)| f.handedness_drift())
            .fold(0.0, f64::max)
    }
}

fn frame_rhs(y: &[f64; 9], kappa: f64, tau: f64) -> [f64; 9] {
    let d = frenet_arclength_derivative(&FrenetFrame::from_state(y), kappa, tau);
    [d.t.x, d.t.y, d.t.z, d.n.x, d.n.y, d.n.z, d.b.x, d.b.y, d.b.z]
}

/// Integrates the Frenet-Serret equations over the profile's domain.
///
/// `step` is an upper bound: the domain is split into `ceil(L / step)`
/// equal steps so the last sample lands exactly on `s_max`.
pub fn evolve_frame(profile: &CurveProfile, frame0: &FrenetFrame, step: f64) -> Result<FrameTrajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(DynamoError::InvalidStep(step));
    }
    FrenetFrame::new(frame0.t, frame0.n, frame0.b)?;

    let domain = profile.domain();
    let n_steps = numerics::step_count(domain.min(), domain.max(), step);
    let h = domain.length() / n_steps as f64;

    let curvature_at = |s: f64| -> Result<(f64, f64)> {
        let (k, t) = (profile.kappa(s), profile.tau(s));
        if k.is_finite() && t.is_finite() {
            Ok((k, t))
        } else {
            Err(DynamoError::NonFiniteProfile { s })
        }
    };

    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut y = frame0.to_state();
    samples.push((domain.min(), *frame0));
    let mut start = curvature_at(domain.min())?;
    for i in 0..n_steps {
        let s = domain.min() + i as f64 * h;
        let s_next = if i + 1 == n_steps { domain.max() } else { s + h };
        let (k1c, t1c) = start;
        let (kmc, tmc) = curvature_at(s + 0.5 * h)?;
        let end = curvature_at(s_next)?;

        let k1 = frame_rhs(&y, k1c, t1c);
        let k2 = frame_rhs(&offset(&y, 0.5 * h, &k1), kmc, tmc);
        let k3 = frame_rhs(&offset(&y, 0.5 * h, &k2), kmc, tmc);
        let k4 = frame_rhs(&offset(&y, h, &k3), end.0, end.1);
        for j in 0..9 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        samples.push((s_next, FrenetFrame::from_state(&y)));
        start = end;
    }
    Ok(FrameTrajectory { samples })
}

fn offset(y: &[f64; 9], a: f64, k: &[f64; 9]) -> [f64; 9] {
    let mut out = *y;
    for j in 0..9 {
        out[j] += a * k[j];
    }
    out
}

/// Ordered (s, X) samples of a space curve, X in cm.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCurve {
    points: Vec<(f64, Vec3)>,
}

const CHORD_SLACK: f64 = 1e-9;

impl SpaceCurve {
    pub fn new(points: Vec<(f64, Vec3)>) -> Result<Self> {
        if points.is_empty() {
            return Err(DynamoError::EmptyTrajectory);
        }
        for (i, w) in points.windows(2).enumerate() {
            let ds = w[1].0 - w[0].0;
            if !(ds > 0.0) {
                return Err(DynamoError::NonIncreasingSamples(i + 1));
            }
            if (w[1].1 - w[0].1).norm() > ds * (1.0 + CHORD_SLACK) {
                return Err(DynamoError::ChordExceedsArclength(i + 1));
            }
        }
        Ok(SpaceCurve { points })
    }

    pub fn points(&self) -> &[(f64, Vec3)] {
        &self.points
    }

    fn arclengths(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    fn positions(&self) -> Vec<Vec3> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// Finite-difference tangent X'(s) at every sample (second order).
    pub fn tangent_estimates(&self) -> Vec<(f64, Vec3)> {
        let s = self.arclengths();
        let d = derivative_estimates(&s, &self.positions());
        s.into_iter().zip(d).collect()
    }

    /// Curvature |X''(s)| at interior samples from three-point differences.
    pub fn curvature_estimates(&self) -> Vec<(f64, f64)> {
        let s = self.arclengths();
        let x = self.positions();
        (1..s.len().saturating_sub(1))
            .map(|i| {
                let h1 = s[i] - s[i - 1];
                let h2 = s[i + 1] - s[i];
                let second = (x[i - 1] / (h1 * (h1 + h2)) - x[i] / (h1 * h2) + x[i + 1] / (h2 * (h1 + h2))) * 2.0;
                (s[i], second.norm())
            })
            .collect()
    }
}

/// Second-order first derivatives on a non-uniform grid (one-sided at the ends).
fn derivative_estimates(s: &[f64], f: &[Vec3]) -> Vec<Vec3> {
    let n = s.len();
    match n {
        0 => Vec::new(),
        1 => vec![Vec3::zeros()],
        2 => {
            let d = (f[1] - f[0]) / (s[1] - s[0]);
            vec![d, d]
        }
        _ => (0..n)
            .map(|i| {
                if i == 0 {
                    let (h1, h2) = (s[1] - s[0], s[2] - s[1]);
                    f[0] * (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) + f[1] * ((h1 + h2) / (h1 * h2))
                        - f[2] * (h1 / (h2 * (h1 + h2)))
                } else if i == n - 1 {
                    let (a, b) = (s[n - 1] - s[n - 2], s[n - 2] - s[n - 3]);
                    f[n - 1] * ((2.0 * a + b) / (a * (a + b))) - f[n - 2] * ((a + b) / (a * b))
                        + f[n - 3] * (a / (b * (a + b)))
                } else {
                    let (h1, h2) = (s[i] - s[i - 1], s[i + 1] - s[i]);
                    f[i - 1] * (-h2 / (h1 * (h1 + h2))) + f[i] * ((h2 - h1) / (h1 * h2))
                        + f[i + 1] * (h1 / (h2 * (h1 + h2)))
                }
            })
            .collect(),
    }
}

/// Integrates X' = t from `x0` along the sampled frames.
///
/// Uses the end-corrected trapezoid rule
/// `X[i+1] = X[i] + h/2 (t[i] + t[i+1]) + h²/12 (t'[i] − t'[i+1])`
/// with t' estimated from the neighbouring frames.
pub fn reconstruct_curve(frames: &[(f64, FrenetFrame)], x0: Vec3) -> Result<SpaceCurve> {
    if frames.is_empty() {
        return Err(DynamoError::EmptyTrajectory);
    }
    if let Some(i) = frames.windows(2).position(|w| !(w[1].0 > w[0].0)) {
        return Err(DynamoError::NonIncreasingSamples(i + 1));
    }
    let s: Vec<f64> = frames.iter().map(|f| f.0).collect();
    let t: Vec<Vec3> = frames.iter().map(|f| f.1.t()).collect();
    if t.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
        return Err(DynamoError::NonFinite("frame tangent"));
    }
    let dt = derivative_estimates(&s, &t);

    let mut points = Vec::with_capacity(frames.len());
    let mut x = x0;
    points.push((s[0], x));
    for i in 0..s.len() - 1 {
        let h = s[i + 1] - s[i];
        x += (t[i] + t[i + 1]) * (0.5 * h) + (dt[i] - dt[i + 1]) * (h * h / 12.0);
        points.push((s[i + 1], x));
    }
    SpaceCurve::new(points)
}
