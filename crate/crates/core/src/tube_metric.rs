//! Riemannian metric of a twisted flux tube,
//!
//! ```text
//! ds₀² = dr² + r² dθ² + K² ds²,   K = 1 − κ r cos θ,
//! ```
//!
//! the closed-form curvature expressions quoted for it, and an independent
//! finite-difference curvature oracle. The closed-form expressions are
//! mutually inconsistent; every one of them is evaluated and tagged with
//! its source so that the discrepancy can be measured rather than hidden.

use nalgebra::Matrix2;

use crate::error::{DynamoError, Result};

/// Position in tube coordinates. `theta = theta_r − total torsion(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeCoordinates {
    pub r: f64,
    pub theta: f64,
    pub theta_r: f64,
    pub s: f64,
}

impl TubeCoordinates {
    /// Builds coordinates from the untwisted angle and the accumulated
    /// torsion ∫τ ds up to `s`.
    pub fn from_untwisted(r: f64, theta_r: f64, s: f64, total_torsion: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(DynamoError::InvalidParameter {
                name: "r",
                value: r,
                reason: "radius must be non-negative",
            });
        }
        Ok(TubeCoordinates {
            r,
            theta: theta_r - total_torsion,
            theta_r,
            s,
        })
    }
}

/// K(r, θ) = 1 − κ r cos θ.
pub fn metric_factor(r: f64, theta: f64, kappa: f64) -> f64 {
    1.0 - kappa * r * theta.cos()
}

/// Tube metric for a constant-curvature axis and cross-section radius `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeMetric {
    kappa: f64,
    a: f64,
}

impl TubeMetric {
    /// Requires `a |κ| < 1` so that K stays positive across the tube.
    pub fn new(kappa: f64, a: f64) -> Result<Self> {
        if !(kappa.is_finite() && a > 0.0 && a.is_finite()) {
            return Err(DynamoError::InvalidParameter {
                name: "a",
                value: a,
                reason: "tube radius must be positive and finite with finite curvature",
            });
        }
        if a * kappa.abs() >= 1.0 {
            return Err(DynamoError::InvalidParameter {
                name: "a",
                value: a,
                reason: "tube radius must be below the axis radius of curvature",
            });
        }
        Ok(TubeMetric { kappa, a })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn radius(&self) -> f64 {
        self.a
    }

    pub fn k(&self, r: f64, theta: f64) -> f64 {
        metric_factor(r, theta, self.kappa)
    }

    /// A = ∂_r K² = −2 κ cos θ K.
    pub fn a_term(&self, r: f64, theta: f64) -> f64 {
        -2.0 * self.kappa * theta.cos() * self.k(r, theta)
    }

    /// ∂_r A = 2 κ² cos² θ.
    pub fn a_term_dr(&self, theta: f64) -> f64 {
        2.0 * (self.kappa * theta.cos()).powi(2)
    }

    /// Diagonal components (g_rr, g_θθ, g_ss) = (1, r², K²).
    pub fn components(&self, r: f64, theta: f64) -> [f64; 3] {
        [1.0, r * r, self.k(r, theta).powi(2)]
    }
}

/// Where a curvature value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureSource {
    /// −(1/4K²)[2K² ∂_r A − A²] and −(r/2) A.
    StatedChain1,
    /// −K⁴/(2r²) and −K².
    StatedChain2,
    /// −(1/2) r² κ⁴ cos² θ (no θsθs counterpart).
    StatedChain3,
    /// −1/r².
    ThinTubeLimit,
    /// Finite-difference Riemann tensor of the metric.
    Oracle,
}

impl CurvatureSource {
    pub fn tag(self) -> &'static str {
        match self {
            CurvatureSource::StatedChain1 => "stated_chain_1",
            CurvatureSource::StatedChain2 => "stated_chain_2",
            CurvatureSource::StatedChain3 => "stated_chain_3",
            CurvatureSource::ThinTubeLimit => "thin_tube_limit",
            CurvatureSource::Oracle => "oracle",
        }
    }
}

/// R_rsrs and R_θsθs from one source. `None` where the source gives no value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureComponents {
    pub r_rsrs: Option<f64>,
    pub r_thetas_thetas: Option<f64>,
    pub source: CurvatureSource,
}

/// Evaluates all three quoted expressions for R_rsrs and both for R_θsθs.
pub fn riemann_components_stated(r: f64, theta: f64, kappa: f64) -> Result<Vec<CurvatureComponents>> {
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
    let m = TubeMetric { kappa, a: r };
    let k = m.k(r, theta);
    let k2 = k * k;
    let a = m.a_term(r, theta);
    let da = m.a_term_dr(theta);

    let chain1 = CurvatureComponents {
        r_rsrs: Some(-(2.0 * k2 * da - a * a) / (4.0 * k2)),
        r_thetas_thetas: Some(-0.5 * r * a),
        source: CurvatureSource::StatedChain1,
    };
    let chain2 = CurvatureComponents {
        r_rsrs: Some(-0.5 * k2 * k2 / (r * r)),
        r_thetas_thetas: Some(-k2),
        source: CurvatureSource::StatedChain2,
    };
    let chain3 = CurvatureComponents {
        r_rsrs: Some(-0.5 * r * r * kappa.powi(4) * theta.cos().powi(2)),
        r_thetas_thetas: None,
        source: CurvatureSource::StatedChain3,
    };
    Ok(vec![chain1, chain2, chain3])
}

/// Thin-tube limit R_rsrs = −1/r², singular on the axis.
pub fn riemann_thin_tube(r: f64) -> Result<f64> {
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
    Ok(-1.0 / (r * r))
}

/// Thin-tube limit packaged as [`CurvatureComponents`].
pub fn thin_tube_components(r: f64) -> Result<CurvatureComponents> {
    Ok(CurvatureComponents {
        r_rsrs: Some(riemann_thin_tube(r)?),
        r_thetas_thetas: None,
        source: CurvatureSource::ThinTubeLimit,
    })
}

/// Coordinate indices for (r, θ, s).
pub const R: usize = 0;
pub const THETA: usize = 1;
pub const S: usize = 2;

/// Fully covariant Riemann tensor `R[a][b][c][d]` in (r, θ, s) coordinates.
pub type RiemannTensor = [[[[f64; 3]; 3]; 3]; 3];

/// A diagonal metric in three coordinates.
pub trait DiagonalMetric {
    fn diagonal(&self, x: [f64; 3]) -> [f64; 3];
}

impl DiagonalMetric for TubeMetric {
    fn diagonal(&self, x: [f64; 3]) -> [f64; 3] {
        self.components(x[R], x[THETA])
    }
}

impl<F: Fn([f64; 3]) -> [f64; 3]> DiagonalMetric for F {
    fn diagonal(&self, x: [f64; 3]) -> [f64; 3] {
        self(x)
    }
}

fn shifted(x: [f64; 3], moves: &[(usize, f64)]) -> [f64; 3] {
    let mut y = x;
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

/// Finite-difference Riemann tensor of a diagonal metric at `x`.
///
/// First derivatives of the metric (for the Christoffel symbols) and second
/// derivatives use central differences with step `h`. The tensor is
/// assembled with the covariant form
///
/// ```text
/// R_abcd = ½(∂b∂c g_ad + ∂a∂d g_bc − ∂a∂c g_bd − ∂b∂d g_ac)
///        + g_ee (Γ^e_bc Γ^e_ad − Γ^e_bd Γ^e_ac)
/// ```
///
/// so that R^a_bcd = ∂cΓ^a_db − ∂dΓ^a_cb + Γ^a_ce Γ^e_db − Γ^a_de Γ^e_cb
/// lowered with g. Mixed second differences are evaluated once per pair.
pub fn riemann_tensor_fd<M: DiagonalMetric>(metric: &M, x: [f64; 3], h: f64) -> RiemannTensor {
    let g0 = metric.diagonal(x);

    // dg[c][a] = ∂_c g_aa
    let mut dg = [[0.0; 3]; 3];
    let mut plus = [[0.0; 3]; 3];
    let mut minus = [[0.0; 3]; 3];
    for c in 0..3 {
        plus[c] = metric.diagonal(shifted(x, &[(c, h)]));
        minus[c] = metric.diagonal(shifted(x, &[(c, -h)]));
        for a in 0..3 {
            dg[c][a] = (plus[c][a] - minus[c][a]) / (2.0 * h);
        }
    }

    // d2g[c][d][a] = ∂_c ∂_d g_aa, symmetric in (c, d)
    let mut d2g = [[[0.0; 3]; 3]; 3];
    for c in 0..3 {
        for a in 0..3 {
            d2g[c][c][a] = (plus[c][a] - 2.0 * g0[a] + minus[c][a]) / (h * h);
        }
        for d in (c + 1)..3 {
            let pp = metric.diagonal(shifted(x, &[(c, h), (d, h)]));
            let pm = metric.diagonal(shifted(x, &[(c, h), (d, -h)]));
            let mp = metric.diagonal(shifted(x, &[(c, -h), (d, h)]));
            let mm = metric.diagonal(shifted(x, &[(c, -h), (d, -h)]));
            for a in 0..3 {
                let v = (pp[a] - pm[a] - mp[a] + mm[a]) / (4.0 * h * h);
                d2g[c][d][a] = v;
                d2g[d][c][a] = v;
            }
        }
    }

    let g = |a: usize, b: usize| if a == b { g0[a] } else { 0.0 };
    let dgm = |c: usize, a: usize, b: usize| if a == b { dg[c][a] } else { 0.0 };
    let d2gm = |c: usize, d: usize, a: usize, b: usize| if a == b { d2g[c][d][a] } else { 0.0 };

    // Γ^e_bc = (1 / g_ee) · ½ (∂_b g_ec + ∂_c g_eb − ∂_e g_bc)
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for (e, ge) in gamma.iter_mut().enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                ge[b][c] = 0.5 * (dgm(b, e, c) + dgm(c, e, b) - dgm(e, b, c)) / g0[e];
            }
        }
    }

    let mut riemann = [[[[0.0; 3]; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let second = 0.5 * (d2gm(b, c, a, d) + d2gm(a, d, b, c) - d2gm(a, c, b, d) - d2gm(b, d, a, c));
                    let quadratic: f64 = (0..3)
                        .map(|e| g(e, e) * (gamma[e][b][c] * gamma[e][a][d] - gamma[e][b][d] * gamma[e][a][c]))
                        .sum();
                    riemann[a][b][c][d] = second + quadratic;
                }
            }
        }
    }
    riemann
}

/// Default oracle step, 1e-5 · max(r, 1).
pub fn default_oracle_step(r: f64) -> f64 {
    1e-5 * r.max(1.0)
}

/// Finite-difference curvature of the tube metric at (r, θ); requires r > h > 0.
/// The metric is treated as independent of s (constant κ).
pub fn riemann_oracle(kappa: f64, r: f64, theta: f64, h: f64) -> Result<CurvatureComponents> {
    let tensor = riemann_oracle_tensor(kappa, r, theta, h)?;
    Ok(CurvatureComponents {
        r_rsrs: Some(tensor[R][S][R][S]),
        r_thetas_thetas: Some(tensor[THETA][S][THETA][S]),
        source: CurvatureSource::Oracle,
    })
}

/// Full finite-difference Riemann tensor of the tube metric.
pub fn riemann_oracle_tensor(kappa: f64, r: f64, theta: f64, h: f64) -> Result<RiemannTensor> {
    if !(h > 0.0 && h < r) {
        return Err(DynamoError::StepTooLarge { h, r });
    }
    if !(kappa.is_finite() && r.is_finite() && theta.is_finite()) {
        return Err(DynamoError::NonFinite("curvature oracle input"));
    }
    let metric = TubeMetric { kappa, a: r };
    Ok(riemann_tensor_fd(&metric, [r, theta, 0.0], h))
}

/// Largest violation of R_abcd = −R_bacd, R_abcd = −R_abdc and R_abcd = R_cdab.
pub fn symmetry_violation(t: &RiemannTensor) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let v = t[a][b][c][d];
                    worst = worst
                        .max((v + t[b][a][c][d]).abs())
                        .max((v + t[a][b][d][c]).abs())
                        .max((v - t[c][d][a][b]).abs());
                }
            }
        }
    }
    worst
}

/// Rotation between the cylindrical basis (e_r, e_θ) and (n, b):
///
/// ```text
/// e_r = cos θ n + sin θ b,   e_θ = −sin θ n + cos θ b
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTransform {
    /// Columns are e_r and e_θ expressed in (n, b).
    matrix: Matrix2<f64>,
}

pub fn basis_transform(theta: f64) -> BasisTransform {
    let (s, c) = theta.sin_cos();
    BasisTransform {
        matrix: Matrix2::new(c, -s, s, c),
    }
}

impl BasisTransform {
    pub fn matrix(&self) -> Matrix2<f64> {
        self.matrix
    }

    /// e_r as (n, b) coefficients.
    pub fn e_r(&self) -> [f64; 2] {
        [self.matrix[(0, 0)], self.matrix[(1, 0)]]
    }

    /// e_θ as (n, b) coefficients.
    pub fn e_theta(&self) -> [f64; 2] {
        [self.matrix[(0, 1)], self.matrix[(1, 1)]]
    }

    /// (v_r, v_θ) → (v_n, v_b).
    pub fn to_frenet(&self, v_r: f64, v_theta: f64) -> (f64, f64) {
        let v = self.matrix * nalgebra::Vector2::new(v_r, v_theta);
        (v.x, v.y)
    }

    /// (v_n, v_b) → (v_r, v_θ).
    pub fn from_frenet(&self, v_n: f64, v_b: f64) -> (f64, f64) {
        let v = self.matrix.transpose() * nalgebra::Vector2::new(v_n, v_b);
        (v.x, v.y)
    }

    pub fn inverse(&self) -> BasisTransform {
        BasisTransform {
            matrix: self.matrix.transpose(),
        }
    }
}
