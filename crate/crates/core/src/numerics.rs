//! Small numerical kernels shared by the physics modules: a fixed-step
//! classical Runge-Kutta integrator and Gauss-Legendre quadrature.

/// One classical fourth-order Runge-Kutta step for `y' = f(x, y)`.
pub fn rk4_step<const N: usize, F>(f: &F, x: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(x, y);
    let k2 = f(x + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(x + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(x + h, &axpy(y, h, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Number of uniform steps of length at most `max_step` covering `[x0, x1]`.
pub fn step_count(x0: f64, x1: f64, max_step: f64) -> usize {
    let n = ((x1 - x0) / max_step).ceil();
    if n < 1.0 {
        1
    } else {
        n as usize
    }
}

/// Integrates `y' = f(x, y)` from `x0` to `x1` with uniform steps no longer
/// than `max_step`, returning only the final state.
pub fn rk4_integrate<const N: usize, F>(f: F, x0: f64, x1: f64, y0: [f64; N], max_step: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let n = step_count(x0, x1, max_step);
    let h = (x1 - x0) / n as f64;
    let mut y = y0;
    for i in 0..n {
        y = rk4_step(&f, x0 + i as f64 * h, &y, h);
    }
    y
}

const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Eight-point Gauss-Legendre rule on `[a, b]` (exact for degree ≤ 15).
pub fn gauss_legendre8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

/// Composite eight-point Gauss-Legendre over `panels` equal panels.
pub fn composite_gl8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            gauss_legendre8(f, lo, hi)
        })
        .sum()
}

const MAX_PANEL_DOUBLINGS: u32 = 20;

/// Integrates `f` over `[a, b]`, doubling the panel count of a composite
/// Gauss-Legendre rule until two successive estimates agree to
/// `max(abs_tol, rel_tol * |I|)`. Returns the finer estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut panels = 1usize;
    let mut coarse = composite_gl8(f, a, b, panels);
    for _ in 0..MAX_PANEL_DOUBLINGS {
        panels *= 2;
        let fine = composite_gl8(f, a, b, panels);
        if !fine.is_finite() {
            return fine;
        }
        if (fine - coarse).abs() <= abs_tol.max(rel_tol * fine.abs()) {
            return fine;
        }
        coarse = fine;
    }
    coarse
}
