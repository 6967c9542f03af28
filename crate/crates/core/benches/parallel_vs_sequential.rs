use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tube_dynamo::cli::{run_points, ScenarioConfig};
use tube_dynamo::exec::{self, Execution};
use tube_dynamo::flows::{beltrami_residual_with, TubeVectorField};
use tube_dynamo::grid::{GridAxis, TubeGrid, TubePoint};
use tube_dynamo::induction::{marginal_axial_field, zeldovich_rate_with, FieldSample, VolumeElement};
use tube_dynamo::tube_metric::{default_oracle_step, riemann_oracle_tensor};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn tube_grid(n: usize) -> TubeGrid {
    TubeGrid::new(
        GridAxis::cell_centres(0.0, 1.0, n).unwrap(),
        GridAxis::periodic(0.0, 2.0 * PI, n).unwrap(),
        GridAxis::periodic(0.0, 2.0 * PI, n).unwrap(),
        0.2,
    )
    .unwrap()
}

fn zeldovich(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeldovich_rate");
    for n in [32, 64] {
        let grid = tube_grid(n);
        let fields = |p: TubePoint| {
            let b_theta = 1.0 + 0.5 * p.r * p.theta.cos();
            FieldSample {
                b_s: marginal_axial_field(b_theta, 0.7, p.r) + 0.1 * p.s.sin(),
                b_theta,
                v_s: 0.3 + p.s.cos(),
                v_theta: 1.0 + p.r,
            }
        };
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &grid, |b, g| {
                b.iter(|| zeldovich_rate_with(fields, 0.7, black_box(g), VolumeElement::TubeMetric, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn beltrami(c: &mut Criterion) {
    let mut group = c.benchmark_group("beltrami_residual");
    for n in [32, 48] {
        let field = TubeVectorField::from_fn(tube_grid(n), |p| {
            [(p.s + p.theta).sin(), (p.s + p.theta).cos(), 0.0]
        });
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &field, |b, f| {
                b.iter(|| beltrami_residual_with(black_box(f), 1.0, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("filament_sweep");
    group.sample_size(10);
    let cfg = ScenarioConfig::parse("[diffusive_filament]\nsweep = eta 1e-4 1e-1 16\nsweep_spacing = log\n").unwrap();
    let points = cfg.points();
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| run_points(cfg.scenario, black_box(&points), 1e-9, mode)));
    }
    group.finish();
}

fn oracle_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("curvature_oracle_batch");
    let pts: Vec<(f64, f64)> = (0..256)
        .map(|i| (0.1 + 0.8 * (i as f64 + 0.5) / 256.0, 2.0 * PI * (i as f64 * 0.618_033_988_7).fract()))
        .collect();
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map_indexed(pts.len(), mode, |i| {
                    let (r, theta) = pts[i];
                    riemann_oracle_tensor(0.2, r, theta, default_oracle_step(r)).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, zeldovich, beltrami, sweep, oracle_batch);
criterion_main!(benches);
