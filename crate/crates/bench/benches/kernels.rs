//! Benchmarks for the hot paths: pattern evaluation, scan sampling, fringe
//! fitting, and CHSH optimization.

use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use eraserlab_core::analysis::{fit_sinusoid, optimize_chsh};
use eraserlab_core::scan::centered_positions;
use eraserlab_core::{
    simulate_scan, spdc_state, BenchGeometry, EraserState, PairSourceSpec, ScanConfig,
};

fn marked_state() -> EraserState {
    EraserState::build_initial(&PairSourceSpec::default())
        .apply_slit_qwps(FRAC_PI_4, -FRAC_PI_4)
}

fn scan_config() -> ScanConfig {
    ScanConfig {
        geometry: BenchGeometry::default(),
        phi: 0.0,
        qwp_angles: Some((FRAC_PI_4, -FRAC_PI_4)),
        polarizer_angle: Some(FRAC_PI_4),
        peak_rate: 200.0,
        dwell_scale: 2.0,
        qwp_misalignment: 0.0,
        positions: centered_positions(6.0e-3, 60),
        seed: 7,
    }
}

fn bench_kernels(c: &mut Criterion) {
    let geometry = BenchGeometry::default();
    let positions = centered_positions(6.0e-3, 60);
    let state = marked_state();

    c.bench_function("coincidence_pattern_60_points", |b| {
        b.iter(|| {
            state
                .coincidence_pattern(black_box(Some(FRAC_PI_4)), &geometry, &positions)
                .unwrap()
        })
    });

    let config = scan_config();
    c.bench_function("simulate_scan_60_points", |b| {
        b.iter(|| simulate_scan(black_box(&config)).unwrap())
    });

    let pattern = state
        .coincidence_pattern(Some(FRAC_PI_4), &geometry, &positions)
        .unwrap();
    c.bench_function("fit_sinusoid_60_points", |b| {
        b.iter(|| fit_sinusoid(black_box(&positions), black_box(&pattern), &geometry).unwrap())
    });

    let pair = spdc_state(&PairSourceSpec::default());
    c.bench_function("optimize_chsh", |b| {
        b.iter(|| optimize_chsh(black_box(&pair)).unwrap())
    });
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);
