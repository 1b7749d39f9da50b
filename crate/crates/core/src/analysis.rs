//! Pattern analysis: exact and fitted fringe visibility, which-path
//! distinguishability, and CHSH correlation measurements.

use nalgebra::{Matrix3, Vector3};

use crate::eraser::{BenchGeometry, EraserState};
use crate::error::{Error, Result};
use crate::optics::polarizer;
use crate::qstate::{self, StateVector};
use crate::scan::ScanRecord;
use crate::tol;

/// Result of a linearized sinusoid fit to a fringe pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityFit {
    /// Mean level of the envelope-free sinusoid.
    pub offset: f64,
    /// Fringe amplitude (non-negative).
    pub amplitude: f64,
    /// Fringe phase: the model reads offset + amplitude·sin(δ(x) + phase).
    pub phase: f64,
    /// amplitude / offset, clamped to [0, 1].
    pub visibility: f64,
    /// Root-mean-square residual of the fit, in the units of the data.
    pub rms_residual: f64,
}

/// Contrast (max − min) / (max + min) of a sampled pattern.
///
/// The pattern must be non-negative with the envelope already divided out
/// (or restricted to the central fringe); sampling must include the actual
/// extrema for the value to be exact.
pub fn visibility_exact(pattern: &[f64]) -> Result<f64> {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for &v in pattern {
        max = max.max(v);
        min = min.min(v);
    }
    if pattern.is_empty() || max + min < tol::DEGENERATE_PATTERN {
        return Err(Error::DegeneratePattern);
    }
    Ok((max - min) / (max + min))
}

/// Least-squares fit of `values ≈ envelope(x) · (offset + amplitude·sin(δ(x) + phase))`.
///
/// Linear in (offset, amplitude·cos phase, amplitude·sin phase), so the fit
/// is a single 3×3 solve with no iteration. Requires at least 8 points
/// spanning roughly one fringe period.
pub fn fit_sinusoid(
    positions: &[f64],
    values: &[f64],
    geometry: &BenchGeometry,
) -> Result<VisibilityFit> {
    if positions.len() != values.len() {
        return Err(Error::FitFailed(format!(
            "{} positions but {} values",
            positions.len(),
            values.len()
        )));
    }
    let n = positions.len();
    if n < 8 {
        return Err(Error::FitFailed(format!(
            "need at least 8 scan points, got {n}"
        )));
    }
    let deltas: Vec<f64> = positions.iter().map(|&x| geometry.delta(x)).collect();
    let span = deltas.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - deltas.iter().cloned().fold(f64::INFINITY, f64::min);
    if span < 0.9 * std::f64::consts::TAU {
        return Err(Error::FitFailed(format!(
            "scan spans {span:.3} rad of fringe phase, need about one full period"
        )));
    }

    let mut ata = Matrix3::<f64>::zeros();
    let mut atv = Vector3::<f64>::zeros();
    let mut env_sq = 0.0;
    let mut env_dot = 0.0;
    for ((&x, &d), &v) in positions.iter().zip(&deltas).zip(values) {
        let e = geometry.envelope(x);
        let row = [e, e * d.sin(), e * d.cos()];
        for r in 0..3 {
            for c in 0..3 {
                ata[(r, c)] += row[r] * row[c];
            }
            atv[r] += row[r] * v;
        }
        env_sq += e * e;
        env_dot += e * v;
    }
    let solution = ata
        .lu()
        .solve(&atv)
        .ok_or_else(|| Error::FitFailed("singular normal equations".into()))?;
    let (offset, p, q) = (solution[0], solution[1], solution[2]);

    let mut rss = 0.0;
    for ((&x, &d), &v) in positions.iter().zip(&deltas).zip(values) {
        let e = geometry.envelope(x);
        let model = e * (offset + p * d.sin() + q * d.cos());
        rss += (model - v) * (model - v);
    }
    // Sanity floor: the sinusoid contains the constant model, so it can
    // never fit worse than the best envelope-only scaling.
    if env_sq > 0.0 {
        let c0 = env_dot / env_sq;
        let rss_const: f64 = positions
            .iter()
            .zip(values)
            .map(|(&x, &v)| {
                let m = geometry.envelope(x) * c0;
                (m - v) * (m - v)
            })
            .sum();
        if rss > rss_const + tol::ALGEBRAIC * (1.0 + rss_const) {
            return Err(Error::FitFailed(
                "sinusoid fit did not reach the constant-model residual".into(),
            ));
        }
    }

    let amplitude = p.hypot(q);
    if !offset.is_finite() || offset <= 0.0 {
        return Err(Error::FitFailed(format!(
            "fitted offset {offset} is not a positive level"
        )));
    }
    Ok(VisibilityFit {
        offset,
        amplitude,
        phase: q.atan2(p),
        visibility: (amplitude / offset).clamp(0.0, 1.0),
        rms_residual: (rss / n as f64).sqrt(),
    })
}

/// [`fit_sinusoid`] applied to the counts of a recorded scan.
pub fn fit_fringes(scan: &ScanRecord, geometry: &BenchGeometry) -> Result<VisibilityFit> {
    let counts: Vec<f64> = scan.coincidences.iter().map(|&c| c as f64).collect();
    fit_sinusoid(&scan.positions, &counts, geometry)
}

/// Which-path knowledge carried by the joint polarization markers:
/// D = √(1 − |⟨m₁|m₂⟩|²) for the normalized markers behind each slit.
/// An empty path branch counts as fully distinguishable.
pub fn distinguishability(state: &EraserState) -> f64 {
    match state.branch_overlap() {
        None => 1.0,
        Some(overlap) => (1.0 - overlap.norm_sqr()).max(0.0).sqrt(),
    }
}

/// Analyzer settings for a CHSH measurement: a/a′ on the signal arm,
/// b/b′ on the idler arm, all linear-polarizer angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshAngles {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
}

/// Polarization correlation E(a, b) of a two-qubit state from the four
/// transmit/absorb outcome probabilities of linear polarizers at `a` (first
/// subsystem) and `b` (second subsystem).
pub fn correlation(state: &StateVector, a: f64, b: f64) -> Result<f64> {
    if state.dims() != [2, 2] {
        return Err(Error::DimsMismatch {
            expected: vec![2, 2],
            found: state.dims().to_vec(),
        });
    }
    let half = std::f64::consts::FRAC_PI_2;
    let mut signed_sum = 0.0;
    let mut total = 0.0;
    for (ia, pa) in [polarizer(a), polarizer(a + half)].iter().enumerate() {
        let first = qstate::apply(pa, state, 0)?;
        for (ib, pb) in [polarizer(b), polarizer(b + half)].iter().enumerate() {
            let joint = qstate::apply(pb, &first, 1)?.norm_sqr();
            let sign = if ia == ib { 1.0 } else { -1.0 };
            signed_sum += sign * joint;
            total += joint;
        }
    }
    Ok(signed_sum / total)
}

/// CHSH combination S = |E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)|.
pub fn chsh(state: &StateVector, angles: &ChshAngles) -> Result<f64> {
    let e_ab = correlation(state, angles.a, angles.b)?;
    let e_ab2 = correlation(state, angles.a, angles.b_prime)?;
    let e_a2b = correlation(state, angles.a_prime, angles.b)?;
    let e_a2b2 = correlation(state, angles.a_prime, angles.b_prime)?;
    Ok((e_ab - e_ab2 + e_a2b + e_a2b2).abs())
}

/// Maximizes [`chsh`] over analyzer angles: coarse grid over the E(a, b)
/// table, then deterministic coordinate descent with a shrinking step.
pub fn optimize_chsh(state: &StateVector) -> Result<(f64, ChshAngles)> {
    const GRID: usize = 12;
    let step = std::f64::consts::PI / GRID as f64;

    // Polarizer settings repeat with period π, so a GRID×GRID table of
    // correlations covers every grid combination of the four angles.
    let mut table = [[0.0; GRID]; GRID];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = correlation(state, i as f64 * step, j as f64 * step)?;
        }
    }
    let mut best = (f64::NEG_INFINITY, [0usize; 4]);
    for a in 0..GRID {
        for ap in 0..GRID {
            for b in 0..GRID {
                for bp in 0..GRID {
                    let s = (table[a][b] - table[a][bp] + table[ap][b] + table[ap][bp]).abs();
                    if s > best.0 {
                        best = (s, [a, ap, b, bp]);
                    }
                }
            }
        }
    }

    let mut angles = best.1.map(|k| k as f64 * step);
    let eval = |angles: &[f64; 4]| -> Result<f64> {
        chsh(
            state,
            &ChshAngles {
                a: angles[0],
                a_prime: angles[1],
                b: angles[2],
                b_prime: angles[3],
            },
        )
    };
    let mut current = eval(&angles)?;
    let mut width = step;
    while width > 1e-9 {
        let mut improved = false;
        for k in 0..4 {
            for dir in [-1.0, 1.0] {
                let mut trial = angles;
                trial[k] += dir * width;
                let s = eval(&trial)?;
                if s > current {
                    current = s;
                    angles = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            width *= 0.5;
        }
    }
    Ok((
        current,
        ChshAngles {
            a: angles[0],
            a_prime: angles[1],
            b: angles[2],
            b_prime: angles[3],
        },
    ))
}
