//! Command implementations. Every command writes one CSV of data rows and
//! one JSON sidecar holding the derived summary plus the canonical form of
//! the configuration that produced it. Outputs are deterministic: repeated
//! runs with the same configuration produce byte-identical files.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_2, PI, TAU};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use eraserlab_core::analysis::{chsh, correlation, fit_fringes, fit_sinusoid, optimize_chsh};
use eraserlab_core::{
    simulate_scan, Arm, CollapseOrder, EraserState, MeasurementOutcome, PolarizationBasis,
    VisibilityFit,
};
use serde::Serialize;

use crate::config::Config;

/// Fringe-fit parameters as they appear in JSON sidecars.
#[derive(Debug, Serialize)]
pub struct FitSummary {
    pub offset: f64,
    pub amplitude: f64,
    pub phase_rad: f64,
    pub visibility: f64,
    pub rms_residual: f64,
}

impl From<VisibilityFit> for FitSummary {
    fn from(fit: VisibilityFit) -> Self {
        Self {
            offset: fit.offset,
            amplitude: fit.amplitude,
            phase_rad: fit.phase,
            visibility: fit.visibility,
            rms_residual: fit.rms_residual,
        }
    }
}

/// The signal-arm state with the configured plates applied; the alignment
/// error goes onto the slit-1 plate.
pub fn engine_state(config: &Config) -> EraserState {
    let state = EraserState::build_initial(&config.source_spec());
    match config.qwp_angles {
        Some((t1, t2)) => state.apply_slit_qwps(t1 + config.misalignment, t2),
        None => state,
    }
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing summary")?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn output_paths(out: &Path, stem: &str) -> (PathBuf, PathBuf) {
    (
        out.join(format!("{stem}.csv")),
        out.join(format!("{stem}.json")),
    )
}

fn report(csv: &Path, json: &Path) {
    println!("wrote {}", csv.display());
    println!("wrote {}", json.display());
}

/// Folds a phase difference into (−π, π].
fn wrap_phase(phase: f64) -> f64 {
    let mut wrapped = phase % TAU;
    if wrapped > PI {
        wrapped -= TAU;
    } else if wrapped <= -PI {
        wrapped += TAU;
    }
    wrapped
}

#[derive(Serialize)]
struct PatternSummary {
    command: &'static str,
    tag: Option<String>,
    points: usize,
    peak_rate: f64,
    dwell_scale: f64,
    fit: Option<FitSummary>,
    config: String,
}

/// Expected coincidence counts over the scan, no sampling.
pub fn pattern(config: &Config, out: &Path) -> Result<()> {
    let xs = config.positions();
    let probabilities = engine_state(config)
        .coincidence_pattern(config.polarizer_angle, &config.geometry, &xs)
        .context("computing the coincidence pattern")?;
    let scale = config.peak_rate * config.dwell_scale;
    let expected: Vec<f64> = probabilities.iter().map(|p| scale * p).collect();

    let rows: Vec<Vec<String>> = xs
        .iter()
        .zip(&expected)
        .map(|(&x, &v)| vec![fmt(x), fmt(v)])
        .collect();
    let (csv_path, json_path) = output_paths(out, "pattern");
    write_csv(&csv_path, &["position_m", "expected"], &rows)?;
    write_json(
        &json_path,
        &PatternSummary {
            command: "pattern",
            tag: config.tag.clone(),
            points: xs.len(),
            peak_rate: config.peak_rate,
            dwell_scale: config.dwell_scale,
            fit: fit_sinusoid(&xs, &expected, &config.geometry)
                .ok()
                .map(Into::into),
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}

#[derive(Serialize)]
struct ScanSummary {
    command: &'static str,
    tag: Option<String>,
    seed: u64,
    total_counts: u64,
    fit: Option<FitSummary>,
    config: String,
}

/// Poisson-sampled detector scan.
pub fn scan(config: &Config, out: &Path) -> Result<()> {
    let record = simulate_scan(&config.scan_config()).context("simulating the scan")?;
    let rows: Vec<Vec<String>> = record
        .positions
        .iter()
        .zip(&record.expected)
        .zip(&record.coincidences)
        .map(|((&x, &e), &c)| vec![fmt(x), fmt(e), c.to_string()])
        .collect();
    let (csv_path, json_path) = output_paths(out, "scan");
    write_csv(&csv_path, &["position_m", "expected", "counts"], &rows)?;
    write_json(
        &json_path,
        &ScanSummary {
            command: "scan",
            tag: config.tag.clone(),
            seed: record.seed,
            total_counts: record.coincidences.iter().sum(),
            fit: fit_fringes(&record, &config.geometry).ok().map(Into::into),
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}

#[derive(Serialize)]
struct EraseDemoSummary {
    command: &'static str,
    tag: Option<String>,
    polarizer_angle_rad: f64,
    fringe_fit: Option<FitSummary>,
    antifringe_fit: Option<FitSummary>,
    /// Fitted fringe phase minus antifringe phase, wrapped into (−π, π].
    phase_difference_rad: Option<f64>,
    /// Largest |fringe + antifringe − no_polarizer| over the scan.
    max_sum_deviation: f64,
    config: String,
}

/// Fringes, antifringes, their sum, and the unconditioned pattern, all in
/// coincidence-probability units (bare double-slit peak = 1).
pub fn erase_demo(config: &Config, out: &Path) -> Result<()> {
    let alpha = config.polarizer_angle.unwrap_or(FRAC_PI_4);
    let state = engine_state(config);
    let xs = config.positions();
    let fringe = state
        .coincidence_pattern(Some(alpha), &config.geometry, &xs)
        .context("computing the fringe pattern")?;
    let antifringe = state
        .coincidence_pattern(Some(alpha + FRAC_PI_2), &config.geometry, &xs)
        .context("computing the antifringe pattern")?;
    let no_polarizer = state
        .coincidence_pattern(None, &config.geometry, &xs)
        .context("computing the unconditioned pattern")?;
    let sum: Vec<f64> = fringe
        .iter()
        .zip(&antifringe)
        .map(|(f, a)| f + a)
        .collect();
    let max_sum_deviation = sum
        .iter()
        .zip(&no_polarizer)
        .map(|(s, n)| (s - n).abs())
        .fold(0.0, f64::max);

    let rows: Vec<Vec<String>> = (0..xs.len())
        .map(|i| {
            vec![
                fmt(xs[i]),
                fmt(fringe[i]),
                fmt(antifringe[i]),
                fmt(sum[i]),
                fmt(no_polarizer[i]),
            ]
        })
        .collect();
    let (csv_path, json_path) = output_paths(out, "erase_demo");
    write_csv(
        &csv_path,
        &["position_m", "fringe", "antifringe", "sum", "no_polarizer"],
        &rows,
    )?;

    let fringe_fit = fit_sinusoid(&xs, &fringe, &config.geometry).ok();
    let antifringe_fit = fit_sinusoid(&xs, &antifringe, &config.geometry).ok();
    let phase_difference_rad = match (&fringe_fit, &antifringe_fit) {
        (Some(f), Some(a)) => Some(wrap_phase(f.phase - a.phase)),
        _ => None,
    };
    write_json(
        &json_path,
        &EraseDemoSummary {
            command: "erase-demo",
            tag: config.tag.clone(),
            polarizer_angle_rad: alpha,
            fringe_fit: fringe_fit.map(Into::into),
            antifringe_fit: antifringe_fit.map(Into::into),
            phase_difference_rad,
            max_sum_deviation,
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}

#[derive(Serialize)]
struct WhichpathSummary {
    command: &'static str,
    tag: Option<String>,
    total_joint_probability: f64,
    config: String,
}

/// Joint idler/signal outcome table: linear analysis of the idler heralds
/// a circular analysis of the signal, exposing the slit probabilities.
pub fn whichpath(config: &Config, out: &Path) -> Result<()> {
    let state = engine_state(config);
    let mut rows = Vec::with_capacity(4);
    let mut total = 0.0;
    for (idler_result, idler_label) in [(0, "x"), (1, "y")] {
        let idler = MeasurementOutcome {
            arm: Arm::Idler,
            basis: PolarizationBasis::Linear,
            result: idler_result,
        };
        let (heralded, p_idler) = state
            .condition_with_probability(&idler)
            .with_context(|| format!("conditioning on idler {idler_label}"))?;
        for (signal_result, signal_label) in [(0, "R"), (1, "L")] {
            let signal = MeasurementOutcome {
                arm: Arm::Signal,
                basis: PolarizationBasis::Circular,
                result: signal_result,
            };
            let (resolved, p_signal) = heralded
                .condition_with_probability(&signal)
                .with_context(|| format!("conditioning on signal {signal_label}"))?;
            let joint = p_idler * p_signal;
            total += joint;
            let [slit1, slit2] = resolved.slit_probabilities();
            rows.push(vec![
                idler_label.to_string(),
                signal_label.to_string(),
                fmt(joint),
                fmt(slit1),
                fmt(slit2),
            ]);
        }
    }
    let (csv_path, json_path) = output_paths(out, "whichpath");
    write_csv(
        &csv_path,
        &[
            "idler_outcome",
            "signal_outcome",
            "joint_probability",
            "slit1_probability",
            "slit2_probability",
        ],
        &rows,
    )?;
    write_json(
        &json_path,
        &WhichpathSummary {
            command: "whichpath",
            tag: config.tag.clone(),
            total_joint_probability: total,
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}

#[derive(Serialize)]
struct OrderingSummary {
    command: &'static str,
    tag: Option<String>,
    polarizer_angle_rad: f64,
    max_abs_difference: f64,
    config: String,
}

/// The polarizer-conditioned pattern computed with both collapse orders,
/// in coincidence-probability units.
pub fn ordering(config: &Config, out: &Path) -> Result<()> {
    let alpha = config.polarizer_angle.unwrap_or(FRAC_PI_4);
    let state = engine_state(config);
    let xs = config.positions();
    let idler_first = state
        .pattern_by_ordering(alpha, &config.geometry, &xs, CollapseOrder::IdlerFirst)
        .context("collapsing the idler first")?;
    let screen_first = state
        .pattern_by_ordering(alpha, &config.geometry, &xs, CollapseOrder::ScreenFirst)
        .context("collapsing at the screen first")?;
    let max_abs_difference = idler_first
        .iter()
        .zip(&screen_first)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let rows: Vec<Vec<String>> = (0..xs.len())
        .map(|i| vec![fmt(xs[i]), fmt(idler_first[i]), fmt(screen_first[i])])
        .collect();
    let (csv_path, json_path) = output_paths(out, "ordering");
    write_csv(
        &csv_path,
        &["position_m", "idler_first", "screen_first"],
        &rows,
    )?;
    write_json(
        &json_path,
        &OrderingSummary {
            command: "ordering",
            tag: config.tag.clone(),
            polarizer_angle_rad: alpha,
            max_abs_difference,
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}

#[derive(Serialize)]
struct ChshAnglesSummary {
    a_rad: f64,
    a_prime_rad: f64,
    b_rad: f64,
    b_prime_rad: f64,
}

#[derive(Serialize)]
struct ChshSummary {
    command: &'static str,
    tag: Option<String>,
    s_value: f64,
    angles: ChshAnglesSummary,
    classical_bound: f64,
    quantum_bound: f64,
    config: String,
}

/// CHSH correlation of the bare source state at optimized analyzer
/// settings.
pub fn chsh_run(config: &Config, out: &Path) -> Result<()> {
    let state = eraserlab_core::spdc_state(&config.source_spec());
    let (s_value, angles) = optimize_chsh(&state).context("optimizing analyzer settings")?;
    let settings = [
        ("ab", angles.a, angles.b),
        ("ab'", angles.a, angles.b_prime),
        ("a'b", angles.a_prime, angles.b),
        ("a'b'", angles.a_prime, angles.b_prime),
    ];
    let mut rows = Vec::with_capacity(4);
    for (label, a, b) in settings {
        let e = correlation(&state, a, b).context("evaluating a correlation")?;
        rows.push(vec![label.to_string(), fmt(a), fmt(b), fmt(e)]);
    }
    debug_assert!(
        (chsh(&state, &angles).unwrap() - s_value).abs() <= 1e-9,
        "reported angles must reproduce the reported S"
    );

    let (csv_path, json_path) = output_paths(out, "chsh");
    write_csv(
        &csv_path,
        &["setting", "a_rad", "b_rad", "correlation"],
        &rows,
    )?;
    write_json(
        &json_path,
        &ChshSummary {
            command: "chsh",
            tag: config.tag.clone(),
            s_value,
            angles: ChshAnglesSummary {
                a_rad: angles.a,
                a_prime_rad: angles.a_prime,
                b_rad: angles.b,
                b_prime_rad: angles.b_prime,
            },
            classical_bound: 2.0,
            quantum_bound: 2.0 * std::f64::consts::SQRT_2,
            config: config.to_canonical_string(),
        },
    )?;
    report(&csv_path, &json_path);
    Ok(())
}
