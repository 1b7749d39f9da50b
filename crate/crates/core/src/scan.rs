//! Detector-scan simulation: analytic expected coincidence rates for any
//! bench configuration, plus Poisson-sampled counts with reproducible
//! per-point random streams.
//!
//! [`expected_counts`] evaluates a closed form derived by operator algebra,
//! deliberately sharing no code with [`crate::eraser::EraserState`]; tests
//! hold the two routes against each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::eraser::BenchGeometry;
use crate::error::{Error, Result};

/// Everything needed to run one detector scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub geometry: BenchGeometry,
    /// Relative phase of the two source terms.
    pub phi: f64,
    /// Fast-axis angles of the plates behind slit 1 and slit 2, from the o
    /// axis; `None` removes both plates.
    pub qwp_angles: Option<(f64, f64)>,
    /// Idler linear-polarizer angle from the o axis; `None` removes it.
    pub polarizer_angle: Option<f64>,
    /// Coincidence rate at the central maximum of the plain double slit,
    /// in counts per dwell at `dwell_scale` 1.
    pub peak_rate: f64,
    /// Dwell-time multiplier; polarizer runs typically double it to
    /// compensate the discarded idler ensemble.
    pub dwell_scale: f64,
    /// Alignment error added to the slit-1 plate angle only. A common
    /// rotation of the rigidly mounted pair is not an error the pattern can
    /// see, so the relative angle carries the whole effect.
    pub qwp_misalignment: f64,
    /// Detector positions in meters.
    pub positions: Vec<f64>,
    /// Master seed; point `i` draws from stream `i` of this seed.
    pub seed: u64,
}

/// One simulated scan: expectations and sampled counts per position.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub positions: Vec<f64>,
    pub expected: Vec<f64>,
    pub coincidences: Vec<u64>,
    pub seed: u64,
}

/// Evenly spaced detector positions covering `width` centered on the
/// optical axis, endpoints included.
pub fn centered_positions(width: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![0.0];
    }
    let half = width / 2.0;
    (0..points)
        .map(|k| -half + width * k as f64 / (points - 1) as f64)
        .collect()
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        if !(self.peak_rate.is_finite() && self.peak_rate > 0.0) {
            return Err(Error::InvalidScan(format!(
                "peak_rate must be a finite positive rate, got {}",
                self.peak_rate
            )));
        }
        if !(self.dwell_scale.is_finite() && self.dwell_scale > 0.0) {
            return Err(Error::InvalidScan(format!(
                "dwell_scale must be a finite positive factor, got {}",
                self.dwell_scale
            )));
        }
        let mut angles = vec![("phi", self.phi), ("qwp_misalignment", self.qwp_misalignment)];
        if let Some((t1, t2)) = self.qwp_angles {
            angles.push(("qwp1 angle", t1));
            angles.push(("qwp2 angle", t2));
        }
        if let Some(a) = self.polarizer_angle {
            angles.push(("polarizer angle", a));
        }
        for (name, value) in angles {
            if !value.is_finite() {
                return Err(Error::InvalidScan(format!("{name} must be finite, got {value}")));
            }
        }
        if self.positions.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidScan("positions must be finite".into()));
        }
        Ok(())
    }
}

/// Expected coincidence counts at detector position `x`.
///
/// The fringe term comes from the overlap g of the two paths' joint
/// polarization states, optionally filtered by the idler polarizer. With
/// plate angles θ₁ (misalignment already added), θ₂ and polarizer angle α:
///
/// - no plates: (1 + cos δ)/2, polarizer present or not (it only halves
///   the accepted ensemble),
/// - plates, no polarizer: (1 + cos²(θ₁−θ₂)·cos δ)/2,
/// - plates and polarizer: 1/2 + Re(g)·cos δ + Im(g)·sin δ with
///   Re(g) = (1 + cos 2(θ₁−θ₂))/4 and
///   Im(g) = [(sin 2θ₂ − sin 2θ₁)·sin 2α·cos φ
///            − (cos 2θ₂ − cos 2θ₁)·cos 2α
///            − sin 2(θ₁−θ₂)·sin 2α·sin φ] / 4.
///
/// Each is scaled by the diffraction envelope, the polarizer's factor 1/2,
/// and `peak_rate · dwell_scale`.
pub fn expected_counts(config: &ScanConfig, x: f64) -> f64 {
    let delta = config.geometry.delta(x);
    let fringe = match (config.qwp_angles, config.polarizer_angle) {
        (None, None) => 0.5 * (1.0 + delta.cos()),
        (None, Some(_)) => 0.25 * (1.0 + delta.cos()),
        (Some((t1, t2)), None) => {
            let t1 = t1 + config.qwp_misalignment;
            0.5 * (1.0 + (t1 - t2).cos().powi(2) * delta.cos())
        }
        (Some((t1, t2)), Some(alpha)) => {
            let t1 = t1 + config.qwp_misalignment;
            let (s1, c1) = (2.0 * t1).sin_cos();
            let (s2, c2) = (2.0 * t2).sin_cos();
            let (s12, c12) = (2.0 * (t1 - t2)).sin_cos();
            let (sa, ca) = (2.0 * alpha).sin_cos();
            let re_g = 0.25 * (1.0 + c12);
            let im_g = 0.25
                * ((s2 - s1) * sa * config.phi.cos()
                    - (c2 - c1) * ca
                    - s12 * sa * config.phi.sin());
            0.5 * (0.5 + re_g * delta.cos() + im_g * delta.sin())
        }
    };
    config.peak_rate * config.dwell_scale * config.geometry.envelope(x) * fringe
}

/// Draws Poisson counts around [`expected_counts`] at every position.
///
/// Point `i` samples from an independent ChaCha stream: the master seed
/// fixes the key and the point index selects the stream. Counts at a
/// position therefore do not depend on how many other positions are
/// scanned, and a prefix of the position list reproduces a prefix of the
/// counts.
pub fn simulate_scan(config: &ScanConfig) -> Result<ScanRecord> {
    config.validate()?;
    let mut expected = Vec::with_capacity(config.positions.len());
    let mut coincidences = Vec::with_capacity(config.positions.len());
    for (i, &x) in config.positions.iter().enumerate() {
        let mean = expected_counts(config, x);
        expected.push(mean);
        let counts = if mean > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(i as u64);
            let poisson = Poisson::new(mean)
                .map_err(|e| Error::InvalidScan(format!("count rate {mean}: {e}")))?;
            poisson.sample(&mut rng) as u64
        } else {
            0
        };
        coincidences.push(counts);
    }
    Ok(ScanRecord {
        positions: config.positions.clone(),
        expected,
        coincidences,
        seed: config.seed,
    })
}
