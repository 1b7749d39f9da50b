//! The interferometer bench: a double slit whose two paths can be tagged by
//! per-slit quarter-wave plates acting on the signal photon, read out in
//! coincidence with polarization analysis of the entangled idler photon.
//!
//! State layout is fixed: subsystem 0 is the slit path (0 = slit 1,
//! 1 = slit 2), subsystem 1 the signal polarization, subsystem 2 the idler
//! polarization. Screen positions enter through the Fraunhofer phase
//! [`BenchGeometry::delta`] and the single-slit envelope
//! [`BenchGeometry::envelope`]; positive x lies on the slit-2 side, so the
//! slit-2 amplitude leads by e^{−iδ(x)} when the path is collapsed at the
//! detector.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::optics::{self, PairSourceSpec, PolarizationBasis};
use crate::qstate::{self, StateVector};
use crate::tol;

/// Subsystem index of the slit path.
pub const SLIT: usize = 0;
/// Subsystem index of the signal (slit-side) polarization.
pub const SIGNAL_POL: usize = 1;
/// Subsystem index of the idler polarization.
pub const IDLER_POL: usize = 2;

/// Far-field geometry of the slit plane and detection plane.
///
/// All lengths are meters. `slit_separation` is center-to-center; two
/// 200 μm slits with a 200 μm gap between their inner edges are therefore
/// 400 μm apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchGeometry {
    pub wavelength: f64,
    pub slit_width: f64,
    pub slit_separation: f64,
    pub slit_to_detector: f64,
}

impl Default for BenchGeometry {
    /// 702.2 nm photons, 200 μm slits with centers 400 μm apart, 0.83 m
    /// of flight from the slit plane to the scanning detector.
    fn default() -> Self {
        Self {
            wavelength: 702.2e-9,
            slit_width: 200e-6,
            slit_separation: 400e-6,
            slit_to_detector: 0.83,
        }
    }
}

impl BenchGeometry {
    pub fn new(
        wavelength: f64,
        slit_width: f64,
        slit_separation: f64,
        slit_to_detector: f64,
    ) -> Result<Self> {
        let g = Self {
            wavelength,
            slit_width,
            slit_separation,
            slit_to_detector,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength", self.wavelength),
            ("slit_width", self.slit_width),
            ("slit_separation", self.slit_separation),
            ("slit_to_detector", self.slit_to_detector),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidGeometry(format!(
                    "{name} must be a positive finite length, got {value}"
                )));
            }
        }
        if self.slit_separation < self.slit_width {
            return Err(Error::InvalidGeometry(format!(
                "slit_separation ({:.3e} m) must be at least slit_width ({:.3e} m); \
                 separations are center-to-center",
                self.slit_separation, self.slit_width
            )));
        }
        Ok(())
    }

    /// Two-slit phase difference at screen position `x`:
    /// δ = 2π · d · x / (λ · L).
    pub fn delta(&self, x: f64) -> f64 {
        TAU * self.slit_separation * x / (self.wavelength * self.slit_to_detector)
    }

    /// Single-slit diffraction envelope sinc²(π · a · x / (λ · L)),
    /// normalized to 1 at x = 0.
    pub fn envelope(&self, x: f64) -> f64 {
        let u = PI * self.slit_width * x / (self.wavelength * self.slit_to_detector);
        sinc(u).powi(2)
    }

    /// Screen position where δ equals the given phase.
    pub fn position_for_delta(&self, delta: f64) -> f64 {
        delta * self.wavelength * self.slit_to_detector / (TAU * self.slit_separation)
    }

    /// Fringe spacing λ·L/d.
    pub fn fringe_period(&self) -> f64 {
        self.wavelength * self.slit_to_detector / self.slit_separation
    }

    /// First zero of the diffraction envelope, λ·L/a.
    pub fn envelope_first_zero(&self) -> f64 {
        self.wavelength * self.slit_to_detector / self.slit_width
    }
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Which photon a polarization measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    /// The photon that traverses the double slit.
    Signal,
    /// The coincidence partner.
    Idler,
}

/// A projective polarization measurement result on one arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementOutcome {
    pub arm: Arm,
    pub basis: PolarizationBasis,
    /// Index into the basis, 0 or 1.
    pub result: usize,
}

/// Order in which the two detections are collapsed when building a
/// coincidence pattern. Physics says the order cannot matter; both are
/// implemented so that claim is testable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseOrder {
    /// Project the idler polarization first, then scan the screen.
    IdlerFirst,
    /// Collapse the path at the screen first, then project the idler.
    ScreenFirst,
}

/// Full state of the bench: slit path ⊗ signal polarization ⊗ idler
/// polarization, together with the source convention needed to interpret
/// angles quoted relative to the o axis.
#[derive(Debug, Clone, PartialEq)]
pub struct EraserState {
    state: StateVector,
    source: PairSourceSpec,
}

impl EraserState {
    /// Photon through both slits with equal amplitude, polarization pair
    /// straight from the source:
    /// (|slit1⟩ + |slit2⟩)/√2 ⊗ (|o e⟩ + e^{iφ}|e o⟩)/√2.
    pub fn build_initial(source: &PairSourceSpec) -> Self {
        let path = StateVector::qubit(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        );
        Self {
            state: qstate::tensor(&path, &optics::spdc_state(source)),
            source: *source,
        }
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn source(&self) -> &PairSourceSpec {
        &self.source
    }

    /// Quarter-wave plates over the slits: fast axis at `theta1` behind
    /// slit 1 and `theta2` behind slit 2, both measured from the o axis.
    /// Each acts on the signal polarization of its own path branch only.
    pub fn apply_slit_qwps(&self, theta1: f64, theta2: f64) -> Self {
        let off = self.source.axis_offset();
        let plates = [optics::qwp(theta1 + off), optics::qwp(theta2 + off)];
        let amps = self.state.amplitudes();
        let mut out = Vec::with_capacity(8);
        for (branch, plate) in plates.iter().enumerate() {
            let sub = StateVector::new(amps[branch * 4..branch * 4 + 4].to_vec(), vec![2, 2])
                .expect("branch slice is a (2, 2) state");
            let transformed =
                qstate::apply(plate, &sub, 0).expect("wave plate matches the polarization qubit");
            out.extend_from_slice(transformed.amplitudes());
        }
        Self {
            state: StateVector::new(out, vec![2, 2, 2]).expect("eight amplitudes over (2, 2, 2)"),
            source: self.source,
        }
    }

    /// Joint polarization state reaching screen position with phase
    /// `delta`: (branch₁ + e^{−iδ} branch₂)/√2, dims (signal, idler).
    fn collapsed(&self, delta: f64) -> StateVector {
        let amps = self.state.amplitudes();
        let lead = Complex64::from_polar(1.0, -delta);
        let out: Vec<Complex64> = (0..4)
            .map(|k| (amps[k] + lead * amps[4 + k]) * FRAC_1_SQRT_2)
            .collect();
        StateVector::new(out, vec![2, 2]).expect("four amplitudes over (2, 2)")
    }

    /// Coincidence pattern over screen positions `xs`.
    ///
    /// With `alpha` present the idler passes a linear polarizer at that
    /// angle (from the o axis) before its detector; with `alpha` absent the
    /// idler detector accepts both polarizations. Values are coincidence
    /// probabilities scaled so that the plain double slit (no plates, no
    /// polarizer) peaks at 1, then multiplied by the diffraction envelope.
    pub fn coincidence_pattern(
        &self,
        alpha: Option<f64>,
        geometry: &BenchGeometry,
        xs: &[f64],
    ) -> Result<Vec<f64>> {
        let analyzer = match alpha {
            Some(a) => {
                let p = optics::polarizer(a + self.source.axis_offset());
                let (_, prob) = qstate::project(&self.state, &p, IDLER_POL)?;
                if prob < tol::ZERO_PROBABILITY {
                    return Err(Error::ZeroProbabilityBranch { probability: prob });
                }
                Some(p)
            }
            None => None,
        };
        let mut values = Vec::with_capacity(xs.len());
        for &x in xs {
            let reached = self.collapsed(geometry.delta(x));
            let weight = match &analyzer {
                Some(p) => qstate::apply(p, &reached, 1)
                    .expect("polarizer matches the idler qubit")
                    .norm_sqr(),
                None => reached.norm_sqr(),
            };
            values.push(weight * geometry.envelope(x));
        }
        Ok(values)
    }

    /// Same polarizer-conditioned pattern computed with an explicit
    /// collapse order; both orders agree to rounding error.
    pub fn pattern_by_ordering(
        &self,
        alpha: f64,
        geometry: &BenchGeometry,
        xs: &[f64],
        order: CollapseOrder,
    ) -> Result<Vec<f64>> {
        match order {
            CollapseOrder::ScreenFirst => self.coincidence_pattern(Some(alpha), geometry, xs),
            CollapseOrder::IdlerFirst => {
                let p = optics::polarizer(alpha + self.source.axis_offset());
                let (conditional, probability) = qstate::conditioned(&self.state, &p, IDLER_POL)?;
                let conditional = Self {
                    state: conditional,
                    source: self.source,
                };
                Ok(xs
                    .iter()
                    .map(|&x| {
                        probability
                            * conditional.collapsed(geometry.delta(x)).norm_sqr()
                            * geometry.envelope(x)
                    })
                    .collect())
            }
        }
    }

    /// Conditions on a projective polarization outcome, renormalizing. The
    /// path factor is untouched. Basis states are laboratory-frame.
    pub fn condition(&self, outcome: &MeasurementOutcome) -> Result<Self> {
        self.condition_with_probability(outcome).map(|(s, _)| s)
    }

    /// [`EraserState::condition`] together with the outcome probability.
    pub fn condition_with_probability(&self, outcome: &MeasurementOutcome) -> Result<(Self, f64)> {
        let target = match outcome.arm {
            Arm::Signal => SIGNAL_POL,
            Arm::Idler => IDLER_POL,
        };
        let projector = outcome.basis.projector(outcome.result);
        let (state, probability) = qstate::conditioned(&self.state, &projector, target)?;
        Ok((
            Self {
                state,
                source: self.source,
            },
            probability,
        ))
    }

    /// Probability of finding the photon behind slit 1 and slit 2.
    pub fn slit_probabilities(&self) -> [f64; 2] {
        let amps = self.state.amplitudes();
        let first: f64 = amps[..4].iter().map(|a| a.norm_sqr()).sum();
        let second: f64 = amps[4..].iter().map(|a| a.norm_sqr()).sum();
        let total = first + second;
        [first / total, second / total]
    }

    /// Overlap ⟨m₁|m₂⟩ of the normalized joint-polarization markers carried
    /// by the two paths. `None` when either path is numerically empty.
    pub fn branch_overlap(&self) -> Option<Complex64> {
        let amps = self.state.amplitudes();
        let n1: f64 = amps[..4].iter().map(|a| a.norm_sqr()).sum();
        let n2: f64 = amps[4..].iter().map(|a| a.norm_sqr()).sum();
        if n1 < tol::ZERO_PROBABILITY || n2 < tol::ZERO_PROBABILITY {
            return None;
        }
        let dot: Complex64 = amps[..4]
            .iter()
            .zip(&amps[4..])
            .map(|(a, b)| a.conj() * b)
            .sum();
        Some(dot / (n1.sqrt() * n2.sqrt()))
    }
}

/// Analytic coincidence probability for the standard plate arrangement:
/// fast axes perpendicular, at `theta` and `theta − 90°` from the o axis,
/// idler polarizer at `alpha`, source phase `phi`, screen phase `delta`:
///
/// 1/2 + [1/2 − sin²(θ+α)·cos²(φ/2) − sin²(θ−α)·sin²(φ/2)] · sin δ
///
/// Normalized to mean 1/2 over a fringe; the engine's polarizer-conditioned
/// pattern equals half this value before the envelope (the polarizer
/// discards half the idler ensemble).
pub fn closed_form_coincidence(theta: f64, alpha: f64, phi: f64, delta: f64) -> f64 {
    let erased = (theta + alpha).sin().powi(2) * (phi / 2.0).cos().powi(2);
    let marked = (theta - alpha).sin().powi(2) * (phi / 2.0).sin().powi(2);
    0.5 + (0.5 - erased - marked) * delta.sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{circular_l, circular_r, linear_x, linear_y};
    use crate::qstate::tensor;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::FRAC_PI_2;

    const QUARTER: f64 = PI / 4.0;

    fn default_state() -> EraserState {
        EraserState::build_initial(&PairSourceSpec::default())
    }

    fn marked_state() -> EraserState {
        default_state().apply_slit_qwps(QUARTER, -QUARTER)
    }

    /// Dense position grid covering two fringes on each side.
    fn probe_positions(g: &BenchGeometry) -> Vec<f64> {
        let period = g.fringe_period();
        (-64..=64).map(|k| k as f64 / 32.0 * period).collect()
    }

    #[test]
    fn initial_amplitudes() {
        let s = default_state();
        let amps = s.state().amplitudes();
        // (|s1⟩ + |s2⟩)/√2 ⊗ (|xy⟩ + |yx⟩)/√2: four amplitudes of 1/2.
        for (idx, amp) in amps.iter().enumerate() {
            let expected = match idx {
                1 | 2 | 5 | 6 => 0.5,
                _ => 0.0,
            };
            assert_abs_diff_eq!(amp.re, expected, epsilon = tol::ALGEBRAIC);
            assert_abs_diff_eq!(amp.im, 0.0, epsilon = tol::ALGEBRAIC);
        }
        assert_abs_diff_eq!(s.state().norm(), 1.0, epsilon = tol::ALGEBRAIC);

        // Opposite source phases build orthogonal bench states.
        let flipped = EraserState::build_initial(&PairSourceSpec::with_phi(PI));
        assert!(s.state().inner(flipped.state()).unwrap().norm() <= tol::ALGEBRAIC);
    }

    #[test]
    fn crossed_plates_produce_the_circular_slit_markers() {
        // Behind slit 1 the joint polarization becomes (|L y⟩ + i|R x⟩)/2,
        // behind slit 2 it becomes (|R y⟩ − i|L x⟩)/2, with no extra phase.
        let s = marked_state();
        let amps = s.state().amplitudes();

        let branch1 = tensor(&circular_l(), &linear_y())
            .scaled(Complex64::new(0.5, 0.0))
            .add(&tensor(&circular_r(), &linear_x()).scaled(Complex64::new(0.0, 0.5)))
            .unwrap();
        let branch2 = tensor(&circular_r(), &linear_y())
            .scaled(Complex64::new(0.5, 0.0))
            .add(&tensor(&circular_l(), &linear_x()).scaled(Complex64::new(0.0, -0.5)))
            .unwrap();

        for k in 0..4 {
            assert!((amps[k] - branch1.amplitudes()[k]).norm() <= tol::ALGEBRAIC);
            assert!((amps[4 + k] - branch2.amplitudes()[k]).norm() <= tol::ALGEBRAIC);
        }
    }

    #[test]
    fn geometry_scales() {
        let g = BenchGeometry::default();
        assert_relative_eq!(g.fringe_period(), 1.457065e-3, max_relative = 1e-6);
        assert_relative_eq!(g.envelope_first_zero(), 2.914130e-3, max_relative = 1e-6);
        assert_abs_diff_eq!(g.delta(g.fringe_period()), TAU, epsilon = 1e-9);
        assert_abs_diff_eq!(g.envelope(0.0), 1.0, epsilon = tol::ALGEBRAIC);
        assert_abs_diff_eq!(g.envelope(g.envelope_first_zero()), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            g.position_for_delta(g.delta(1.0e-3)),
            1.0e-3,
            epsilon = 1e-12
        );
    }

    #[test]
    fn geometry_rejects_nonphysical_values() {
        assert!(BenchGeometry::new(0.0, 1e-4, 4e-4, 0.8).is_err());
        assert!(BenchGeometry::new(7e-7, -1e-4, 4e-4, 0.8).is_err());
        // Center-to-center separation below the slit width means the slits
        // overlap.
        assert!(BenchGeometry::new(7e-7, 4e-4, 3e-4, 0.8).is_err());
        assert!(BenchGeometry::new(7e-7, 1e-4, 4e-4, f64::NAN).is_err());
    }

    #[test]
    fn plain_double_slit_shows_textbook_fringes() {
        let g = BenchGeometry::default();
        let xs = probe_positions(&g);
        let pattern = default_state().coincidence_pattern(None, &g, &xs).unwrap();
        for (&x, &v) in xs.iter().zip(&pattern) {
            let expected = g.envelope(x) * 0.5 * (1.0 + g.delta(x).cos());
            assert_abs_diff_eq!(v, expected, epsilon = tol::PIPELINE);
        }
        // Central peak normalized to 1.
        let at_zero = default_state()
            .coincidence_pattern(None, &g, &[0.0])
            .unwrap()[0];
        assert_abs_diff_eq!(at_zero, 1.0, epsilon = tol::ALGEBRAIC);
    }

    #[test]
    fn closed_form_pinned_values() {
        // Hand-evaluated: erased fringes vanish at δ = π/2 when the
        // polarizer sits along the plate axis, and peak on the orthogonal
        // setting.
        assert_abs_diff_eq!(
            closed_form_coincidence(QUARTER, QUARTER, 0.0, FRAC_PI_2),
            0.0,
            epsilon = tol::ALGEBRAIC
        );
        assert_abs_diff_eq!(
            closed_form_coincidence(QUARTER, -QUARTER, 0.0, FRAC_PI_2),
            1.0,
            epsilon = tol::ALGEBRAIC
        );
        assert_abs_diff_eq!(
            closed_form_coincidence(QUARTER, QUARTER, 0.0, 0.0),
            0.5,
            epsilon = tol::ALGEBRAIC
        );
        // Source phase π swaps the erased and marked terms.
        assert_abs_diff_eq!(
            closed_form_coincidence(QUARTER, QUARTER, PI, FRAC_PI_2),
            1.0,
            epsilon = tol::ALGEBRAIC
        );
    }

    #[test]
    fn engine_tracks_the_closed_form_at_spot_checks() {
        let g = BenchGeometry::default();
        let theta = 0.3;
        let alpha = -0.8;
        let phi = 1.1;
        let state = EraserState::build_initial(&PairSourceSpec::with_phi(phi))
            .apply_slit_qwps(theta, theta - FRAC_PI_2);
        let xs = probe_positions(&g);
        let pattern = state.coincidence_pattern(Some(alpha), &g, &xs).unwrap();
        for (&x, &v) in xs.iter().zip(&pattern) {
            let expected =
                0.5 * closed_form_coincidence(theta, alpha, phi, g.delta(x)) * g.envelope(x);
            assert_abs_diff_eq!(v, expected, epsilon = tol::PIPELINE);
        }
    }

    #[test]
    fn crossed_plates_erase_all_contrast_without_the_polarizer() {
        let g = BenchGeometry::default();
        let xs = probe_positions(&g);
        let pattern = marked_state().coincidence_pattern(None, &g, &xs).unwrap();
        for (&x, &v) in xs.iter().zip(&pattern) {
            assert_abs_diff_eq!(v, 0.5 * g.envelope(x), epsilon = tol::PIPELINE);
        }
        assert!(marked_state().branch_overlap().unwrap().norm() <= tol::ALGEBRAIC);
    }

    #[test]
    fn common_plate_rotation_keeps_contrast_dead() {
        // Rotating the rigid pair of crossed plates is not an alignment
        // error that revives fringes: the markers stay orthogonal.
        let rotated = default_state().apply_slit_qwps(QUARTER + 0.1, -QUARTER + 0.1);
        assert!(rotated.branch_overlap().unwrap().norm() <= tol::ALGEBRAIC);
    }

    #[test]
    fn relative_plate_error_leaks_contrast() {
        let err = 5.0_f64.to_radians();
        let skewed = default_state().apply_slit_qwps(QUARTER + err, -QUARTER);
        let overlap = skewed.branch_overlap().unwrap();
        assert_relative_eq!(
            overlap.norm(),
            err.sin().powi(2),
            max_relative = 1e-9
        );
    }

    #[test]
    fn idler_x_then_signal_circular_reveals_the_slit() {
        let idler_x = MeasurementOutcome {
            arm: Arm::Idler,
            basis: PolarizationBasis::Linear,
            result: 0,
        };
        let heralded = marked_state().condition(&idler_x).unwrap();

        let signal_r = MeasurementOutcome {
            arm: Arm::Signal,
            basis: PolarizationBasis::Circular,
            result: 0,
        };
        let probs = heralded.condition(&signal_r).unwrap().slit_probabilities();
        assert!(probs[0] >= 1.0 - 1e-12);

        let signal_l = MeasurementOutcome {
            arm: Arm::Signal,
            basis: PolarizationBasis::Circular,
            result: 1,
        };
        let probs = heralded.condition(&signal_l).unwrap().slit_probabilities();
        assert!(probs[1] >= 1.0 - 1e-12);
    }

    #[test]
    fn conditioning_preserves_the_path_factor() {
        let outcome = MeasurementOutcome {
            arm: Arm::Idler,
            basis: PolarizationBasis::Diagonal,
            result: 0,
        };
        let (conditioned, prob) = marked_state()
            .condition_with_probability(&outcome)
            .unwrap();
        assert_abs_diff_eq!(prob, 0.5, epsilon = tol::ALGEBRAIC);
        assert_abs_diff_eq!(conditioned.state().norm(), 1.0, epsilon = tol::ALGEBRAIC);
        let [p1, p2] = conditioned.slit_probabilities();
        assert_abs_diff_eq!(p1, 0.5, epsilon = tol::ALGEBRAIC);
        assert_abs_diff_eq!(p2, 0.5, epsilon = tol::ALGEBRAIC);
    }

    #[test]
    fn collapse_orders_agree() {
        let g = BenchGeometry::default();
        let xs = probe_positions(&g);
        let state = EraserState::build_initial(&PairSourceSpec::with_phi(0.7))
            .apply_slit_qwps(0.3, -1.2);
        let idler_first = state
            .pattern_by_ordering(0.5, &g, &xs, CollapseOrder::IdlerFirst)
            .unwrap();
        let screen_first = state
            .pattern_by_ordering(0.5, &g, &xs, CollapseOrder::ScreenFirst)
            .unwrap();
        for (a, b) in idler_first.iter().zip(&screen_first) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn blocked_idler_errors_in_both_orders() {
        // Heralding the idler on x and then analyzing at 90° leaves an
        // empty branch; both collapse orders must refuse identically.
        let heralded = marked_state()
            .condition(&MeasurementOutcome {
                arm: Arm::Idler,
                basis: PolarizationBasis::Linear,
                result: 0,
            })
            .unwrap();
        for order in [CollapseOrder::IdlerFirst, CollapseOrder::ScreenFirst] {
            let err = heralded
                .pattern_by_ordering(FRAC_PI_2, &BenchGeometry::default(), &[0.0], order)
                .unwrap_err();
            assert!(matches!(err, Error::ZeroProbabilityBranch { .. }));
        }
        let err = heralded
            .coincidence_pattern(Some(FRAC_PI_2), &BenchGeometry::default(), &[0.0])
            .unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityBranch { .. }));
    }

    #[test]
    fn flipped_axis_mapping_reproduces_the_same_patterns() {
        let g = BenchGeometry::default();
        let xs = probe_positions(&g);
        let phi = 0.9;
        for alpha in [None, Some(0.6)] {
            let default_frame = EraserState::build_initial(&PairSourceSpec::with_phi(phi))
                .apply_slit_qwps(0.4, 0.4 - FRAC_PI_2)
                .coincidence_pattern(alpha, &g, &xs)
                .unwrap();
            let flipped_frame = EraserState::build_initial(&PairSourceSpec {
                phi,
                mapping: crate::optics::OeMapping::OToY,
            })
            .apply_slit_qwps(0.4, 0.4 - FRAC_PI_2)
            .coincidence_pattern(alpha, &g, &xs)
            .unwrap();
            for (a, b) in default_frame.iter().zip(&flipped_frame) {
                assert_abs_diff_eq!(a, b, epsilon = tol::PIPELINE);
            }
        }
    }

    #[test]
    fn source_phase_pi_swaps_fringes_and_antifringes() {
        let g = BenchGeometry::default();
        let x = g.position_for_delta(FRAC_PI_2);
        let build = |phi: f64| {
            EraserState::build_initial(&PairSourceSpec::with_phi(phi))
                .apply_slit_qwps(QUARTER, -QUARTER)
        };
        let at_zero = build(0.0)
            .coincidence_pattern(Some(QUARTER), &g, &[x])
            .unwrap()[0];
        let at_pi = build(PI)
            .coincidence_pattern(Some(QUARTER), &g, &[x])
            .unwrap()[0];
        let envelope = g.envelope(x);
        assert_abs_diff_eq!(at_zero, 0.0, epsilon = tol::PIPELINE);
        assert_abs_diff_eq!(at_pi, 0.5 * envelope, epsilon = tol::PIPELINE);
    }
}
