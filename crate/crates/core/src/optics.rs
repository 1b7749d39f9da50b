//! Jones-calculus building blocks: polarization basis states, wave plates,
//! polarizers, and the entangled photon-pair source.
//!
//! Angle conventions. Linear polarization angles are measured from the x
//! axis. The two down-conversion output polarizations are called o
//! (ordinary) and e (extraordinary); under the default [`OeMapping::OToX`]
//! the o axis coincides with x, and every angle quoted elsewhere in the
//! crate is measured from the o axis. Circular states follow the convention
//! R = (x − i·y)/√2, L = (x + i·y)/√2.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;

use crate::qstate::{LinearOperator, StateVector};

/// Horizontal linear polarization |x⟩ = (1, 0).
pub fn linear_x() -> StateVector {
    StateVector::qubit(Complex64::ONE, Complex64::ZERO)
}

/// Vertical linear polarization |y⟩ = (0, 1).
pub fn linear_y() -> StateVector {
    StateVector::qubit(Complex64::ZERO, Complex64::ONE)
}

/// Diagonal |+⟩ = (|x⟩ + |y⟩)/√2.
pub fn diag_plus() -> StateVector {
    StateVector::qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    )
}

/// Antidiagonal |−⟩ = (|x⟩ − |y⟩)/√2.
pub fn diag_minus() -> StateVector {
    StateVector::qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    )
}

/// Right circular |R⟩ = (|x⟩ − i|y⟩)/√2.
pub fn circular_r() -> StateVector {
    StateVector::qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, -FRAC_1_SQRT_2),
    )
}

/// Left circular |L⟩ = (|x⟩ + i|y⟩)/√2.
pub fn circular_l() -> StateVector {
    StateVector::qubit(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    )
}

/// Linear polarization at `angle` from the x axis.
pub fn linear_at(angle: f64) -> StateVector {
    StateVector::qubit(
        Complex64::new(angle.cos(), 0.0),
        Complex64::new(angle.sin(), 0.0),
    )
}

/// The three measurement bases used on either photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationBasis {
    /// {x, y}
    Linear,
    /// {+45°, −45°}
    Diagonal,
    /// {R, L}
    Circular,
}

impl PolarizationBasis {
    /// The two orthonormal basis states, in outcome order (0, 1).
    pub fn states(self) -> (StateVector, StateVector) {
        match self {
            Self::Linear => (linear_x(), linear_y()),
            Self::Diagonal => (diag_plus(), diag_minus()),
            Self::Circular => (circular_r(), circular_l()),
        }
    }

    /// Rank-1 projector |u⟩⟨u| onto outcome 0 or 1.
    pub fn projector(self, outcome: usize) -> LinearOperator {
        assert!(outcome < 2, "polarization outcomes are 0 or 1");
        let (a, b) = self.states();
        let u = if outcome == 0 { a } else { b };
        let amps = u.amplitudes();
        LinearOperator::two_by_two(
            amps[0] * amps[0].conj(),
            amps[0] * amps[1].conj(),
            amps[1] * amps[0].conj(),
            amps[1] * amps[1].conj(),
        )
    }

    /// Short outcome labels, e.g. for report columns.
    pub fn labels(self) -> [&'static str; 2] {
        match self {
            Self::Linear => ["x", "y"],
            Self::Diagonal => ["+45", "-45"],
            Self::Circular => ["R", "L"],
        }
    }
}

/// Rotation of the polarization plane by `angle`.
pub fn rotation(angle: f64) -> LinearOperator {
    let (s, c) = angle.sin_cos();
    LinearOperator::two_by_two(
        Complex64::new(c, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(c, 0.0),
    )
}

/// Residual global phase of [`qwp`] relative to the circular-basis slit
/// transformations that anchor its convention. The unit-determinant
/// construction makes it exactly one; it is kept as a named constant so
/// amplitude-level comparisons state their phase reference explicitly.
pub const QWP_GLOBAL_PHASE: Complex64 = Complex64::new(1.0, 0.0);

/// Quarter-wave plate with its fast axis at `theta` from the x axis.
///
/// Unit-determinant form R(θ) · diag(e^{iπ/4}, e^{−iπ/4}) · R(−θ): the fast
/// axis is advanced by a quarter wave relative to the slow axis. The sign
/// of the retardance is a physical convention; this one is fixed so that
/// qwp(+45°) sends x → L and y → i·R while qwp(−45°) sends x → R and
/// y → −i·L, with no residual global phase (see [`QWP_GLOBAL_PHASE`]).
/// Expanded, the matrix is
/// (1/√2) · [[1 + i·cos2θ, i·sin2θ], [i·sin2θ, 1 − i·cos2θ]].
pub fn qwp(theta: f64) -> LinearOperator {
    let (s2, c2) = (2.0 * theta).sin_cos();
    LinearOperator::two_by_two(
        Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2 * c2),
        Complex64::new(0.0, FRAC_1_SQRT_2 * s2),
        Complex64::new(0.0, FRAC_1_SQRT_2 * s2),
        Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2 * c2),
    )
}

/// Ideal linear polarizer transmitting the direction at `alpha` from the
/// x axis: the rank-1 projector
/// [[cos²α, sinα·cosα], [sinα·cosα, sin²α]].
pub fn polarizer(alpha: f64) -> LinearOperator {
    let (s, c) = alpha.sin_cos();
    LinearOperator::two_by_two(
        Complex64::new(c * c, 0.0),
        Complex64::new(s * c, 0.0),
        Complex64::new(s * c, 0.0),
        Complex64::new(s * s, 0.0),
    )
}

/// Which laboratory axis carries the ordinary (o) polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OeMapping {
    /// o along x, e along y (default).
    #[default]
    OToX,
    /// o along y, e along x.
    OToY,
}

/// Down-conversion pair source: relative phase and o/e axis assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSourceSpec {
    /// Relative phase φ between the two emission branches.
    pub phi: f64,
    /// Assignment of the o/e polarizations to laboratory axes.
    pub mapping: OeMapping,
}

impl Default for PairSourceSpec {
    fn default() -> Self {
        Self {
            phi: 0.0,
            mapping: OeMapping::OToX,
        }
    }
}

impl PairSourceSpec {
    pub fn with_phi(phi: f64) -> Self {
        Self {
            phi,
            ..Self::default()
        }
    }

    /// Angle of the o axis measured from the laboratory x axis. Angles
    /// quoted relative to o add this offset before building lab-frame Jones
    /// operators.
    pub fn axis_offset(&self) -> f64 {
        match self.mapping {
            OeMapping::OToX => 0.0,
            OeMapping::OToY => FRAC_PI_2,
        }
    }

    /// True when φ is a multiple of π, where the emitted pair is one of the
    /// two maximally entangled Bell combinations of the |oe⟩ and |eo⟩ terms.
    pub fn is_bell_state(&self) -> bool {
        self.phi.sin().abs() <= crate::tol::ALGEBRAIC
    }
}

/// Two-photon polarization state emitted by the pair source:
/// (|o⟩_s |e⟩_i + e^{iφ} |e⟩_s |o⟩_i) / √2, dims (2, 2) with the signal
/// (slit-side) polarization first and the idler polarization second.
pub fn spdc_state(spec: &PairSourceSpec) -> StateVector {
    let w = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let wp = Complex64::from_polar(FRAC_1_SQRT_2, spec.phi);
    let mut amps = vec![Complex64::ZERO; 4];
    match spec.mapping {
        // |x_s y_i⟩ + e^{iφ} |y_s x_i⟩
        OeMapping::OToX => {
            amps[1] = w;
            amps[2] = wp;
        }
        // |y_s x_i⟩ + e^{iφ} |x_s y_i⟩
        OeMapping::OToY => {
            amps[2] = w;
            amps[1] = wp;
        }
    }
    StateVector::new(amps, vec![2, 2]).expect("four amplitudes over dims (2, 2)")
}

/// Convenience: e^{iπ/4}, the fast-axis phase of [`qwp`].
#[cfg(test)]
pub(crate) fn phase_eighth_turn() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{apply, project, tensor};
    use crate::tol;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn assert_vec_eq(state: &StateVector, expected: &[Complex64], eps: f64) {
        for (a, e) in state.amplitudes().iter().zip(expected) {
            assert!((a - e).norm() <= eps, "{a} vs {e}");
        }
    }

    fn apply_jones(op: &LinearOperator, v: &StateVector) -> StateVector {
        apply(op, v, 0).expect("2x2 operator on a single polarization qubit")
    }

    #[test]
    fn circular_states_from_diagonal_combinations() {
        // R and L written as ((1−i)/2)(|+⟩ + i|−⟩) and ((1−i)/2)(i|+⟩ + |−⟩)
        // must agree with the direct x/y forms.
        let half = Complex64::new(0.5, -0.5);
        let i = Complex64::I;
        let r_combo = diag_plus().scaled(half).add(&diag_minus().scaled(half * i)).unwrap();
        let l_combo = diag_plus().scaled(half * i).add(&diag_minus().scaled(half)).unwrap();
        assert_vec_eq(&r_combo, circular_r().amplitudes(), tol::ALGEBRAIC);
        assert_vec_eq(&l_combo, circular_l().amplitudes(), tol::ALGEBRAIC);
    }

    #[test]
    fn bases_are_orthonormal_and_complete() {
        for basis in [
            PolarizationBasis::Linear,
            PolarizationBasis::Diagonal,
            PolarizationBasis::Circular,
        ] {
            let (a, b) = basis.states();
            assert_abs_diff_eq!(a.norm(), 1.0, epsilon = tol::ALGEBRAIC);
            assert_abs_diff_eq!(b.norm(), 1.0, epsilon = tol::ALGEBRAIC);
            assert!(a.inner(&b).unwrap().norm() <= tol::ALGEBRAIC);
            let sum = basis
                .projector(0)
                .entries()
                .iter()
                .zip(basis.projector(1).entries())
                .map(|(p, q)| p + q)
                .collect::<Vec<_>>();
            let id = LinearOperator::identity(2);
            for (s, e) in sum.iter().zip(id.entries()) {
                assert!((s - e).norm() <= tol::ALGEBRAIC);
            }
        }
    }

    #[test]
    fn qwp_at_zero_is_diagonal_with_quarter_wave_retardance() {
        let q = qwp(0.0);
        let fast = phase_eighth_turn();
        assert!((q.get(0, 0) - fast).norm() <= tol::ALGEBRAIC);
        assert!((q.get(1, 1) - fast.conj()).norm() <= tol::ALGEBRAIC);
        assert!(q.get(0, 1).norm() <= tol::ALGEBRAIC);
        assert!(q.get(1, 0).norm() <= tol::ALGEBRAIC);
        // Relative phase between slow and fast axis is exactly −π/2.
        let ratio = q.get(1, 1) / q.get(0, 0);
        assert!((ratio - Complex64::new(0.0, -1.0)).norm() <= tol::ALGEBRAIC);
    }

    #[test]
    fn qwp_at_plus_45_maps_x_to_left_and_y_to_i_right() {
        let q = qwp(PI / 4.0);
        let out_x = apply_jones(&q, &linear_x());
        let expected_x = circular_l().scaled(QWP_GLOBAL_PHASE);
        assert_vec_eq(&out_x, expected_x.amplitudes(), tol::ALGEBRAIC);

        let out_y = apply_jones(&q, &linear_y());
        let expected_y = circular_r().scaled(QWP_GLOBAL_PHASE * Complex64::I);
        assert_vec_eq(&out_y, expected_y.amplitudes(), tol::ALGEBRAIC);
    }

    #[test]
    fn qwp_at_minus_45_maps_x_to_right_and_y_to_minus_i_left() {
        let q = qwp(-PI / 4.0);
        let out_x = apply_jones(&q, &linear_x());
        let expected_x = circular_r().scaled(QWP_GLOBAL_PHASE);
        assert_vec_eq(&out_x, expected_x.amplitudes(), tol::ALGEBRAIC);

        let out_y = apply_jones(&q, &linear_y());
        let expected_y = circular_l().scaled(-QWP_GLOBAL_PHASE * Complex64::I);
        assert_vec_eq(&out_y, expected_y.amplitudes(), tol::ALGEBRAIC);
    }

    #[test]
    fn qwp_matches_rotated_retarder_construction() {
        for &theta in &[0.0, 0.2, PI / 4.0, 1.0, -0.7] {
            let direct = qwp(theta);
            let retarder = LinearOperator::two_by_two(
                phase_eighth_turn(),
                Complex64::ZERO,
                Complex64::ZERO,
                phase_eighth_turn().conj(),
            );
            let built = rotation(theta)
                .compose(&retarder)
                .unwrap()
                .compose(&rotation(-theta))
                .unwrap();
            assert!(direct.max_abs_diff(&built) <= tol::ALGEBRAIC);
        }
    }

    #[test]
    fn doubled_qwp_acts_as_half_wave_plate() {
        // Two passes reflect a linear polarization about the fast axis,
        // up to a global phase.
        for &(theta, beta) in &[(0.3, 0.9), (PI / 4.0, 0.2), (-0.5, 1.1)] {
            let twice = qwp(theta).compose(&qwp(theta)).unwrap();
            let out = apply_jones(&twice, &linear_at(beta));
            let reflected = linear_at(2.0 * theta - beta);
            let overlap = reflected.inner(&out).unwrap().norm();
            assert_abs_diff_eq!(overlap, 1.0, epsilon = tol::ALGEBRAIC);
        }
    }

    #[test]
    fn polarizer_matrix_entries() {
        let alpha = 0.6;
        let p = polarizer(alpha);
        assert_abs_diff_eq!(p.get(0, 0).re, alpha.cos().powi(2), epsilon = tol::ALGEBRAIC);
        assert_abs_diff_eq!(p.get(1, 1).re, alpha.sin().powi(2), epsilon = tol::ALGEBRAIC);
        assert_abs_diff_eq!(
            p.get(0, 1).re,
            alpha.sin() * alpha.cos(),
            epsilon = tol::ALGEBRAIC
        );
        assert!(p.is_projector(tol::ALGEBRAIC));
    }


    #[test]
    fn spdc_amplitudes_default_mapping() {
        let s = spdc_state(&PairSourceSpec::default());
        let w = FRAC_1_SQRT_2;
        assert_vec_eq(
            &s,
            &[
                Complex64::ZERO,
                Complex64::new(w, 0.0),
                Complex64::new(w, 0.0),
                Complex64::ZERO,
            ],
            tol::ALGEBRAIC,
        );
    }

    #[test]
    fn spdc_amplitudes_carry_the_source_phase() {
        let phi = 1.3;
        let s = spdc_state(&PairSourceSpec::with_phi(phi));
        assert!((s.amplitudes()[2] - Complex64::from_polar(FRAC_1_SQRT_2, phi)).norm()
            <= tol::ALGEBRAIC);

        let flipped = spdc_state(&PairSourceSpec {
            phi,
            mapping: OeMapping::OToY,
        });
        assert!((flipped.amplitudes()[1] - Complex64::from_polar(FRAC_1_SQRT_2, phi)).norm()
            <= tol::ALGEBRAIC);
        assert!((flipped.amplitudes()[2] - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm()
            <= tol::ALGEBRAIC);
    }

    #[test]
    fn source_phases_zero_and_pi_are_the_orthogonal_bell_pair() {
        assert!(PairSourceSpec::with_phi(0.0).is_bell_state());
        assert!(PairSourceSpec::with_phi(PI).is_bell_state());
        assert!(PairSourceSpec::with_phi(-PI).is_bell_state());
        assert!(PairSourceSpec::with_phi(2.0 * PI).is_bell_state());
        assert!(!PairSourceSpec::with_phi(0.3).is_bell_state());
        assert!(!PairSourceSpec::with_phi(FRAC_PI_2).is_bell_state());

        let plus = spdc_state(&PairSourceSpec::with_phi(0.0));
        let minus = spdc_state(&PairSourceSpec::with_phi(PI));
        assert!(plus.inner(&minus).unwrap().norm() <= tol::ALGEBRAIC);
    }

    proptest! {
        #[test]
        fn qwp_is_unitary_everywhere(theta in -PI..PI) {
            prop_assert!(qwp(theta).is_unitary(tol::ALGEBRAIC));
        }

        #[test]
        fn qwp_determinant_is_one(theta in -PI..PI) {
            let q = qwp(theta);
            let det = q.get(0, 0) * q.get(1, 1) - q.get(0, 1) * q.get(1, 0);
            prop_assert!((det - Complex64::ONE).norm() <= tol::ALGEBRAIC);
        }

        #[test]
        fn qwp_rotated_a_quarter_turn_is_the_inverse(theta in -PI..PI) {
            // Turning the plate 90° swaps its fast and slow axes, so the
            // two orientations undo each other.
            let undone = qwp(theta + FRAC_PI_2).compose(&qwp(theta)).unwrap();
            prop_assert!(undone.max_abs_diff(&LinearOperator::identity(2)) <= tol::ALGEBRAIC);
            prop_assert!(qwp(theta + FRAC_PI_2).max_abs_diff(&qwp(theta).adjoint())
                <= tol::ALGEBRAIC);
        }

        #[test]
        fn polarizer_is_rank_one_projector(alpha in -PI..PI) {
            let p = polarizer(alpha);
            prop_assert!(p.is_projector(tol::ALGEBRAIC));
            let trace = p.get(0, 0) + p.get(1, 1);
            prop_assert!((trace - Complex64::ONE).norm() <= tol::ALGEBRAIC);
        }

        #[test]
        fn crossed_polarizers_block_everything(alpha in -PI..PI) {
            let blocked = polarizer(alpha + FRAC_PI_2).compose(&polarizer(alpha)).unwrap();
            let zero = LinearOperator::two_by_two(
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::ZERO,
                Complex64::ZERO,
            );
            prop_assert!(blocked.max_abs_diff(&zero) <= tol::ALGEBRAIC);
        }

        #[test]
        fn spdc_marginals_are_unpolarized(phi in -PI..PI, alpha in -PI..PI) {
            // Either photon alone passes any linear polarizer with
            // probability 1/2 regardless of the source phase.
            let s = spdc_state(&PairSourceSpec::with_phi(phi));
            for target in [0usize, 1] {
                let (_, prob) = project(&s, &polarizer(alpha), target).unwrap();
                prop_assert!((prob - 0.5).abs() <= tol::ALGEBRAIC);
            }
        }

        #[test]
        fn spdc_polarizations_anticorrelate(phi in -PI..PI) {
            // Both photons through parallel linear polarizers never coincide
            // along the o/e axes.
            let s = spdc_state(&PairSourceSpec::with_phi(phi));
            let along_o = tensor(&linear_x(), &linear_x());
            let along_e = tensor(&linear_y(), &linear_y());
            prop_assert!(along_o.inner(&s).unwrap().norm() <= tol::ALGEBRAIC);
            prop_assert!(along_e.inner(&s).unwrap().norm() <= tol::ALGEBRAIC);
        }
    }
}
