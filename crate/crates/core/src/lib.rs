//! Simulation of a double-slit interferometer whose slits tag the photon's
//! polarization, with coincidence detection against an entangled partner.
//!
//! The crate is organized bottom-up:
//!
//! * [`qstate`] — dense state vectors over ordered subsystems and the small
//!   operator algebra (tensor, apply, project) used everywhere else.
//! * [`optics`] — Jones-calculus catalog: polarization bases, wave plates,
//!   polarizers, and the entangled pair source.
//! * [`eraser`] — the bench itself: slit ⊗ polarization state, per-slit wave
//!   plates, detector geometry, and screen patterns.
//! * [`analysis`] — visibility extraction, fringe fitting, which-path
//!   distinguishability, and CHSH correlations.
//! * [`scan`] — Monte Carlo detector scans with Poisson counting statistics.
//!
//! All tolerances live in [`tol`].

pub mod analysis;
pub mod eraser;
mod error;
pub mod optics;
pub mod qstate;
pub mod scan;
pub mod tol;

pub use analysis::{
    chsh, correlation, distinguishability, fit_fringes, fit_sinusoid, optimize_chsh,
    visibility_exact, ChshAngles, VisibilityFit,
};
pub use eraser::{
    closed_form_coincidence, Arm, BenchGeometry, CollapseOrder, EraserState, MeasurementOutcome,
};
pub use error::{Error, Result};
pub use optics::{polarizer, qwp, spdc_state, OeMapping, PairSourceSpec, PolarizationBasis};
pub use qstate::{apply, conditioned, project, tensor, LinearOperator, StateVector};
pub use scan::{expected_counts, simulate_scan, ScanConfig, ScanRecord};
