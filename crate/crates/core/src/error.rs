use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An operator's dimension does not match the targeted subsystem.
    #[error("dimension mismatch: operator acts on dimension {operator}, subsystem has dimension {subsystem}")]
    DimensionMismatch { operator: usize, subsystem: usize },

    /// A subsystem index points past the end of the state's dims.
    #[error("subsystem index {index} out of range for a state with {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    /// The amplitude buffer does not factor into the declared dims.
    #[error("amplitude vector of length {len} does not match dims product {expected}")]
    ShapeMismatch { len: usize, expected: usize },

    /// A state has the wrong subsystem structure for the requested operation.
    #[error("operation requires subsystem dims {expected:?}, state has {found:?}")]
    DimsMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },

    /// The matrix handed to a projection is not idempotent and Hermitian.
    #[error("matrix is not a projector (idempotence or Hermiticity violated beyond tolerance)")]
    NotAProjector,

    /// Conditioning was requested on a branch of negligible probability.
    #[error("zero-probability branch: conditioning probability {probability:.3e} is below threshold")]
    ZeroProbabilityBranch { probability: f64 },

    /// A pattern carries no contrast information (max + min ≈ 0).
    #[error("degenerate pattern: max + min is below threshold, visibility undefined")]
    DegeneratePattern,

    /// The fringe fit could not produce a usable sinusoid.
    #[error("fringe fit failed: {0}")]
    FitFailed(String),

    /// Bench geometry violates its physical constraints.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A scan configuration cannot be simulated as given.
    #[error("invalid scan: {0}")]
    InvalidScan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
