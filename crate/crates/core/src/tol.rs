//! Numerical tolerances shared across the crate.
//!
//! Two tiers: [`ALGEBRAIC`] bounds single linear-algebra identities executed
//! in one step, [`PIPELINE`] bounds quantities that accumulate error through
//! several composed operations (state preparation, unitaries, projections,
//! fitting). Keeping them here makes every tolerance choice auditable in one
//! place instead of scattering magic numbers through assertions.

/// Error bound for a single algebraic identity: unitarity checks, projector
/// completeness, norm preservation, operator composition. Dense complex
/// arithmetic on dimension ≤ 8 stays well under this.
pub const ALGEBRAIC: f64 = 1e-12;

/// Error bound for composed pipelines: prepare → evolve → project → compare.
/// Three orders of magnitude looser than [`ALGEBRAIC`] to absorb the
/// accumulation over multi-step routes.
pub const PIPELINE: f64 = 1e-9;

/// Probabilities below this are treated as an empty measurement branch;
/// conditioning on such a branch is an error rather than a division by a
/// denormal number.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// Guard for visibility denominators: a pattern whose max + min falls below
/// this carries no usable contrast information.
pub const DEGENERATE_PATTERN: f64 = 1e-14;
