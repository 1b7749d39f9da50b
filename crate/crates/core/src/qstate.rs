//! Dense state vectors over an ordered list of subsystems, plus the small
//! operator algebra needed to drive them: tensor products, single-subsystem
//! operator application, and projective measurement.
//!
//! Subsystem 0 is the slowest-varying index in the amplitude buffer, i.e. the
//! amplitude of basis state `(i0, i1, ..)` lives at
//! `i0 * (d1 * d2 * ..) + i1 * (d2 * ..) + ..`. Every function here is pure:
//! inputs are borrowed, results are freshly allocated.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// A pure state over one or more finite-dimensional subsystems.
///
/// Invariant: `amplitudes.len()` equals the product of `dims`, and `dims` is
/// non-empty. Normalization is not enforced by the type; callers that need a
/// unit vector use [`StateVector::normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl StateVector {
    /// Builds a state from an amplitude buffer and its subsystem dims.
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let expected: usize = dims.iter().product();
        if dims.is_empty() || dims.iter().any(|&d| d == 0) || amplitudes.len() != expected {
            return Err(Error::ShapeMismatch {
                len: amplitudes.len(),
                expected,
            });
        }
        Ok(Self { amplitudes, dims })
    }

    /// Single-subsystem state |index⟩ of the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self {
            amplitudes,
            dims: vec![dim],
        }
    }

    /// Two-component state (a, b) on a single qubit-sized subsystem.
    pub fn qubit(a: Complex64, b: Complex64) -> Self {
        Self {
            amplitudes: vec![a, b],
            dims: vec![2],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Squared Euclidean norm ⟨ψ|ψ⟩.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimsMismatch {
                expected: self.dims.clone(),
                found: other.dims.clone(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Unit-norm copy; errors on a numerically empty vector.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 < tol::ZERO_PROBABILITY {
            return Err(Error::ZeroProbabilityBranch { probability: n2 });
        }
        let inv = 1.0 / n2.sqrt();
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a * inv).collect(),
            dims: self.dims.clone(),
        })
    }

    /// Copy scaled by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
            dims: self.dims.clone(),
        }
    }

    /// Element-wise sum; dims must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimsMismatch {
                expected: self.dims.clone(),
                found: other.dims.clone(),
            });
        }
        Ok(Self {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
            dims: self.dims.clone(),
        })
    }
}

/// A square complex matrix acting on one subsystem, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    entries: Vec<Complex64>,
    dim: usize,
}

impl LinearOperator {
    pub fn new(entries: Vec<Complex64>, dim: usize) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::ShapeMismatch {
                len: entries.len(),
                expected: dim * dim,
            });
        }
        Ok(Self { entries, dim })
    }

    /// 2×2 operator from rows [[a, b], [c, d]].
    pub fn two_by_two(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            entries: vec![a, b, c, d],
            dim: 2,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = Complex64::ONE;
        }
        Self { entries, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.get(r, c).conj();
            }
        }
        Self { entries, dim: d }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                operator: self.dim,
                subsystem: other.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.get(r, k) * other.get(k, c);
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(Self { entries, dim: d })
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when U†U = I within `eps`.
    pub fn is_unitary(&self, eps: f64) -> bool {
        let prod = self
            .adjoint()
            .compose(self)
            .expect("adjoint preserves dimension");
        prod.max_abs_diff(&Self::identity(self.dim)) <= eps
    }

    /// True when P² = P and P = P† within `eps`.
    pub fn is_projector(&self, eps: f64) -> bool {
        let idem = self
            .compose(self)
            .expect("composition with self preserves dimension");
        idem.max_abs_diff(self) <= eps && self.adjoint().max_abs_diff(self) <= eps
    }
}

/// Kronecker product: dims concatenate, amplitudes combine as
/// `out[i * b.len() + j] = a[i] * b[j]`.
pub fn tensor(a: &StateVector, b: &StateVector) -> StateVector {
    let mut amplitudes = Vec::with_capacity(a.len() * b.len());
    for &ai in &a.amplitudes {
        for &bj in &b.amplitudes {
            amplitudes.push(ai * bj);
        }
    }
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    StateVector { amplitudes, dims }
}

/// Applies `op` to subsystem `target`, acting as identity on all others.
pub fn apply(op: &LinearOperator, state: &StateVector, target: usize) -> Result<StateVector> {
    if target >= state.dims.len() {
        return Err(Error::SubsystemOutOfRange {
            index: target,
            count: state.dims.len(),
        });
    }
    let d = state.dims[target];
    if op.dim != d {
        return Err(Error::DimensionMismatch {
            operator: op.dim,
            subsystem: d,
        });
    }
    let stride: usize = state.dims[target + 1..].iter().product();
    let span = d * stride;
    let mut out = vec![Complex64::ZERO; state.len()];
    for base in (0..state.len()).step_by(span) {
        for inner in 0..stride {
            for r in 0..d {
                let mut acc = Complex64::ZERO;
                for c in 0..d {
                    acc += op.get(r, c) * state.amplitudes[base + c * stride + inner];
                }
                out[base + r * stride + inner] = acc;
            }
        }
    }
    StateVector::new(out, state.dims.clone())
}

/// Projects subsystem `target` with `projector`.
///
/// Returns the unnormalized projected vector together with the outcome
/// probability ‖P ψ‖² / ‖ψ‖². The matrix must be an actual projector
/// (idempotent, Hermitian) within [`tol::ALGEBRAIC`].
pub fn project(
    state: &StateVector,
    projector: &LinearOperator,
    target: usize,
) -> Result<(StateVector, f64)> {
    if !projector.is_projector(tol::ALGEBRAIC) {
        return Err(Error::NotAProjector);
    }
    let projected = apply(projector, state, target)?;
    let probability = projected.norm_sqr() / state.norm_sqr();
    Ok((projected, probability))
}

/// Projects and renormalizes, i.e. the post-measurement conditional state.
///
/// Errors with [`Error::ZeroProbabilityBranch`] when the outcome probability
/// falls below [`tol::ZERO_PROBABILITY`].
pub fn conditioned(
    state: &StateVector,
    projector: &LinearOperator,
    target: usize,
) -> Result<(StateVector, f64)> {
    let (projected, probability) = project(state, projector, target)?;
    if probability < tol::ZERO_PROBABILITY {
        return Err(Error::ZeroProbabilityBranch { probability });
    }
    Ok((projected.normalized()?, probability))
}
