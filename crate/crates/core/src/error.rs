//! Error type shared by every module of the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing a curve.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A root multiset must contain at least one root.
    #[error("root multiset is empty")]
    EmptyRootSet,

    /// Inputs must be finite; NaN/Inf are rejected at construction time.
    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },

    /// Mismatched parallel arrays (roots vs. multiplicities).
    #[error("expected {expected} multiplicities, got {got}")]
    MultiplicityCount { expected: usize, got: usize },

    /// Multiplicities must be at least 1.
    #[error("multiplicity 0 at index {index}")]
    ZeroMultiplicity { index: usize },

    /// An operation that assumes all roots on the unit circle found an offender.
    #[error("root {root} is off the unit circle by {distance:.3e} (tolerance {tolerance:.1e})")]
    RootOffCircle {
        root: Complex64,
        distance: f64,
        tolerance: f64,
    },

    /// Operation requires a higher polynomial degree than provided.
    #[error("degree {got} too low: need at least {needed}")]
    DegreeTooLow { needed: usize, got: usize },

    /// Simultaneous root iteration hit its iteration cap.
    #[error("root finding did not converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    RootFindingDidNotConverge {
        iterations: usize,
        worst_residual: f64,
    },

    /// `Im(e^{-i theta} P)` vanished at every sample on the circle.
    #[error("the whole unit circle lies on the curve; circle zeros are undefined")]
    DegenerateCircle,

    /// Attempt to take the argument of the difference of coincident unit points.
    #[error("unit points coincide (nu - psi is a multiple of 2 pi); direction undefined")]
    CoincidentUnitPoints,

    /// A parameter was outside its documented range.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    /// The requested theta is too close to a critical theta for the matching
    /// to be well defined.
    #[error("theta {theta} is within {guard:.1e} of critical theta {critical}; matching undefined")]
    NonGenericTheta {
        theta: f64,
        critical: f64,
        guard: f64,
    },

    /// Continuation corrector failed even at the minimum step size.
    #[error("continuation corrector diverged near {at} (step floor reached); curve may be singular or radius too small")]
    CorrectorDiverged { at: Complex64 },

    /// Continuation left the start circle without finding a partner ray.
    #[error("continuation from ray {ray} exited inconsistently: {detail}")]
    InconsistentContinuation { ray: usize, detail: String },

    /// The per-ray partner map did not come back a fixed-point-free involution,
    /// or the resulting pairing crossed itself.
    #[error("asymptote pairing inconsistent: {detail}")]
    InconsistentMatching { detail: String },

    /// Bead samples inside one interval produced different matchings.
    #[error("unresolved transition structure in bead ({start}, {end}): samples disagree: {detail}")]
    UnresolvedTransition {
        start: f64,
        end: f64,
        detail: String,
    },

    /// Deflation produced a vanishing cofactor, i.e. the root index/multiplicity
    /// bookkeeping is inconsistent.
    #[error("deflation at root index {index} left a vanishing cofactor")]
    DeflationFailed { index: usize },

    /// A root index was out of range for the multiset.
    #[error("root index {index} out of range (multiset has {len} distinct roots)")]
    RootIndexOutOfRange { index: usize, len: usize },

    /// Render/trace window is degenerate.
    #[error("invalid window: {what}")]
    InvalidWindow { what: String },
}
