//! Error type shared by all simulator modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dag| = {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eig:.3e})")]
    NotPsd { min_eig: f64 },

    #[error("matrix is not unitary (max |U^dag U - I| = {max_dev:.3e})")]
    NotUnitary { max_dev: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("invalid UDD order {got}: {reason}")]
    InvalidOrder { got: usize, reason: &'static str },

    #[error("total Hilbert dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("unphysical relaxation times: {reason}")]
    Unphysical { reason: String },

    #[error("finite pulse of width {width:.3e} s overlaps a neighbor in a free interval of {interval:.3e} s")]
    WidthExceedsInterval { width: f64, interval: f64 },

    #[error("compiled program deviates from its target by {deviation:.3e} (tolerance {tolerance:.1e})")]
    CompilationFailed { deviation: f64, tolerance: f64 },

    #[error("probe left the perturbative window: max infidelity {max_infidelity:.3e} > 0.1")]
    RegimeViolation { max_infidelity: f64 },

    #[error("invalid state angles: {reason}")]
    InvalidAngles { reason: String },

    #[error("invalid run plan: {reason}")]
    InvalidPlan { reason: String },

    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },
}
