//! Numerical laboratory for protecting two-qubit subspace states with
//! three-layer nested Uhrig dynamical decoupling (NUDD).
//!
//! The crate simulates the full protection protocol: Uhrig timing grids and
//! the nested pulse schedule, the 16-operator subspace basis and its
//! commutation structure, spin-bath and Lindblad decoherence backends,
//! piecewise evolution of the protected and unprotected arms, an NMR-style
//! pulse compiler for the three control involutions, and expectation-value
//! tomography with maximum-likelihood reconstruction.
//!
//! Basis ordering is |00>, |01>, |10>, |11> everywhere; the protected
//! subspace is span{|01>, |10>}.

pub mod engine;
pub mod error;
pub mod noise_models;
pub mod opalgebra;
pub mod par;
pub mod pulse_compiler;
pub mod qlinalg;
pub mod tomography;
pub mod udd_timing;

pub use error::Error;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
