//! # qdeph
//!
//! Finite-dimensional toolkit for dephasing and phase-damping quantum channels and
//! the entropy-gain inequalities they satisfy on correlated bipartite states.
//!
//! - [`math`]: dense complex matrices, Kronecker products, partial traces, a Hermitian
//!   Jacobi eigensolver and the direct discrete Fourier pair.
//! - [`channel`]: Kraus-form channels, dephasing (Schur multiplier) channels, the
//!   circulant phase-damping family with its shift-unitary representation, Toeplitz
//!   channels from atomic circle measures, and the Fourier classification of
//!   phase-damping kernels.
//! - [`state`]: density matrices, the correlated state family
//!   `ρ = Σ c_nm |e_n⟩⟨e_m| ⊗ |h_n⟩⟨h_m|` and its support projection.
//! - [`entropy`]: von Neumann and relative entropy, entropy gain and the lower bounds
//!   on it, packaged as [`entropy::GainCertificate`] records.
//! - [`roof`]: upper estimates of the convex closure of the output entropy by
//!   derivative-free search over ensemble decompositions.
//! - [`campaign`]: seeded, reproducible randomized verification campaigns and reports.
//!
//! All entropies are in nats.

#![forbid(unsafe_code)]

pub mod campaign;
pub mod channel;
pub mod entropy;
mod error;
pub mod io;
pub mod math;
pub mod rng;
pub mod roof;
pub mod state;

pub use error::{Error, Result};
pub use math::{ComplexMatrix, C64};

/// Eigenvalues with magnitude below this are treated as exact zeros by entropy code.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-10;

/// Eigenvalues at or below this are excluded from operator logarithms.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Max-norm distance under which two channels are considered equal (Choi comparison).
pub const CHANNEL_EQ_TOL: f64 = 1e-10;

/// Default tolerance for entropy inequalities.
pub const INEQUALITY_TOL: f64 = 1e-8;
