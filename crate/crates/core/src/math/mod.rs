//! Dense complex linear algebra used throughout the crate.

mod dft;
mod eig;
mod matrix;

pub use dft::{dft_sequence, inverse_dft_sequence, InverseDft};
pub use eig::{hermitian_eig, psd_check, EigenDecomposition};
pub use matrix::{inner, kron, norm, outer, partial_trace, ComplexMatrix, Subsystem};

pub type C64 = num_complex::Complex64;

#[inline]
#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
