//! Direct `O(N²)` Fourier pair on `Z_N`.
//!
//! Forward: `λ_n = Σ_k exp(2πi·nk/N) π_k`. Inverse: `π_k = (1/N) Σ_n exp(−2πi·nk/N) λ_n`.

use std::f64::consts::TAU;

use super::C64;

/// Candidate weights from [`inverse_dft_sequence`], split into parts.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseDft {
    pub real: Vec<f64>,
    /// Residual imaginary parts; zero (to rounding) iff the input was Hermitian-symmetric.
    pub imag: Vec<f64>,
}

/// `exp(2πi·j/N)` with the exponent reduced mod `N` first.
#[inline]
fn root_of_unity(j: usize, n: usize) -> C64 {
    let j = j % n;
    if j == 0 {
        return C64::new(1.0, 0.0);
    }
    C64::from_polar(1.0, TAU * j as f64 / n as f64)
}

pub fn dft_sequence(weights: &[f64]) -> Vec<C64> {
    let n = weights.len();
    (0..n)
        .map(|j| {
            weights
                .iter()
                .enumerate()
                .map(|(k, &w)| root_of_unity(j * k, n) * w)
                .sum()
        })
        .collect()
}

pub fn inverse_dft_sequence(lambda: &[C64]) -> InverseDft {
    let n = lambda.len();
    let vals: Vec<C64> = (0..n)
        .map(|k| {
            let s: C64 = lambda
                .iter()
                .enumerate()
                .map(|(j, &l)| root_of_unity(j * k, n).conj() * l)
                .sum();
            s / n as f64
        })
        .collect();
    InverseDft {
        real: vals.iter().map(|z| z.re).collect(),
        imag: vals.iter().map(|z| z.im).collect(),
    }
}
