//! Seeded randomness: per-trial seed derivation and the Gaussian/Haar samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::math::{norm, ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed for child `index` of `master`; used for campaign trials and roof restarts.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Standard complex Gaussian `(x + iy)/√2`, `x, y ~ N(0, 1)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniformly distributed unit vector in `C^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, n);
        let nv = norm(&v);
        if nv > 1e-12 {
            return v.into_iter().map(|z| z / nv).collect();
        }
    }
}

/// Orthonormalizes the columns in place order (modified Gram–Schmidt with one
/// re-orthogonalization pass). Returns `None` if the columns are numerically dependent.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let mut cols: Vec<Vec<C64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for j in 0..cols.len() {
        for _pass in 0..2 {
            for i in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let qi = &head[i];
                let proj: C64 = qi.iter().zip(tail[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in tail[0].iter_mut().zip(qi) {
                    *x -= proj * q;
                }
            }
        }
        let nv = norm(&cols[j]);
        if nv < 1e-10 {
            return None;
        }
        for x in cols[j].iter_mut() {
            *x /= nv;
        }
    }
    Some(ComplexMatrix::from_columns(&cols))
}

/// Haar-distributed isometry `C^cols → C^rows` (`rows ≥ cols`): Gram–Schmidt on a
/// complex Gaussian matrix. Gram–Schmidt yields a positive diagonal `R`, which is what
/// makes the resulting `Q` Haar distributed.
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    loop {
        let g = gaussian_matrix(rng, rows, cols);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    haar_isometry(rng, n, n)
}

/// Uniform point of the probability simplex with `n` vertices (normalized exponentials).
pub fn random_simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}
