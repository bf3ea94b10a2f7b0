//! Deciding whether a sequence `(λ_0, …, λ_{N−1})` defines a phase-damping kernel.
//!
//! A normalized positive-definite function on `Z_N` is the Fourier transform of a unique
//! probability distribution, so the test inverts the transform and checks that the result
//! is a distribution.

use serde::{Deserialize, Serialize};

use super::ProbabilityDistribution;
use crate::math::{inverse_dft_sequence, C64};

const NEGATIVE_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-10;
const SUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    /// `Σ_k π_k = λ_0` is not 1.
    Normalization { sum: f64 },
    /// Candidate weight has an imaginary part, i.e. `λ_{N−j} ≠ conj(λ_j)`.
    Imaginary { index: usize, value: f64 },
    NegativeWeight { index: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    PhaseDamping(ProbabilityDistribution),
    NotPhaseDamping(Violation),
}

impl Classification {
    pub fn is_phase_damping(&self) -> bool {
        matches!(self, Classification::PhaseDamping(_))
    }

    pub fn distribution(&self) -> Option<&ProbabilityDistribution> {
        match self {
            Classification::PhaseDamping(p) => Some(p),
            Classification::NotPhaseDamping(_) => None,
        }
    }
}

pub fn classify_phase_damping(lambda: &[C64]) -> Classification {
    if lambda.is_empty() {
        return Classification::NotPhaseDamping(Violation::Empty);
    }
    let inv = inverse_dft_sequence(lambda);
    let sum: f64 = inv.real.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Classification::NotPhaseDamping(Violation::Normalization { sum });
    }
    if let Some((index, &value)) = inv
        .imag
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .filter(|(_, v)| v.abs() > IMAG_TOL)
    {
        return Classification::NotPhaseDamping(Violation::Imaginary { index, value });
    }
    if let Some((index, &value)) = inv
        .real
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .filter(|(_, v)| **v < -NEGATIVE_TOL)
    {
        return Classification::NotPhaseDamping(Violation::NegativeWeight { index, value });
    }
    let clamped: Vec<f64> = inv.real.iter().map(|w| w.max(0.0)).collect();
    let s: f64 = clamped.iter().sum();
    let weights = clamped.into_iter().map(|w| w / s).collect();
    Classification::PhaseDamping(
        ProbabilityDistribution::new(weights).expect("clamped and renormalized weights"),
    )
}
