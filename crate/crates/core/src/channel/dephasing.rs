//! Dephasing (Schur multiplier) channels and the translation-invariant families.
//!
//! Kernel convention: `Λ_nm` multiplies `|e_n⟩⟨e_m|`. For translation-invariant kernels
//! `Λ_nm = λ_{n−m}` with `λ_{−j} = conj(λ_j)`.

use std::f64::consts::TAU;

use rand::Rng;

use super::QuantumChannel;
use crate::math::{dft_sequence, hermitian_eig, ComplexMatrix, C64};
use crate::rng::{random_simplex_point, random_unit_vector, seeded};
use crate::{Error, Result, SUPPORT_TOL};

const KERNEL_TOL: f64 = 1e-10;
const WEIGHT_SUM_TOL: f64 = 1e-10;

/// Hermitian positive semidefinite kernel with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    matrix: ComplexMatrix,
}

impl CorrelationMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Correlation(format!(
                "kernel must be non-empty and square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let herm = matrix.hermiticity_deviation();
        if herm > KERNEL_TOL {
            return Err(Error::Correlation(format!("not Hermitian ({herm:e})")));
        }
        if let Some((n, z)) = matrix
            .diagonal()
            .into_iter()
            .enumerate()
            .find(|(_, z)| (z - 1.0).norm() > KERNEL_TOL)
        {
            return Err(Error::Correlation(format!("diagonal entry {n} is {z}, not 1")));
        }
        let min = hermitian_eig(&matrix)?.min_eigenvalue();
        if min < -KERNEL_TOL {
            return Err(Error::Correlation(format!(
                "not positive semidefinite (eigenvalue {min:e})"
            )));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn all_ones(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::from_fn(dim, dim, |_, _| C64::new(1.0, 0.0)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    /// Entrywise product; again a correlation matrix (Schur product theorem).
    pub fn schur(&self, other: &Self) -> Result<Self> {
        Self::new(self.matrix.hadamard(&other.matrix)?)
    }
}

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Distribution("no weights".into()));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::Distribution(format!("weight {i} is {w}")));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Distribution(format!("weights sum to {s}")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn random(n: usize, seed: u64) -> Self {
        Self {
            weights: random_simplex_point(&mut seeded(seed), n),
        }
    }

    /// The characteristic sequence `λ_j = Σ_k exp(2πi·jk/N) π_k`.
    pub fn characteristic(&self) -> Vec<C64> {
        dft_sequence(&self.weights)
    }
}

/// Finitely supported probability measure on the circle `R/Z`; atoms are `(weight, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMeasure {
    atoms: Vec<(f64, f64)>,
}

impl CircleMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Measure("no atoms".into()));
        }
        for (i, &(w, t)) in atoms.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Measure(format!("atom {i} has weight {w}")));
            }
            if !(0.0..1.0).contains(&t) {
                return Err(Error::Measure(format!("atom {i} has angle {t} outside [0, 1)")));
            }
        }
        let s: f64 = atoms.iter().map(|a| a.0).sum();
        if (s - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Measure(format!("weights sum to {s}")));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// `∫ exp(2πi j t) dμ(t)`.
    pub fn fourier_coefficient(&self, j: i64) -> C64 {
        self.atoms
            .iter()
            .map(|&(w, t)| C64::from_polar(w, TAU * j as f64 * t))
            .sum()
    }
}

/// Schur-multiplier channel `ρ ↦ Λ ∘ ρ`.
///
/// Kraus operators come from the spectral decomposition `Λ = Σ_k μ_k w_k w_k†`:
/// `V_k = diag(√μ_k w_k)`; eigenvalues `≤ 1e-12` are dropped.
pub fn dephasing_channel(corr: &CorrelationMatrix) -> Result<QuantumChannel> {
    let eig = hermitian_eig(corr.matrix())?;
    let kraus: Vec<ComplexMatrix> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu > SUPPORT_TOL)
        .map(|(k, &mu)| {
            let s = mu.sqrt();
            let w: Vec<C64> = eig.eigenvector(k).into_iter().map(|z| z * s).collect();
            ComplexMatrix::from_diag(&w)
        })
        .collect();
    QuantumChannel::new(kraus)
}

/// `Λ_nm = λ_{(n−m) mod N}`.
pub fn circulant_kernel(lambda: &[C64]) -> ComplexMatrix {
    let n = lambda.len();
    ComplexMatrix::from_fn(n, n, |i, j| lambda[(i + n - j) % n])
}

/// Dephasing channel with the circulant kernel built from the characteristic sequence of `pi`.
pub fn phase_damping_channel(pi: &ProbabilityDistribution) -> Result<QuantumChannel> {
    let corr = CorrelationMatrix::new(circulant_kernel(&pi.characteristic()))?;
    dephasing_channel(&corr)
}

/// Random-unitary form `ρ ↦ Σ_k π_k U^k ρ U^{−k}` with `U = diag(exp(2πi n/N))`.
pub fn shift_representation(pi: &ProbabilityDistribution) -> QuantumChannel {
    let n = pi.len();
    let kraus: Vec<ComplexMatrix> = pi
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(k, &w)| {
            let diag: Vec<C64> = (0..n)
                .map(|m| C64::from_polar(w.sqrt(), TAU * ((m * k) % n) as f64 / n as f64))
                .collect();
            ComplexMatrix::from_diag(&diag)
        })
        .collect();
    QuantumChannel::new(kraus).expect("weights of a distribution sum to one")
}

/// Toeplitz kernel `Λ_nm = λ_{n−m}` from the Fourier coefficients of `mu`.
pub fn toeplitz_kernel(mu: &CircleMeasure, dim: usize) -> ComplexMatrix {
    let coeffs: Vec<C64> = (0..dim).map(|j| mu.fourier_coefficient(j as i64)).collect();
    ComplexMatrix::from_fn(dim, dim, |n, m| {
        if n >= m {
            coeffs[n - m]
        } else {
            coeffs[m - n].conj()
        }
    })
}

/// Dephasing channel on `C^dim` with the Toeplitz kernel of `mu`.
pub fn toeplitz_dephasing(mu: &CircleMeasure, dim: usize) -> Result<QuantumChannel> {
    if dim == 0 {
        return Err(Error::Dimension("dim must be at least 1".into()));
    }
    dephasing_channel(&CorrelationMatrix::new(toeplitz_kernel(mu, dim))?)
}

/// `ρ ↦ Σ_a w_a U_{t_a} ρ U_{t_a}†` with `U_t = diag(exp(2πi n t))`.
pub fn diagonal_unitary_mixture(mu: &CircleMeasure, dim: usize) -> Result<QuantumChannel> {
    let kraus = mu
        .atoms()
        .iter()
        .filter(|a| a.0 > 0.0)
        .map(|&(w, t)| {
            let diag: Vec<C64> = (0..dim)
                .map(|n| C64::from_polar(w.sqrt(), TAU * n as f64 * t))
                .collect();
            ComplexMatrix::from_diag(&diag)
        })
        .collect();
    QuantumChannel::new(kraus)
}

/// Gram matrix of `dim` random unit vectors in `C^rank`.
pub fn random_correlation(dim: usize, rank: usize, seed: u64) -> CorrelationMatrix {
    let mut rng = seeded(seed);
    let vs: Vec<Vec<C64>> = (0..dim)
        .map(|_| random_unit_vector(&mut rng, rank.max(1)))
        .collect();
    let mut m = ComplexMatrix::from_fn(dim, dim, |n, k| crate::math::inner(&vs[k], &vs[n]));
    for n in 0..dim {
        m[(n, n)] = C64::new(1.0, 0.0);
    }
    CorrelationMatrix { matrix: m }
}

/// Random atomic measure with `1..=max_atoms` atoms.
pub fn random_circle_measure(max_atoms: usize, seed: u64) -> CircleMeasure {
    let mut rng = seeded(seed);
    let k = rng.random_range(1..=max_atoms.max(1));
    let w = random_simplex_point(&mut rng, k);
    let atoms = w.into_iter().map(|w| (w, rng.random::<f64>())).collect();
    CircleMeasure { atoms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::identity_channel;
    use crate::math::{c, psd_check};
    use crate::rng::derive_seed;
    use crate::state::{random_density, DensityMatrix};

    fn complete_dephasing(d: usize) -> QuantumChannel {
        let kraus = (0..d)
            .map(|i| {
                let mut p = ComplexMatrix::zeros(d, d);
                p[(i, i)] = c(1.0, 0.0);
                p
            })
            .collect();
        QuantumChannel::new(kraus).unwrap()
    }

    fn point_mass(n: usize) -> ProbabilityDistribution {
        let mut w = vec![0.0; n];
        w[0] = 1.0;
        ProbabilityDistribution::new(w).unwrap()
    }

    #[test]
    fn correlation_validation() {
        assert!(CorrelationMatrix::new(ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]])).is_err());
        assert!(CorrelationMatrix::new(ComplexMatrix::from_real_diag(&[1.0, 0.5])).is_err());
        assert!(CorrelationMatrix::new(ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.4, 1.0]])).is_err());
        assert!(CorrelationMatrix::new(ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]])).is_ok());
    }

    #[test]
    fn distribution_and_measure_validation() {
        assert!(ProbabilityDistribution::new(vec![]).is_err());
        assert!(ProbabilityDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(CircleMeasure::new(vec![(1.0, 1.0)]).is_err());
        assert!(CircleMeasure::new(vec![(0.5, 0.0)]).is_err());
        assert!(matches!(CircleMeasure::new(vec![]), Err(Error::Measure(_))));
    }

    #[test]
    fn dephasing_examples() {
        let id = dephasing_channel(&CorrelationMatrix::all_ones(4)).unwrap();
        assert!(id.approx_eq(&identity_channel(4)));
        let full = dephasing_channel(&CorrelationMatrix::identity(4)).unwrap();
        assert!(full.approx_eq(&complete_dephasing(4)));

        let half = CorrelationMatrix::new(ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]]))
            .unwrap();
        let plus = DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]))
            .unwrap();
        let out = dephasing_channel(&half).unwrap().apply(&plus).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.5]]);
        assert!(out.matrix().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn dephasing_acts_as_schur_product() {
        for s in 0..30u64 {
            let d = 1 + (s as usize % 6);
            let corr = random_correlation(d, 1 + (s as usize % 3), derive_seed(1, s));
            let ch = dephasing_channel(&corr).unwrap();
            let rho = random_density(d, derive_seed(2, s));
            let out = ch.apply(&rho).unwrap();
            let expect = corr.matrix().hadamard(rho.matrix()).unwrap();
            assert!(out.matrix().max_abs_diff(&expect) < 1e-10);
            // Diagonal untouched.
            for n in 0..d {
                assert!((out.matrix()[(n, n)] - rho.matrix()[(n, n)]).norm() < 1e-10);
            }
            // Φ(|e_n⟩⟨e_m|) = Λ_nm |e_n⟩⟨e_m|, read off the Choi matrix.
            let choi = ch.choi();
            for n in 0..d {
                for m in 0..d {
                    let z = choi[(n * d + n, m * d + m)];
                    assert!((z - corr.matrix()[(n, m)]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn composition_multiplies_kernels() {
        for s in 0..10u64 {
            let a = random_correlation(4, 2, derive_seed(3, s));
            let b = random_correlation(4, 3, derive_seed(4, s));
            let composed = dephasing_channel(&a)
                .unwrap()
                .compose(&dephasing_channel(&b).unwrap())
                .unwrap();
            let direct = dephasing_channel(&a.schur(&b).unwrap()).unwrap();
            assert!(composed.choi_distance(&direct) < 1e-10);
        }
    }

    #[test]
    fn phase_damping_examples() {
        assert!(phase_damping_channel(&point_mass(5)).unwrap().approx_eq(&identity_channel(5)));
        let uni = ProbabilityDistribution::new(vec![0.25; 4]).unwrap();
        assert!(phase_damping_channel(&uni).unwrap().approx_eq(&complete_dephasing(4)));
        let half = ProbabilityDistribution::new(vec![0.5, 0.5]).unwrap();
        let l = half.characteristic();
        assert!(l[1].norm() < 1e-15);
        assert!(phase_damping_channel(&half).unwrap().approx_eq(&complete_dephasing(2)));
    }

    #[test]
    fn shift_representation_examples() {
        let id = shift_representation(&point_mass(3));
        assert_eq!(id.kraus().len(), 1);
        assert!(id.approx_eq(&identity_channel(3)));

        let half = ProbabilityDistribution::new(vec![0.5, 0.5]).unwrap();
        let s = shift_representation(&half);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(s.kraus()[0].max_abs_diff(&ComplexMatrix::from_real_diag(&[r, r])) < 1e-15);
        assert!(s.kraus()[1].max_abs_diff(&ComplexMatrix::from_real_diag(&[r, -r])) < 1e-15);
    }

    #[test]
    fn shift_and_kernel_forms_agree() {
        for s in 0..40u64 {
            let n = 2 + (s as usize % 15);
            let pi = ProbabilityDistribution::random(n, derive_seed(6, s));
            let a = phase_damping_channel(&pi).unwrap();
            let b = shift_representation(&pi);
            assert!(a.choi_distance(&b) <= 1e-10, "n = {n}");
        }
    }

    #[test]
    fn circulant_of_distribution_is_psd() {
        for s in 0..20u64 {
            let pi = ProbabilityDistribution::random(2 + s as usize, derive_seed(8, s));
            assert!(psd_check(&circulant_kernel(&pi.characteristic()), 1e-10).unwrap());
        }
    }

    #[test]
    fn toeplitz_examples() {
        let delta = CircleMeasure::new(vec![(1.0, 0.0)]).unwrap();
        assert!(toeplitz_dephasing(&delta, 4).unwrap().approx_eq(&identity_channel(4)));

        let two = CircleMeasure::new(vec![(0.5, 0.0), (0.5, 0.5)]).unwrap();
        assert!(two.fourier_coefficient(1).norm() < 1e-15);
        assert!(toeplitz_dephasing(&two, 2).unwrap().approx_eq(&complete_dephasing(2)));
    }

    #[test]
    fn lattice_measure_matches_circulant_except_wraparound() {
        // Atoms at a/N: Toeplitz and circulant kernels agree entrywise because the
        // Fourier coefficients are N-periodic; only the index convention differs.
        let n = 5;
        let pi = ProbabilityDistribution::random(n, 21);
        let atoms = pi
            .weights()
            .iter()
            .enumerate()
            .map(|(a, &w)| (w, a as f64 / n as f64))
            .collect();
        let mu = CircleMeasure::new(atoms).unwrap();
        let toep = toeplitz_kernel(&mu, n);
        let circ = circulant_kernel(&pi.characteristic());
        assert!(toep.max_abs_diff(&circ) < 1e-12);
        assert!(toeplitz_dephasing(&mu, n)
            .unwrap()
            .approx_eq(&phase_damping_channel(&pi).unwrap()));
    }

    #[test]
    fn toeplitz_equals_diagonal_unitary_mixture() {
        for s in 0..30u64 {
            let mu = random_circle_measure(5, derive_seed(12, s));
            let dim = 1 + (s as usize % 12);
            let k = toeplitz_kernel(&mu, dim);
            assert!(psd_check(&k, 1e-10).unwrap());
            let a = toeplitz_dephasing(&mu, dim).unwrap();
            let b = diagonal_unitary_mixture(&mu, dim).unwrap();
            assert!(a.choi_distance(&b) <= 1e-10);
        }
    }
}
