//! Upper estimates of the convex closure of the output entropy
//! `S_Ω(σ) = inf Σ_j p_j S(Ω(ρ_j))` over decompositions `σ = Σ_j p_j ρ_j`.
//!
//! By concavity of `ρ ↦ S(Ω(ρ))` the infimum can be restricted to pure decompositions.
//! Every `m`-member pure decomposition of `σ = Σ_i μ_i |u_i⟩⟨u_i|` (rank `r`) has the form
//! `φ̃_j = Σ_i conj(M_ji) √μ_i u_i` for an `m × r` matrix `M` with orthonormal columns,
//! and the search runs over such `M` with Givens rotations acting on its rows.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{identity_channel, tensor, QuantumChannel};
use crate::entropy::{von_neumann, weighted_output_entropy};
use crate::math::{hermitian_eig, inner, norm, outer, partial_trace, ComplexMatrix, Subsystem, C64};
use crate::rng::{derive_seed, haar_isometry, seeded};
use crate::state::{correlated_state, CorrelatedStateSpec, DensityMatrix};
use crate::entropy::GainCertificate;
use crate::{Error, Result, INEQUALITY_TOL, SUPPORT_TOL};

const ISOMETRY_TOL: f64 = 1e-8;
const MAX_SWEEPS: usize = 10_000;
const STALL_WINDOW: usize = 50;
const STALL_TOL: f64 = 1e-9;
const MIN_STEP: f64 = 1e-9;

/// Pure-state ensemble `{p_j, |φ_j⟩}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub weights: Vec<f64>,
    pub members: Vec<Vec<C64>>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, members: Vec<Vec<C64>>) -> Result<Self> {
        if weights.len() != members.len() || members.is_empty() {
            return Err(Error::Dimension(format!(
                "{} weights for {} members",
                weights.len(),
                members.len()
            )));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::Distribution("negative ensemble weight".into()));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > 1e-10 {
            return Err(Error::Distribution(format!("ensemble weights sum to {s}")));
        }
        let d = members[0].len();
        for (j, m) in members.iter().enumerate() {
            if m.len() != d {
                return Err(Error::Dimension(format!("member {j} has dimension {}", m.len())));
            }
            if (norm(m) - 1.0).abs() > 1e-10 {
                return Err(Error::Normalization(format!("member {j} is not a unit vector")));
            }
        }
        Ok(Self { weights, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Σ_j p_j |φ_j⟩⟨φ_j|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.members[0].len();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, m) in self.weights.iter().zip(&self.members) {
            acc = &acc + &outer(m, m).scale_real(*w);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoofEstimate {
    pub value: f64,
    pub ensemble: Ensemble,
    pub restarts: usize,
    pub converged: bool,
}

/// `S(Ω(|φ⟩⟨φ|))` from the Gram matrix of `{V_a φ}` when that is the smaller problem.
pub fn pure_output_entropy(omega: &QuantumChannel, phi: &[C64]) -> Result<f64> {
    let k = omega.kraus().len();
    if k >= omega.dim_out() {
        return crate::entropy::matrix_entropy(&omega.apply_pure(phi));
    }
    let ws: Vec<Vec<C64>> = omega.kraus().iter().map(|v| v.mat_vec(phi)).collect();
    let gram = ComplexMatrix::from_fn(k, k, |a, b| inner(&ws[b], &ws[a]));
    crate::entropy::matrix_entropy(&gram)
}

pub fn ensemble_objective(ens: &Ensemble, omega: &QuantumChannel) -> Result<f64> {
    if ens.members[0].len() != omega.dim_in() {
        return Err(Error::Dimension(format!(
            "ensemble in dimension {}, channel input {}",
            ens.members[0].len(),
            omega.dim_in()
        )));
    }
    let mut acc = 0.0;
    for (w, m) in ens.weights.iter().zip(&ens.members) {
        if *w > 0.0 {
            acc += w * pure_output_entropy(omega, m)?;
        }
    }
    Ok(acc)
}

/// Spectral data of `σ` restricted to its support: columns `√μ_i u_i`.
struct SqrtFactor {
    dim: usize,
    cols: Vec<Vec<C64>>,
    mus: Vec<f64>,
    us: Vec<Vec<C64>>,
}

impl SqrtFactor {
    fn new(sigma: &DensityMatrix) -> Result<Self> {
        let eig = hermitian_eig(sigma.matrix())?;
        let mut cols = Vec::new();
        let mut mus = Vec::new();
        let mut us = Vec::new();
        for (k, &mu) in eig.eigenvalues.iter().enumerate() {
            if mu > SUPPORT_TOL {
                let u = eig.eigenvector(k);
                cols.push(u.iter().map(|z| z * mu.sqrt()).collect());
                mus.push(mu);
                us.push(u);
            }
        }
        Ok(Self {
            dim: sigma.dim(),
            cols,
            mus,
            us,
        })
    }

    fn rank(&self) -> usize {
        self.cols.len()
    }

    /// Unnormalized member `φ̃ = Σ_i conj(row_i) √μ_i u_i`.
    fn member(&self, row: &[C64]) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.dim];
        for (r, col) in row.iter().zip(&self.cols) {
            let rc = r.conj();
            for (x, c) in v.iter_mut().zip(col) {
                *x += rc * c;
            }
        }
        v
    }

    /// Rows of a mixing matrix that reproduces the given decomposition of `σ`.
    fn mix_for(&self, ens: &Ensemble, m: usize) -> Result<ComplexMatrix> {
        if ens.len() > m {
            return Err(Error::Dimension(format!(
                "ensemble of {} members does not fit m = {m}",
                ens.len()
            )));
        }
        let mut mix = ComplexMatrix::zeros(m, self.rank());
        for (j, (w, phi)) in ens.weights.iter().zip(&ens.members).enumerate() {
            for (i, (u, mu)) in self.us.iter().zip(&self.mus).enumerate() {
                mix[(j, i)] = (inner(u, phi) * w.sqrt()).conj() / mu.sqrt();
            }
        }
        check_isometry(&mix)?;
        Ok(mix)
    }
}

fn check_isometry(mix: &ComplexMatrix) -> Result<()> {
    let dev = (&mix.adjoint() * mix).max_abs_diff(&ComplexMatrix::identity(mix.cols()));
    if dev > ISOMETRY_TOL {
        return Err(Error::Isometry(dev));
    }
    Ok(())
}

fn row(mix: &ComplexMatrix, j: usize) -> Vec<C64> {
    (0..mix.cols()).map(|i| mix[(j, i)]).collect()
}

fn ensemble_from_mix(factor: &SqrtFactor, mix: &ComplexMatrix) -> Ensemble {
    let mut weights = Vec::new();
    let mut members = Vec::new();
    for j in 0..mix.rows() {
        let v = factor.member(&row(mix, j));
        let p = norm(&v).powi(2);
        if p > 1e-15 {
            let s = p.sqrt();
            weights.push(p);
            members.push(v.into_iter().map(|z| z / s).collect());
        }
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    Ensemble { weights, members }
}

/// All `m`-member pure decompositions of `σ`, parameterized by `mix` (`m × rank(σ)`,
/// orthonormal columns). Zero-weight members are dropped.
pub fn hjw_ensemble(sigma: &DensityMatrix, mix: &ComplexMatrix) -> Result<Ensemble> {
    let factor = SqrtFactor::new(sigma)?;
    if mix.cols() != factor.rank() || mix.rows() < mix.cols() {
        return Err(Error::Dimension(format!(
            "mixing matrix is {}x{}, state has rank {}",
            mix.rows(),
            mix.cols(),
            factor.rank()
        )));
    }
    check_isometry(mix)?;
    Ok(ensemble_from_mix(&factor, mix))
}

/// Local search state for one starting isometry.
struct Search<'a> {
    factor: &'a SqrtFactor,
    omega: &'a QuantumChannel,
    mix: ComplexMatrix,
    contrib: Vec<f64>,
    value: f64,
}

impl<'a> Search<'a> {
    fn new(factor: &'a SqrtFactor, omega: &'a QuantumChannel, mix: ComplexMatrix) -> Result<Self> {
        let contrib = (0..mix.rows())
            .map(|j| Self::member_value(factor, omega, &row(&mix, j)))
            .collect::<Result<Vec<_>>>()?;
        let value = contrib.iter().sum();
        Ok(Self {
            factor,
            omega,
            mix,
            contrib,
            value,
        })
    }

    /// `p_j S(Ω(φ_j))` for one row of the mixing matrix.
    fn member_value(factor: &SqrtFactor, omega: &QuantumChannel, row: &[C64]) -> Result<f64> {
        let v = factor.member(row);
        let p = norm(&v).powi(2);
        if p <= 1e-15 {
            return Ok(0.0);
        }
        let s = p.sqrt();
        let phi: Vec<C64> = v.into_iter().map(|z| z / s).collect();
        Ok(p * pure_output_entropy(omega, &phi)?)
    }

    /// Tries the rotation `[[c, −e^{iφ}s], [e^{−iφ}s, c]]` on rows `(j, k)`; keeps it if it
    /// lowers the objective.
    fn try_rotation(&mut self, j: usize, k: usize, theta: f64, phase: f64) -> Result<bool> {
        let (s, c) = theta.sin_cos();
        let e = C64::from_polar(1.0, phase);
        let rj = row(&self.mix, j);
        let rk = row(&self.mix, k);
        let nj: Vec<C64> = rj.iter().zip(&rk).map(|(a, b)| a * c - e * s * b).collect();
        let nk: Vec<C64> = rj.iter().zip(&rk).map(|(a, b)| e.conj() * s * a + b * c).collect();
        let vj = Self::member_value(self.factor, self.omega, &nj)?;
        let vk = Self::member_value(self.factor, self.omega, &nk)?;
        let delta = vj + vk - self.contrib[j] - self.contrib[k];
        if delta < -1e-15 {
            for i in 0..self.mix.cols() {
                self.mix[(j, i)] = nj[i];
                self.mix[(k, i)] = nk[i];
            }
            self.contrib[j] = vj;
            self.contrib[k] = vk;
            self.value = self.contrib.iter().sum();
            return Ok(true);
        }
        Ok(false)
    }

    /// Coordinate descent over all row pairs with a shrinking angle; returns `converged`.
    fn run(&mut self, seed: u64) -> Result<bool> {
        let m = self.mix.rows();
        if m < 2 {
            return Ok(true);
        }
        let mut rng = seeded(seed);
        let mut step = FRAC_PI_4;
        let mut history = vec![self.value];
        for _ in 0..MAX_SWEEPS {
            let phase0 = rng.random::<f64>() * TAU;
            let mut improved = false;
            for j in 0..m {
                for k in (j + 1)..m {
                    for phase in [phase0, phase0 + FRAC_PI_2] {
                        for theta in [step, -step] {
                            improved |= self.try_rotation(j, k, theta, phase)?;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
            history.push(self.value);
            if step < MIN_STEP {
                return Ok(true);
            }
            if history.len() > STALL_WINDOW {
                let past = history[history.len() - 1 - STALL_WINDOW];
                if past - self.value < STALL_TOL {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Default ensemble size `rank(σ)²`.
pub fn default_ensemble_size(sigma: &DensityMatrix) -> Result<usize> {
    let r = SqrtFactor::new(sigma)?.rank();
    Ok(r * r)
}

/// Upper bound on `S_Ω(σ)` from local search over `m`-member decompositions.
///
/// Starts from the eigen-decomposition of `σ` and from `restarts` Haar-random isometries
/// (restart `i` seeded by `derive_seed(seed, i)`); the minimum over all starts is returned.
pub fn roof_upper_bound(
    sigma: &DensityMatrix,
    omega: &QuantumChannel,
    m: usize,
    restarts: usize,
    seed: u64,
) -> Result<RoofEstimate> {
    roof_upper_bound_with_starts(sigma, omega, m, restarts, seed, &[])
}

/// As [`roof_upper_bound`], additionally starting from each of the given decompositions
/// of `σ` (each must have at most `m` members).
pub fn roof_upper_bound_with_starts(
    sigma: &DensityMatrix,
    omega: &QuantumChannel,
    m: usize,
    restarts: usize,
    seed: u64,
    starts: &[Ensemble],
) -> Result<RoofEstimate> {
    if omega.dim_in() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "state dimension {}, channel input {}",
            sigma.dim(),
            omega.dim_in()
        )));
    }
    if restarts == 0 {
        return Err(Error::Config {
            field: "restarts",
            reason: "at least one restart is required".into(),
        });
    }
    let factor = SqrtFactor::new(sigma)?;
    let r = factor.rank();
    if m < r {
        return Err(Error::Config {
            field: "ensemble_size",
            reason: format!("m = {m} is below rank(σ) = {r}"),
        });
    }

    let eigen_mix = ComplexMatrix::from_fn(m, r, |j, i| {
        if i == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    // Job list: (search seed, starting mix). Order fixes the tie-break.
    let mut jobs: Vec<(u64, ComplexMatrix)> = vec![(derive_seed(seed, u64::MAX), eigen_mix)];
    for (w, ens) in starts.iter().enumerate() {
        jobs.push((derive_seed(seed, u64::MAX - 1 - w as u64), factor.mix_for(ens, m)?));
    }
    for i in 0..restarts {
        let s = derive_seed(seed, i as u64);
        let start = haar_isometry(&mut seeded(s), m, r);
        jobs.push((s, start));
    }

    let run = |(s, mix): &(u64, ComplexMatrix)| -> Result<(f64, ComplexMatrix, bool)> {
        let mut search = Search::new(&factor, omega, mix.clone())?;
        let converged = search.run(*s)?;
        Ok((search.value, search.mix, converged))
    };

    #[cfg(feature = "parallel")]
    let results: Vec<Result<(f64, ComplexMatrix, bool)>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(f64, ComplexMatrix, bool)>> = jobs.iter().map(run).collect();

    let mut best: Option<(f64, ComplexMatrix, bool)> = None;
    for res in results {
        let res = res?;
        if best.as_ref().is_none_or(|b| res.0 < b.0) {
            best = Some(res);
        }
    }
    let (_, mix, converged) = best.expect("at least one start");
    let ensemble = ensemble_from_mix(&factor, &mix);
    let value = ensemble_objective(&ensemble, omega)?;
    Ok(RoofEstimate {
        value,
        ensemble,
        restarts,
        converged,
    })
}

/// Corollary-style composite check on a correlated state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corollary1Report {
    /// `S((Id⊗Ω)ρ) − S(ρ)`.
    pub gain: f64,
    /// `Σ_n π_n S(Ω(|h_n⟩⟨h_n|))`, the value of the explicit decomposition of `Tr_H ρ`.
    pub rhs_weak: f64,
    pub roof: RoofEstimate,
    /// `gain ≥ rhs_weak`.
    pub gain_vs_weak: GainCertificate,
    /// `rhs_weak ≥ roof estimate`.
    pub weak_vs_roof: GainCertificate,
    /// `gain − roof estimate` (informational).
    pub conjecture_margin: f64,
}

impl Corollary1Report {
    pub fn pass(&self) -> bool {
        self.gain_vs_weak.pass && self.weak_vs_roof.pass
    }
}

/// Tolerance for `roof ≤ Σ π_n S(Ω(h_n))`.
pub const ROOF_DOMINANCE_TOL: f64 = 1e-6;

pub fn check_corollary1(
    spec: &CorrelatedStateSpec,
    omega: &QuantumChannel,
    m: usize,
    restarts: usize,
    seed: u64,
) -> Result<Corollary1Report> {
    let (dh, dk) = (spec.dim_h(), spec.dim_k());
    let rho = correlated_state(spec)?;
    let out = tensor(&identity_channel(dh), omega).apply(&rho)?;
    let gain = von_neumann(&out)? - von_neumann(&rho)?;
    let weights = spec.weights();
    let rhs_weak = weighted_output_entropy(&weights, spec.vectors(), omega)?;

    let sigma = DensityMatrix::new(partial_trace(rho.matrix(), dh, dk, Subsystem::Second)?)?;
    let (w, members): (Vec<f64>, Vec<Vec<C64>>) = weights
        .iter()
        .zip(spec.vectors())
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, h)| (*w, h.clone()))
        .unzip();
    let total: f64 = w.iter().sum();
    let witness = Ensemble::new(w.iter().map(|x| x / total).collect(), members)?;
    let m = m.max(witness.len());
    let roof = roof_upper_bound_with_starts(&sigma, omega, m, restarts, seed, &[witness])?;

    let gain_vs_weak = GainCertificate::new("cor1", gain, rhs_weak, INEQUALITY_TOL);
    let weak_vs_roof = GainCertificate::new("cor1-roof", rhs_weak, roof.value, ROOF_DOMINANCE_TOL);
    Ok(Corollary1Report {
        gain,
        rhs_weak,
        conjecture_margin: gain - roof.value,
        roof,
        gain_vs_weak,
        weak_vs_roof,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Supported,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureProbe {
    pub gain: f64,
    pub roof: RoofEstimate,
    pub verdict: Verdict,
}

/// Compares `S((Id⊗Ω)ρ) − S(ρ)` with the roof estimate of `Tr_H ρ`.
///
/// The estimate only bounds `S_Ω` from above, so a shortfall is `Inconclusive`, never a
/// counterexample. `starts` may supply known decompositions of `Tr_H ρ`.
#[allow(clippy::too_many_arguments)]
pub fn probe_conjecture(
    rho: &DensityMatrix,
    dim_h: usize,
    dim_k: usize,
    omega: &QuantumChannel,
    m: Option<usize>,
    restarts: usize,
    seed: u64,
    starts: &[Ensemble],
    tol: f64,
) -> Result<ConjectureProbe> {
    if rho.dim() != dim_h * dim_k {
        return Err(Error::Dimension(format!(
            "state dimension {} is not {dim_h}·{dim_k}",
            rho.dim()
        )));
    }
    let out = tensor(&identity_channel(dim_h), omega).apply(rho)?;
    let gain = von_neumann(&out)? - von_neumann(rho)?;
    let sigma = DensityMatrix::new(partial_trace(rho.matrix(), dim_h, dim_k, Subsystem::Second)?)?;
    let m = match m {
        Some(m) => m,
        None => default_ensemble_size(&sigma)?,
    };
    let m = starts.iter().map(Ensemble::len).fold(m, usize::max);
    let roof = roof_upper_bound_with_starts(&sigma, omega, m, restarts, seed, starts)?;
    let verdict = if gain >= roof.value - tol {
        Verdict::Supported
    } else {
        Verdict::Inconclusive
    };
    Ok(ConjectureProbe {
        gain,
        roof,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{depolarizing_channel, random_channel};
    use crate::entropy::{entropy_gain, matrix_entropy};
    use crate::rng::random_unit_vector;
    use crate::state::{product_state, random_correlated_spec, random_density, random_density_with_rank};

    #[test]
    fn objective_examples() {
        let psi = random_unit_vector(&mut seeded(1), 3);
        let omega = random_channel(3, 2, 2);
        let one = Ensemble::new(vec![1.0], vec![psi.clone()]).unwrap();
        let direct = matrix_entropy(&omega.apply_pure(&psi)).unwrap();
        assert!((ensemble_objective(&one, &omega).unwrap() - direct).abs() < 1e-12);

        let sigma = random_density(3, 4);
        let ens = hjw_ensemble(&sigma, &haar_isometry(&mut seeded(3), 5, 3)).unwrap();
        assert!(ensemble_objective(&ens, &identity_channel(3)).unwrap().abs() < 1e-12);
        let dep = depolarizing_channel(3, 1.0).unwrap();
        assert!((ensemble_objective(&ens, &dep).unwrap() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hjw_examples() {
        let sigma = random_density(3, 5);
        let eig = hermitian_eig(sigma.matrix()).unwrap();
        let ens = hjw_ensemble(&sigma, &ComplexMatrix::identity(3)).unwrap();
        for k in 0..3 {
            assert!((ens.weights[k] - eig.eigenvalues[k]).abs() < 1e-12);
            assert!((inner(&ens.members[k], &eig.eigenvector(k)).norm() - 1.0).abs() < 1e-12);
        }

        let psi = random_unit_vector(&mut seeded(6), 3);
        let pure = DensityMatrix::pure(&psi).unwrap();
        let ens = hjw_ensemble(&pure, &haar_isometry(&mut seeded(7), 4, 1)).unwrap();
        assert!(ens.reconstruct().max_abs_diff(pure.matrix()) < 1e-10);
        for m in &ens.members {
            assert!((inner(m, &psi).norm() - 1.0).abs() < 1e-10);
        }

        let half = DensityMatrix::maximally_mixed(2);
        for s in 0..10 {
            let ens = hjw_ensemble(&half, &haar_isometry(&mut seeded(s), 4, 2)).unwrap();
            assert!(ens.reconstruct().max_abs_diff(half.matrix()) < 1e-10);
        }
    }

    #[test]
    fn hjw_rejects_bad_mix() {
        let sigma = random_density(2, 1);
        let bad = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hjw_ensemble(&sigma, &bad), Err(Error::Isometry(_))));
        assert!(matches!(
            hjw_ensemble(&sigma, &ComplexMatrix::identity(3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn refinement_never_increases_objective() {
        // A mixed member ρ_j with weight p_j contributes p_j S(Ω(ρ_j)); splitting it into
        // its pure eigen-ensemble gives at most that (concavity).
        for s in 0..20u64 {
            let omega = random_channel(3, 2, derive_seed(1, s));
            let rho_j = random_density(3, derive_seed(2, s));
            let coarse = matrix_entropy(omega.apply(&rho_j).unwrap().matrix()).unwrap();
            let fine = hjw_ensemble(&rho_j, &haar_isometry(&mut seeded(s), 4, 3)).unwrap();
            assert!(ensemble_objective(&fine, &omega).unwrap() <= coarse + 1e-9);
        }
    }

    #[test]
    fn roof_trivial_cases() {
        let sigma = random_density_with_rank(3, 2, 3);
        let est = roof_upper_bound(&sigma, &identity_channel(3), 4, 2, 1).unwrap();
        assert!(est.value <= 1e-6);
        assert!(est.ensemble.reconstruct().max_abs_diff(sigma.matrix()) < 1e-8);

        let psi = random_unit_vector(&mut seeded(4), 3);
        let pure = DensityMatrix::pure(&psi).unwrap();
        let omega = random_channel(3, 2, 5);
        let est = roof_upper_bound(&pure, &omega, 1, 1, 0).unwrap();
        let direct = matrix_entropy(&omega.apply_pure(&psi)).unwrap();
        assert!((est.value - direct).abs() < 1e-10);

        let dep = depolarizing_channel(3, 1.0).unwrap();
        let est = roof_upper_bound(&sigma, &dep, 4, 2, 6).unwrap();
        assert!((est.value - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn roof_is_bracketed_and_deterministic() {
        let sigma = random_density(3, 8);
        let omega = random_channel(3, 2, 9);
        let eigen = hjw_ensemble(&sigma, &ComplexMatrix::identity(3)).unwrap();
        let eigen_value = ensemble_objective(&eigen, &omega).unwrap();
        let a = roof_upper_bound(&sigma, &omega, 9, 3, 10).unwrap();
        let b = roof_upper_bound(&sigma, &omega, 9, 3, 10).unwrap();
        assert_eq!(a, b);
        assert!(a.value <= eigen_value + 1e-9);
        let full = matrix_entropy(omega.apply(&sigma).unwrap().matrix()).unwrap();
        assert!(a.value <= full + 1e-8 && a.value >= -1e-12);
    }

    #[test]
    fn roof_monotone_in_restarts() {
        let sigma = random_density(3, 11);
        let omega = random_channel(3, 2, 12);
        let mut prev = f64::INFINITY;
        for r in 1..=4 {
            let v = roof_upper_bound(&sigma, &omega, 6, r, 13).unwrap().value;
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn roof_argument_errors() {
        let sigma = random_density(3, 1);
        let omega = random_channel(3, 2, 1);
        assert!(roof_upper_bound(&sigma, &omega, 2, 1, 0).is_err());
        assert!(roof_upper_bound(&sigma, &omega, 3, 0, 0).is_err());
        assert!(roof_upper_bound(&sigma, &random_channel(2, 2, 1), 3, 1, 0).is_err());
    }

    #[test]
    fn corollary1_cases() {
        let spec = random_correlated_spec(3, 2, 1);
        let r = check_corollary1(&spec, &identity_channel(2), 4, 2, 0).unwrap();
        assert!(r.gain.abs() < 1e-9 && r.rhs_weak.abs() < 1e-9 && r.roof.value.abs() < 1e-9);
        assert!(r.pass());

        let diag = CorrelatedStateSpec::new(
            ComplexMatrix::from_real_diag(&spec.weights()),
            spec.vectors().to_vec(),
        )
        .unwrap();
        let omega = random_channel(2, 2, 3);
        let r = check_corollary1(&diag, &omega, 4, 2, 0).unwrap();
        assert!((r.gain - r.rhs_weak).abs() <= 1e-8);
        assert!(r.pass());
    }

    #[test]
    fn conjecture_probe_cases() {
        let spec = random_correlated_spec(3, 2, 4);
        let rho = correlated_state(&spec).unwrap();
        let omega = random_channel(2, 2, 5);
        let witness = Ensemble::new(spec.weights(), spec.vectors().to_vec()).unwrap();
        let p = probe_conjecture(&rho, 3, 2, &omega, None, 2, 0, &[witness], 1e-8).unwrap();
        assert_eq!(p.verdict, Verdict::Supported);

        let p = probe_conjecture(&rho, 3, 2, &identity_channel(2), None, 2, 0, &[], 1e-8).unwrap();
        assert!(p.gain.abs() < 1e-9 && p.roof.value.abs() < 1e-9);
        assert_eq!(p.verdict, Verdict::Supported);

        // Product input: the gain is that of Ω on the second factor alone.
        let a = random_density(2, 6);
        let b = random_density(3, 7);
        let omega = random_channel(3, 2, 8);
        let p = probe_conjecture(&product_state(&a, &b), 2, 3, &omega, None, 2, 0, &[], 1e-8).unwrap();
        assert!((p.gain - entropy_gain(&omega, &b).unwrap()).abs() < 1e-9);
    }
}
