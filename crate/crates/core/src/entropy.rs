//! Entropy functionals and the entropy-gain lower bounds, all in nats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channel::{dephasing_channel, identity_channel, tensor, CorrelationMatrix, QuantumChannel};
use crate::math::{hermitian_eig, inner, ComplexMatrix, C64};
use crate::state::{correlated_state, dephase_then_correlate, pure_correlated_state, CorrelatedStateSpec, DensityMatrix};
use crate::{Error, Result, INEQUALITY_TOL, SUPPORT_TOL};

/// Weight of `ρ` outside `supp σ` above which the support inclusion is considered violated.
const SUPPORT_LEAK_TOL: f64 = 1e-9;

/// Outcome of checking one inequality `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainCertificate {
    pub theorem: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    /// Side conditions checked alongside the inequality (e.g. construction agreement).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aux: BTreeMap<String, f64>,
}

impl GainCertificate {
    pub fn new(theorem: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            theorem: theorem.to_string(),
            lhs,
            rhs,
            margin,
            tol,
            pass: margin >= -tol,
            seed: 0,
            dims: BTreeMap::new(),
            aux: BTreeMap::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_dim(mut self, name: &str, value: usize) -> Self {
        self.dims.insert(name.to_string(), value);
        self
    }

    /// Records a side quantity; `ok == false` fails the certificate.
    pub fn with_aux(mut self, name: &str, value: f64, ok: bool) -> Self {
        self.aux.insert(name.to_string(), value);
        self.pass &= ok;
        self
    }

    /// Re-evaluates pass/fail of the main inequality under another tolerance.
    pub fn passes_at(&self, tol: f64) -> bool {
        self.margin >= -tol
    }

    /// Replaces the tolerance of the main inequality, keeping side-condition failures.
    pub fn with_tol(mut self, tol: f64) -> Self {
        let side_failed = !self.pass && self.passes_at(self.tol);
        self.tol = tol;
        self.pass = !side_failed && self.passes_at(tol);
        self
    }
}

/// `−Σ w log w` over eigenvalues `w > 1e-12`.
fn spectrum_entropy(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&w| w > SUPPORT_TOL)
        .map(|&w| -w * w.ln())
        .sum()
}

/// Entropy of a Hermitian positive matrix (not re-validated as a state).
pub fn matrix_entropy(m: &ComplexMatrix) -> Result<f64> {
    Ok(spectrum_entropy(&hermitian_eig(m)?.eigenvalues))
}

pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

/// `Tr(a log b)` with the logarithm taken on `supp b` (eigenvalues `> 1e-12`).
/// Fails with `Support` when `a` has weight outside `supp b`.
fn trace_log_on_support(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(b)?;
    let mut acc = 0.0;
    let mut leak = 0.0;
    for (k, &s) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvector(k);
        let av: Vec<C64> = a.mat_vec(&v);
        let w = inner(&v, &av).re;
        if s > SUPPORT_TOL {
            acc += w * s.ln();
        } else {
            leak += w;
        }
    }
    if leak > SUPPORT_LEAK_TOL {
        return Err(Error::Support(format!(
            "weight {leak:e} outside the support of the reference operator"
        )));
    }
    Ok(acc)
}

/// `S(ρ‖σ) = Tr ρ(log ρ − log σ)`; `+∞` when `supp ρ ⊄ supp σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "relative entropy of {}-dim and {}-dim states",
            rho.dim(),
            sigma.dim()
        )));
    }
    let cross = match trace_log_on_support(rho.matrix(), sigma.matrix()) {
        Ok(x) => x,
        Err(Error::Support(_)) => return Ok(f64::INFINITY),
        Err(e) => return Err(e),
    };
    Ok(-von_neumann(rho)? - cross)
}

/// `S(Ω(ρ)) − S(ρ)`.
pub fn entropy_gain(chan: &QuantumChannel, rho: &DensityMatrix) -> Result<f64> {
    Ok(von_neumann(&chan.apply(rho)?)? - von_neumann(rho)?)
}

/// Checks `S(Ω(ρ)) − S(ρ) ≥ −Tr(Ω(ρ) log Ω(I))`.
///
/// When `Ω(I) ≤ I` the bound is additionally required to be nonnegative (`≥ −1e-9`).
pub fn holevo_gain_bound(chan: &QuantumChannel, rho: &DensityMatrix) -> Result<GainCertificate> {
    let out = chan.apply(rho)?;
    let lhs = von_neumann(&out)? - von_neumann(rho)?;
    let rhs = -trace_log_on_support(out.matrix(), &chan.image_of_identity())?;
    let cert = GainCertificate::new("eq3", lhs, rhs, INEQUALITY_TOL)
        .with_dim("dim_in", chan.dim_in())
        .with_dim("dim_out", chan.dim_out());
    if chan.is_subunital(1e-9)? {
        Ok(cert.with_aux("bound_nonnegative", rhs, rhs >= -1e-9))
    } else {
        Ok(cert)
    }
}

/// Checks `S(Ω(ρ)) − S(ρ) ≥ −Tr(Ω(ρ) log Ω(P))` for a projection `P` with `Pρ = ρP = ρ`.
pub fn projection_gain_bound(
    chan: &QuantumChannel,
    rho: &DensityMatrix,
    p: &ComplexMatrix,
) -> Result<GainCertificate> {
    let r = rho.matrix();
    if p.rows() != r.rows() || p.cols() != r.cols() {
        return Err(Error::Dimension(format!(
            "projection is {}x{}, state is {}x{}",
            p.rows(),
            p.cols(),
            r.rows(),
            r.cols()
        )));
    }
    let idem = (p * p).max_abs_diff(p).max(p.hermiticity_deviation());
    if idem > 1e-9 {
        return Err(Error::Support(format!("not an orthogonal projection ({idem:e})")));
    }
    let left = (p * r).max_abs_diff(r);
    let right = (r * p).max_abs_diff(r);
    if left.max(right) > 1e-9 {
        return Err(Error::Support(format!(
            "state not supported in the projection (‖Pρ − ρ‖ = {left:e}, ‖ρP − ρ‖ = {right:e})"
        )));
    }
    let out = chan.apply(rho)?;
    let lhs = von_neumann(&out)? - von_neumann(rho)?;
    let rhs = -trace_log_on_support(out.matrix(), &chan.apply_operator(p)?)?;
    Ok(GainCertificate::new("prop1", lhs, rhs, INEQUALITY_TOL)
        .with_dim("dim_in", chan.dim_in())
        .with_dim("dim_out", chan.dim_out()))
}

fn check_k_dims(dim_k: usize, omega: &QuantumChannel) -> Result<()> {
    if omega.dim_in() != dim_k {
        return Err(Error::Dimension(format!(
            "channel acts on dimension {}, vectors live in dimension {dim_k}",
            omega.dim_in()
        )));
    }
    Ok(())
}

/// `Σ_n w_n S(Ω(|h_n⟩⟨h_n|))`.
pub fn weighted_output_entropy(
    weights: &[f64],
    hs: &[Vec<C64>],
    omega: &QuantumChannel,
) -> Result<f64> {
    let mut acc = 0.0;
    for (&w, h) in weights.iter().zip(hs) {
        if w > 0.0 {
            acc += w * matrix_entropy(&omega.apply_pure(h))?;
        }
    }
    Ok(acc)
}

/// `S(ρ) + Σ_n π_n S(Ω(|h_n⟩⟨h_n|))` with `π_n = coeff_nn`.
pub fn theorem1_rhs(spec: &CorrelatedStateSpec, omega: &QuantumChannel) -> Result<f64> {
    check_k_dims(spec.dim_k(), omega)?;
    let rho = correlated_state(spec)?;
    Ok(von_neumann(&rho)? + weighted_output_entropy(&spec.weights(), spec.vectors(), omega)?)
}

/// `S((Id ⊗ Ω)(ρ)) ≥ S(ρ) + Σ_n π_n S(Ω(|h_n⟩⟨h_n|))` on a correlated state.
pub fn check_theorem1(spec: &CorrelatedStateSpec, omega: &QuantumChannel) -> Result<GainCertificate> {
    check_k_dims(spec.dim_k(), omega)?;
    let rho = correlated_state(spec)?;
    let out = tensor(&identity_channel(spec.dim_h()), omega).apply(&rho)?;
    let lhs = von_neumann(&out)?;
    let rhs = von_neumann(&rho)? + weighted_output_entropy(&spec.weights(), spec.vectors(), omega)?;
    Ok(GainCertificate::new("thm1", lhs, rhs, INEQUALITY_TOL)
        .with_dim("dim_h", spec.dim_h())
        .with_dim("dim_k", spec.dim_k())
        .with_dim("kraus", omega.kraus().len()))
}

/// `S((Φ ⊗ Ω)(|e⟩⟨e|)) ≥ S((Φ ⊗ Id)(|e⟩⟨e|)) + Σ_n |ν_n|² S(Ω(|h_n⟩⟨h_n|))` for the
/// dephasing channel `Φ` with kernel `corr` and `e = Σ ν_n e_n ⊗ h_n`.
///
/// The `paths_agree` side quantity compares the direct construction of
/// `(Φ ⊗ Id)(|e⟩⟨e|)` with channel application; it must be `≤ 1e-10`.
pub fn check_corollary2(
    corr: &CorrelationMatrix,
    nu: &[C64],
    hs: &[Vec<C64>],
    omega: &QuantumChannel,
) -> Result<GainCertificate> {
    let dim_k = hs.first().map_or(0, Vec::len);
    check_k_dims(dim_k, omega)?;
    let phi = dephasing_channel(corr)?;
    let pure = pure_correlated_state(nu, hs)?;
    let lhs = von_neumann(&tensor(&phi, omega).apply(&pure)?)?;

    let direct = dephase_then_correlate(corr, nu, hs)?;
    let via_channel = tensor(&phi, &identity_channel(dim_k)).apply(&pure)?;
    let path_gap = direct.matrix().max_abs_diff(via_channel.matrix());

    let weights: Vec<f64> = nu.iter().map(|z| z.norm_sqr()).collect();
    let rhs = von_neumann(&direct)? + weighted_output_entropy(&weights, hs, omega)?;
    Ok(GainCertificate::new("cor2", lhs, rhs, INEQUALITY_TOL)
        .with_dim("dim_h", nu.len())
        .with_dim("dim_k", dim_k)
        .with_dim("kraus", omega.kraus().len())
        .with_aux("path_gap", path_gap, path_gap <= 1e-10))
}
