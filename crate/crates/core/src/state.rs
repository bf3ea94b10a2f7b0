//! Density matrices and the correlated bipartite family
//! `ρ = Σ_{n,m} c_nm |e_n⟩⟨e_m| ⊗ |h_n⟩⟨h_m|`.

use crate::channel::CorrelationMatrix;
use crate::math::{hermitian_eig, kron, norm, outer, ComplexMatrix, C64};
use crate::rng::{gaussian_matrix, random_unit_vector, seeded};
use crate::{Error, Result, ZERO_EIGENVALUE_TOL};

const STATE_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m` as a state. Eigenvalues in `[−1e-10, 0)` are clamped to zero and the
    /// trace renormalized.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::State(format!(
                "not a non-empty square matrix ({}x{})",
                m.rows(),
                m.cols()
            )));
        }
        let herm = m.hermiticity_deviation();
        if herm > STATE_TOL {
            return Err(Error::State(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::State(format!("trace {} ≠ 1", tr.re)));
        }
        let m = m.hermitian_part();
        let eig = hermitian_eig(&m)?;
        let min = eig.min_eigenvalue();
        if min < -ZERO_EIGENVALUE_TOL {
            return Err(Error::State(format!("negative eigenvalue {min:e}")));
        }
        if min < 0.0 {
            let clamped = eig.map_spectrum(|w| w.max(0.0));
            let t = clamped.trace().re;
            return Ok(Self {
                matrix: clamped.scale_real(1.0 / t),
            });
        }
        Ok(Self { matrix: m })
    }

    /// Wraps the image of a state under a completely positive trace-preserving map.
    /// Positivity is inherited from the map, so only the trace is re-checked.
    pub(crate) fn from_cptp_image(m: ComplexMatrix) -> Result<Self> {
        let tr = m.trace();
        if (tr.re - 1.0).abs() > 1e-9 || tr.im.abs() > 1e-9 {
            return Err(Error::TracePreservation((tr - 1.0).norm()));
        }
        Ok(Self {
            matrix: m.hermitian_part(),
        })
    }

    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = norm(psi);
        if (n - 1.0).abs() > STATE_TOL {
            return Err(Error::Normalization(format!("state vector has norm {n}")));
        }
        Ok(Self {
            matrix: outer(psi, psi),
        })
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// The data `(c, {h_n})` of a correlated state on `C^dim_h ⊗ C^dim_k`.
///
/// `coeff` is normalized to unit trace; `π_n = coeff_nn` are the weights of the reduced
/// state `Tr_H ρ = Σ_n π_n |h_n⟩⟨h_n|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedStateSpec {
    coeff: ComplexMatrix,
    vectors: Vec<Vec<C64>>,
}

impl CorrelatedStateSpec {
    pub fn new(coeff: ComplexMatrix, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if !coeff.is_square() || coeff.rows() != vectors.len() || vectors.is_empty() {
            return Err(Error::Dimension(format!(
                "coefficient matrix {}x{} for {} vectors",
                coeff.rows(),
                coeff.cols(),
                vectors.len()
            )));
        }
        check_unit_vectors(&vectors)?;
        let herm = coeff.hermiticity_deviation();
        if herm > STATE_TOL {
            return Err(Error::State(format!("coefficients not Hermitian ({herm:e})")));
        }
        let tr = coeff.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::State(format!("coefficient trace {} ≠ 1", tr.re)));
        }
        let min = hermitian_eig(&coeff)?.min_eigenvalue();
        if min < -STATE_TOL {
            return Err(Error::State(format!(
                "coefficients not positive semidefinite (eigenvalue {min:e})"
            )));
        }
        Ok(Self {
            coeff: coeff.hermitian_part(),
            vectors,
        })
    }

    pub fn coeff(&self) -> &ComplexMatrix {
        &self.coeff
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn dim_h(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim_k(&self) -> usize {
        self.vectors[0].len()
    }

    /// `π_n = coeff_nn`.
    pub fn weights(&self) -> Vec<f64> {
        self.coeff.diagonal().iter().map(|z| z.re).collect()
    }
}

fn check_unit_vectors(vectors: &[Vec<C64>]) -> Result<()> {
    let dim_k = vectors.first().map_or(0, Vec::len);
    if dim_k == 0 {
        return Err(Error::Dimension("empty vectors".into()));
    }
    for (i, h) in vectors.iter().enumerate() {
        if h.len() != dim_k {
            return Err(Error::Dimension(format!(
                "vector {i} has length {}, expected {dim_k}",
                h.len()
            )));
        }
        let n = norm(h);
        if (n - 1.0).abs() > STATE_TOL {
            return Err(Error::Normalization(format!("vector {i} has norm {n}")));
        }
    }
    Ok(())
}

/// Raw matrix with block `(n, m)` equal to `coeff_nm |h_n⟩⟨h_m|`.
fn correlated_matrix(coeff: &ComplexMatrix, hs: &[Vec<C64>]) -> ComplexMatrix {
    let dk = hs[0].len();
    ComplexMatrix::from_fn(hs.len() * dk, hs.len() * dk, |i, j| {
        let (n, a) = (i / dk, i % dk);
        let (m, b) = (j / dk, j % dk);
        coeff[(n, m)] * hs[n][a] * hs[m][b].conj()
    })
}

/// Same as [`DensityMatrix::new`].
pub fn density_from_matrix(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(m)
}

pub fn correlated_state(spec: &CorrelatedStateSpec) -> Result<DensityMatrix> {
    DensityMatrix::new(correlated_matrix(&spec.coeff, &spec.vectors))
}

fn check_amplitudes(nu: &[C64]) -> Result<()> {
    let n = norm(nu);
    if (n - 1.0).abs() > STATE_TOL {
        return Err(Error::Normalization(format!("amplitudes have norm {n}")));
    }
    Ok(())
}

/// `|e⟩⟨e|` for `e = Σ_n ν_n e_n ⊗ h_n`.
pub fn pure_correlated_state(nu: &[C64], hs: &[Vec<C64>]) -> Result<DensityMatrix> {
    check_amplitudes(nu)?;
    if nu.len() != hs.len() {
        return Err(Error::Dimension(format!(
            "{} amplitudes for {} vectors",
            nu.len(),
            hs.len()
        )));
    }
    let coeff = outer(nu, nu);
    correlated_state(&CorrelatedStateSpec::new(coeff, hs.to_vec())?)
}

/// `(Φ_Λ ⊗ Id)(|e⟩⟨e|)`, built directly as the correlated state with `coeff = Λ ∘ νν†`.
pub fn dephase_then_correlate(
    corr: &CorrelationMatrix,
    nu: &[C64],
    hs: &[Vec<C64>],
) -> Result<DensityMatrix> {
    check_amplitudes(nu)?;
    if corr.dim() != nu.len() || nu.len() != hs.len() {
        return Err(Error::Dimension(format!(
            "kernel dim {}, {} amplitudes, {} vectors",
            corr.dim(),
            nu.len(),
            hs.len()
        )));
    }
    let coeff = corr.matrix().hadamard(&outer(nu, nu))?;
    correlated_state(&CorrelatedStateSpec::new(coeff, hs.to_vec())?)
}

/// Schmidt-like split `e = Σ_n ν_n e_n ⊗ h_n` along the standard basis of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateDecomposition {
    pub amplitudes: Vec<C64>,
    pub vectors: Vec<Vec<C64>>,
}

pub fn decompose_pure(e: &[C64], dim_h: usize, dim_k: usize) -> Result<PureStateDecomposition> {
    if e.len() != dim_h * dim_k || dim_k == 0 {
        return Err(Error::Dimension(format!(
            "vector of length {} is not in C^{dim_h} ⊗ C^{dim_k}",
            e.len()
        )));
    }
    check_amplitudes(e)?;
    let mut amplitudes = Vec::with_capacity(dim_h);
    let mut vectors = Vec::with_capacity(dim_h);
    for block in e.chunks(dim_k) {
        let nb = norm(block);
        if nb > 1e-12 {
            amplitudes.push(C64::new(nb, 0.0));
            vectors.push(block.iter().map(|z| z / nb).collect());
        } else {
            // Zero amplitude: any unit vector will do.
            let mut h = vec![C64::new(0.0, 0.0); dim_k];
            h[0] = C64::new(1.0, 0.0);
            amplitudes.push(C64::new(0.0, 0.0));
            vectors.push(h);
        }
    }
    Ok(PureStateDecomposition {
        amplitudes,
        vectors,
    })
}

/// `P = Σ_n |e_n⟩⟨e_n| ⊗ |h_n⟩⟨h_n|`.
pub fn support_projection(hs: &[Vec<C64>], dim_h: usize) -> Result<ComplexMatrix> {
    if hs.len() != dim_h {
        return Err(Error::Dimension(format!(
            "{} vectors for dim_h = {dim_h}",
            hs.len()
        )));
    }
    check_unit_vectors(hs)?;
    let dk = hs[0].len();
    let mut p = ComplexMatrix::zeros(dim_h * dk, dim_h * dk);
    for (n, h) in hs.iter().enumerate() {
        let block = outer(h, h);
        for a in 0..dk {
            for b in 0..dk {
                p[(n * dk + a, n * dk + b)] = block[(a, b)];
            }
        }
    }
    Ok(p)
}

/// Random member of the correlated family: normalized Gram coefficients and Gaussian
/// unit vectors. Deterministic in `seed`.
pub fn random_correlated_spec(dim_h: usize, dim_k: usize, seed: u64) -> CorrelatedStateSpec {
    let mut rng = seeded(seed);
    let g = gaussian_matrix(&mut rng, dim_h, dim_h);
    let gram = &g * &g.adjoint();
    let coeff = gram.hermitian_part().scale_real(1.0 / gram.trace().re);
    let vectors = (0..dim_h)
        .map(|_| random_unit_vector(&mut rng, dim_k))
        .collect();
    CorrelatedStateSpec { coeff, vectors }
}

/// Random full-rank state `GG†/Tr(GG†)`.
pub fn random_density(d: usize, seed: u64) -> DensityMatrix {
    random_density_with_rank(d, d, seed)
}

/// Random state of rank at most `rank`.
pub fn random_density_with_rank(d: usize, rank: usize, seed: u64) -> DensityMatrix {
    let mut rng = seeded(seed);
    let g = gaussian_matrix(&mut rng, d, rank.max(1));
    let gram = &g * &g.adjoint();
    DensityMatrix {
        matrix: gram.hermitian_part().scale_real(1.0 / gram.trace().re),
    }
}

/// Product state `a ⊗ b`.
pub fn product_state(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        matrix: kron(&a.matrix, &b.matrix),
    }
}
