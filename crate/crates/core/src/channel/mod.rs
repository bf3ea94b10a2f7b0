//! Quantum channels in Kraus form.

mod classify;
mod dephasing;

pub use classify::{classify_phase_damping, Classification, Violation};
pub use dephasing::{
    circulant_kernel, dephasing_channel, diagonal_unitary_mixture, phase_damping_channel,
    random_circle_measure, random_correlation, shift_representation, toeplitz_dephasing,
    toeplitz_kernel, CircleMeasure, CorrelationMatrix, ProbabilityDistribution,
};

use crate::math::{kron, ComplexMatrix, C64};
use crate::rng::{haar_isometry, haar_unitary, random_simplex_point, seeded};
use crate::state::DensityMatrix;
use crate::{Error, Result, CHANNEL_EQ_TOL};

const TP_TOL: f64 = 1e-9;

/// Completely positive trace-preserving map `ρ ↦ Σ_j V_j ρ V_j†`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Validates shapes and `‖Σ V_j†V_j − I‖_max ≤ 1e-9`.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Dimension("a channel needs at least one Kraus operator".into()))?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::Dimension("empty Kraus operator".into()));
        }
        if let Some((j, k)) = kraus
            .iter()
            .enumerate()
            .find(|(_, k)| (k.rows(), k.cols()) != (dim_out, dim_in))
        {
            return Err(Error::Dimension(format!(
                "Kraus operator {j} is {}x{}, expected {dim_out}x{dim_in}",
                k.rows(),
                k.cols()
            )));
        }
        let chan = Self {
            dim_in,
            dim_out,
            kraus,
        };
        let dev = chan.trace_preservation_deviation();
        if dev > TP_TOL {
            return Err(Error::TracePreservation(dev));
        }
        Ok(chan)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// `‖Σ V_j†V_j − I‖_max`.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for v in &self.kraus {
            acc = &acc + &(&v.adjoint() * v);
        }
        acc.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// Action on an arbitrary operator (not necessarily a state), e.g. `Ω(I)` or `Ω(P)`.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.rows() != self.dim_in || x.cols() != self.dim_in {
            return Err(Error::Dimension(format!(
                "channel input is {0}x{0}, operator is {1}x{2}",
                self.dim_in,
                x.rows(),
                x.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for v in &self.kraus {
            out = &out + &v.conjugate(x)?;
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::from_cptp_image(self.apply_operator(rho.matrix())?)
    }

    /// Output on the pure input `|ψ⟩⟨ψ|`, computed from the vectors `V_j ψ`.
    pub fn apply_pure(&self, psi: &[C64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for v in &self.kraus {
            let w = v.mat_vec(psi);
            for a in 0..self.dim_out {
                for b in 0..self.dim_out {
                    out[(a, b)] += w[a] * w[b].conj();
                }
            }
        }
        out
    }

    /// `Ω(I) = Σ V_j V_j†`.
    pub fn image_of_identity(&self) -> ComplexMatrix {
        self.apply_operator(&ComplexMatrix::identity(self.dim_in))
            .expect("identity has the input dimension")
    }

    /// Choi matrix `Σ_{ij} |i⟩⟨j| ⊗ Ω(|i⟩⟨j|)`.
    pub fn choi(&self) -> ComplexMatrix {
        let (din, dout) = (self.dim_in, self.dim_out);
        let mut c = ComplexMatrix::zeros(din * dout, din * dout);
        for v in &self.kraus {
            for i in 0..din {
                for j in 0..din {
                    for a in 0..dout {
                        let via = v[(a, i)];
                        if via.re == 0.0 && via.im == 0.0 {
                            continue;
                        }
                        for b in 0..dout {
                            c[(i * dout + a, j * dout + b)] += via * v[(b, j)].conj();
                        }
                    }
                }
            }
        }
        c
    }

    /// Max-norm distance between Choi matrices; `∞` if the shapes differ.
    pub fn choi_distance(&self, other: &Self) -> f64 {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return f64::INFINITY;
        }
        self.choi().max_abs_diff(&other.choi())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.choi_distance(other) <= CHANNEL_EQ_TOL
    }

    /// `self ⊗ other` with Kraus set `{A_i ⊗ B_j}`.
    pub fn tensor(&self, other: &Self) -> Self {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| kron(a, b)))
            .collect();
        Self {
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
            kraus,
        }
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.dim_out != self.dim_in {
            return Err(Error::Dimension(format!(
                "cannot compose: inner output {} vs outer input {}",
                inner.dim_out, self.dim_in
            )));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| inner.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            dim_in: inner.dim_in,
            dim_out: self.dim_out,
            kraus,
        })
    }

    /// `true` when `Ω(I) ≤ I` up to `tol`.
    pub fn is_subunital(&self, tol: f64) -> Result<bool> {
        let e = crate::math::hermitian_eig(&self.image_of_identity())?;
        Ok(e.max_eigenvalue() <= 1.0 + tol)
    }
}

/// Same as [`QuantumChannel::new`].
pub fn make_channel(kraus: Vec<ComplexMatrix>) -> Result<QuantumChannel> {
    QuantumChannel::new(kraus)
}

pub fn tensor(a: &QuantumChannel, b: &QuantumChannel) -> QuantumChannel {
    a.tensor(b)
}

pub fn identity_channel(d: usize) -> QuantumChannel {
    QuantumChannel {
        dim_in: d,
        dim_out: d,
        kraus: vec![ComplexMatrix::identity(d)],
    }
}

/// `ρ ↦ (1 − p) ρ + p Tr(ρ) I/d`.
pub fn depolarizing_channel(d: usize, p: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config {
            field: "p",
            reason: format!("depolarizing probability {p} outside [0, 1]"),
        });
    }
    let mut kraus = Vec::new();
    if p < 1.0 {
        kraus.push(ComplexMatrix::identity(d).scale_real((1.0 - p).sqrt()));
    }
    if p > 0.0 {
        let s = (p / d as f64).sqrt();
        for i in 0..d {
            for j in 0..d {
                let mut e = ComplexMatrix::zeros(d, d);
                e[(i, j)] = C64::new(s, 0.0);
                kraus.push(e);
            }
        }
    }
    QuantumChannel::new(kraus)
}

/// Qubit amplitude damping with decay probability `gamma`; not unital for `gamma > 0`.
pub fn amplitude_damping(gamma: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Config {
            field: "gamma",
            reason: format!("{gamma} outside [0, 1]"),
        });
    }
    let k0 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - gamma).sqrt()]]);
    let k1 = ComplexMatrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]]);
    QuantumChannel::new(vec![k0, k1])
}

/// Channel from a Haar isometry `V: C^d → C^d ⊗ C^num_kraus`, with `V_j = (I ⊗ ⟨j|) V`.
pub fn random_channel(d: usize, num_kraus: usize, seed: u64) -> QuantumChannel {
    let mut rng = seeded(seed);
    let v = haar_isometry(&mut rng, d * num_kraus, d);
    let kraus = (0..num_kraus)
        .map(|j| ComplexMatrix::from_fn(d, d, |a, i| v[(a * num_kraus + j, i)]))
        .collect();
    QuantumChannel {
        dim_in: d,
        dim_out: d,
        kraus,
    }
}

/// Random mixture of `num_unitaries` Haar unitaries; always unital.
pub fn random_unital_channel(d: usize, num_unitaries: usize, seed: u64) -> QuantumChannel {
    let mut rng = seeded(seed);
    let p = random_simplex_point(&mut rng, num_unitaries);
    let kraus = p
        .iter()
        .map(|&w| haar_unitary(&mut rng, d).scale_real(w.sqrt()))
        .collect();
    QuantumChannel {
        dim_in: d,
        dim_out: d,
        kraus,
    }
}
