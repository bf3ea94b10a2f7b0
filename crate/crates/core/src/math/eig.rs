use super::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Input must be Hermitian to this accuracy.
const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `A = U diag(w) U†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `U f(diag(w)) U†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let u = &self.eigenvectors;
        let n = u.rows();
        let fw: Vec<f64> = self.eigenvalues.iter().map(|&w| f(w)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u[(i, k)] * u[(j, k)].conj() * fw[k]).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|w| w)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary and
/// then applies a real plane rotation, so the accumulated transform stays unitary.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    let dev = a.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::Hermiticity(dev));
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += m[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= 1e-15 * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let z = m[(p, q)];
                let r = z.norm();
                if r <= 1e-300 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // Negligible pivot relative to the diagonal gap: zero it outright.
                if sweeps > 3 && r * 1e18 < app.abs().min(aqq.abs()) {
                    m[(p, q)] = C64::new(0.0, 0.0);
                    m[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                let phase = z / r; // e^{iφ}
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // R = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane.
                let rpp = C64::new(cs, 0.0);
                let rpq = C64::new(sn, 0.0);
                let rqp = -phase.conj() * sn;
                let rqq = phase.conj() * cs;

                // A <- A R
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * rpp + akq * rqp;
                    m[(k, q)] = akp * rpq + akq * rqq;
                }
                // A <- R† A
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = rpp.conj() * apk + rqp.conj() * aqk;
                    m[(q, k)] = rpq.conj() * apk + rqq.conj() * aqk;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
                // V <- V R
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * rpp + vkq * rqp;
                    v[(k, q)] = vkp * rpq + vkq * rqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `true` iff the smallest eigenvalue of the Hermitian matrix is `≥ −tol`.
pub fn psd_check(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(hermitian_eig(a)?.min_eigenvalue() >= -tol)
}
