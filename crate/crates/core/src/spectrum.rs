//! Eigenvalues of the (real symmetric) interaction kernel by cyclic Jacobi
//! rotations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::InteractionKernel;

/// Sweep cap for [`jacobi_eigen`] as used by [`spectrum`].
pub const MAX_SWEEPS: usize = 100;

/// Relative tolerance: convergence when `off(A) < DEFAULT_REL_TOL · ‖K‖_F`.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    #[serde(rename = "L")]
    pub size: usize,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm at convergence.
    #[serde(skip)]
    pub max_offdiag_residual: f64,
    #[serde(skip)]
    pub sweeps: usize,
    /// Column `k` is the eigenvector of `eigenvalues[k]`; row-major `n x n`.
    #[serde(skip)]
    pub eigenvectors: Vec<f64>,
}

impl SpectrumReport {
    pub fn trace_residual(&self) -> f64 {
        self.eigenvalues.iter().sum::<f64>().abs()
    }

    /// `max |VᵀV − I|` over all entries.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n).map(|r| v[r * n + a] * v[r * n + b]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Output of a Jacobi diagonalization.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Unsorted, in diagonal order.
    pub values: Vec<f64>,
    /// Row-major; column `k` pairs with `values[k]`.
    pub vectors: Vec<f64>,
    pub residual: f64,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic Jacobi on a symmetric row-major `n x n` matrix.
///
/// Stops once the off-diagonal Frobenius norm drops below `tol`; fails with
/// [`Error::Convergence`] after `max_sweeps` sweeps.
pub fn jacobi_eigen(mut a: Vec<f64>, n: usize, tol: f64, max_sweeps: usize) -> Result<Eigen> {
    if a.len() != n * n {
        return Err(Error::Dimension(format!(
            "{} entries for a {n}x{n} matrix",
            a.len()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let mut residual = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while residual >= tol {
        if sweeps == max_sweeps {
            return Err(Error::Convergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // t = tan(θ), smaller root of t² + 2θt − 1 = 0
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        residual = off_diagonal_norm(&a, n);
    }

    Ok(Eigen {
        values: (0..n).map(|i| a[i * n + i]).collect(),
        vectors: v,
        residual,
        sweeps,
    })
}

/// Spectrum of `K` with absolute off-diagonal tolerance `tol`.
pub fn spectrum(kernel: &InteractionKernel, tol: f64) -> Result<SpectrumReport> {
    let n = kernel.cells();
    let eig = jacobi_eigen(kernel.matrix().to_f64(), n, tol, MAX_SWEEPS)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.values[y].total_cmp(&eig.values[x]));
    let eigenvalues = order.iter().map(|&k| eig.values[k]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[r * n + new] = eig.vectors[r * n + old];
        }
    }
    Ok(SpectrumReport {
        size: kernel.size(),
        eigenvalues,
        max_offdiag_residual: eig.residual,
        sweeps: eig.sweeps,
        eigenvectors,
    })
}

/// Default tolerance for `K`: `1e-10 · ‖K‖_F`, where `‖K‖_F² = nnz(K)`.
pub fn default_tolerance(kernel: &InteractionKernel) -> f64 {
    let fro = (kernel.matrix().count_ones() as f64).sqrt();
    // the zero kernel (L = 1) still needs a positive threshold
    (DEFAULT_REL_TOL * fro).max(f64::MIN_POSITIVE)
}

pub fn spectrum_default(kernel: &InteractionKernel) -> Result<SpectrumReport> {
    spectrum(kernel, default_tolerance(kernel))
}
