//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `M = Q·diag(λ)·Qᵀ` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<T> {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors, one per column, matching `eigenvalues`.
    pub eigenvectors: Matrix<T>,
}

impl<T: Real> SpectralData<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Q·diag(f(λ))·Qᵀ`.
    pub fn apply_fn(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.dim();
        let q = &self.eigenvectors;
        let fl: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v: T = (0..n).map(|k| q[(i, k)] * fl[k] * q[(j, k)]).sum();
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        self.apply_fn(|l| l)
    }

    pub fn inverse(&self) -> Matrix<T> {
        self.apply_fn(|l| T::one() / l)
    }

    /// `M^p` for a positive definite matrix.
    pub fn power(&self, p: T) -> Matrix<T> {
        self.apply_fn(|l| l.powf(p))
    }

    pub fn smallest(&self) -> T {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn largest(&self) -> T {
        self.eigenvalues[0]
    }
}

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
///
/// The symmetry check is relative: `max|m_ij − m_ji| ≤ sym_tol·max(1, ‖M‖_max)`.
pub fn symmetric_eigen<T: Real>(m: &Matrix<T>, sym_tol: T) -> Result<SpectralData<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if !m.is_square() {
        return Err(crate::error::mismatch("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let scale = m.max_abs().max(T::one());
    let asym = m.asymmetry();
    if asym > sym_tol * scale {
        return Err(Error::NonSymmetric {
            asymmetry: asym.to_f64_lossy(),
        });
    }

    let n = m.rows();
    // symmetrize so rounding asymmetry does not leak into the rotations
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)]) * T::lit(0.5);
        }
    }
    let mut v = Matrix::identity(n);
    let frob = a.frobenius();
    let half = T::lit(0.5);

    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= T::epsilon() * frob * half || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = v.select_columns(&order);
    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}
