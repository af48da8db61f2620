//! One-sided Jacobi singular values: rank, null space and least squares.
//!
//! Rotating the columns of `M` directly keeps small singular values accurate
//! to `eps·‖M‖`, so a relative rank cutoff of 1e−10 is meaningful.

use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, Matrix};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Singular values of `M` (k×m) paired with the right singular vectors.
#[derive(Debug, Clone)]
pub struct SingularSystem<T> {
    /// One value per column of `M`, unordered.
    pub values: Vec<T>,
    /// m×m orthogonal matrix; column j pairs with `values[j]`.
    pub right: Matrix<T>,
    /// `M·V`, whose column j has norm `values[j]`.
    pub left_scaled: Matrix<T>,
}

impl<T: Real> SingularSystem<T> {
    pub fn largest(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &s| acc.max(s))
    }

    fn cutoff(&self, tol: T) -> T {
        tol * self.largest()
    }

    pub fn rank(&self, tol: T) -> usize {
        let cut = self.cutoff(tol);
        if self.largest() == T::zero() {
            return 0;
        }
        self.values.iter().filter(|&&s| s > cut).count()
    }

    /// Columns of `V` whose singular value is at or below the cutoff.
    pub fn null_vectors(&self, tol: T) -> Vec<Vec<T>> {
        let cut = self.cutoff(tol);
        let zero_matrix = self.largest() == T::zero();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &s)| zero_matrix || s <= cut)
            .map(|(j, _)| self.right.column(j))
            .collect()
    }
}

pub fn singular_system<T: Real>(m: &Matrix<T>) -> Result<SingularSystem<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (k, n) = m.shape();
    // column-major working copy
    let mut cols = m.to_columns();
    let mut v = Matrix::identity(n);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for r in 0..k {
                    let ai = cols[i][r];
                    let aj = cols[j][r];
                    cols[i][r] = c * ai - s * aj;
                    cols[j][r] = s * ai + c * aj;
                }
                for r in 0..n {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)];
                    v[(r, i)] = c * vi - s * vj;
                    v[(r, j)] = s * vi + c * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let values = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    let left_scaled = Matrix::from_columns(&cols)?;
    Ok(SingularSystem {
        values,
        right: v,
        left_scaled,
    })
}

/// Numerical rank: singular values above `tol·σ_max`; 0 for the zero matrix.
pub fn rank<T: Real>(m: &Matrix<T>, tol: T) -> Result<usize> {
    Ok(singular_system(m)?.rank(tol))
}

/// Orthonormal basis of the kernel of `M`, one vector per entry.
///
/// Empty when `M` has full column rank.
pub fn nullspace_basis<T: Real>(m: &Matrix<T>, tol: T) -> Result<Vec<Vec<T>>> {
    Ok(singular_system(m)?.null_vectors(tol))
}

/// Minimum-norm least-squares solution of `M·x ≈ b` via the pseudo-inverse.
pub fn least_squares<T: Real>(m: &Matrix<T>, b: &[T], tol: T) -> Result<Vec<T>> {
    if b.len() != m.rows() {
        return Err(crate::error::mismatch(m.rows(), b.len()));
    }
    let sys = singular_system(m)?;
    let cut = sys.cutoff(tol);
    let n = m.cols();
    let mut x = vec![T::zero(); n];
    for (j, &s) in sys.values.iter().enumerate() {
        if s <= cut || s == T::zero() {
            continue;
        }
        // u_j = (M v_j) / s_j, coefficient = <u_j, b> / s_j
        let coef = dot(&sys.left_scaled.column(j), b) / (s * s);
        for (r, xr) in x.iter_mut().enumerate() {
            *xr += coef * sys.right[(r, j)];
        }
    }
    Ok(x)
}

/// Greedy selection of linearly independent rows, scanning in index order.
///
/// A row is accepted when its component orthogonal to the rows already
/// accepted exceeds `tol` times the largest row norm.
pub fn independent_rows<T: Real>(m: &Matrix<T>, tol: T) -> Vec<usize> {
    let scale = (0..m.rows())
        .map(|i| dot(m.row(i), m.row(i)).sqrt())
        .fold(T::zero(), T::max);
    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut picked = Vec::new();
    if scale == T::zero() {
        return picked;
    }
    for i in 0..m.rows() {
        let mut r = m.row(i).to_vec();
        // two passes of Gram-Schmidt for stability
        for _ in 0..2 {
            for b in &basis {
                let p = dot(&r, b);
                for (x, &y) in r.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let nr = dot(&r, &r).sqrt();
        if nr > tol * scale {
            r.iter_mut().for_each(|x| *x /= nr);
            basis.push(r);
            picked.push(i);
        }
    }
    picked
}
