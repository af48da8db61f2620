//! Diagram vectors: the quadratic lifting that turns tightness of a scaled
//! frame into a linear condition on the squared weights.
//!
//! Coordinate pairs `(i, j)`, `i < j`, are ordered lexicographically:
//! `(0,1), (0,2), …, (0,n−1), (1,2), …`. The full diagram vector of
//! `x ∈ R^n` has `n(n−1)` entries:
//!
//! * `(x_i² − x_j²)/√(n−1)` for every pair, then
//! * `√(2n)·x_i·x_j/√(n−1)` for every pair.
//!
//! The reduced form keeps only the difference entries of pairs `(0, j)` and
//! all product entries, `(n−1)(n+2)/2` in total. Every dropped difference
//! row is the difference of two kept ones, so the kernel is unchanged.

use crate::error::{mismatch, Error, Result};
use crate::frame::Frame;
use crate::numerics::{dot, Matrix};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    Full,
    Reduced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramVector<T> {
    pub n: usize,
    pub kind: DiagramKind,
    pub entries: Vec<T>,
}

/// Coordinate pairs `i < j` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

pub fn full_len(n: usize) -> usize {
    n * (n - 1)
}

pub fn reduced_len(n: usize) -> usize {
    (n - 1) * (n + 2) / 2
}

/// Row of the full diagram matrix holding the difference entry of pair `(i, j)`.
pub fn full_difference_row(n: usize, i: usize, j: usize) -> usize {
    pairs(n).iter().position(|&p| p == (i, j)).expect("valid pair i < j < n")
}

/// Row holding the product entry of pair `(i, j)`, in the full or reduced layout.
pub fn product_row(n: usize, kind: DiagramKind, i: usize, j: usize) -> usize {
    let offset = match kind {
        DiagramKind::Full => n * (n - 1) / 2,
        DiagramKind::Reduced => n - 1,
    };
    offset + full_difference_row(n, i, j)
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall { n })
    } else {
        Ok(())
    }
}

pub fn diagram_vector<T: Real>(x: &[T], kind: DiagramKind) -> Result<DiagramVector<T>> {
    let n = x.len();
    check_dim(n)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = T::one() / T::lit((n - 1) as f64).sqrt();
    let prod = T::lit(2.0 * n as f64).sqrt() * norm;
    let ps = pairs(n);
    let mut entries = Vec::with_capacity(full_len(n));
    match kind {
        DiagramKind::Full => {
            entries.extend(ps.iter().map(|&(i, j)| (x[i] * x[i] - x[j] * x[j]) * norm));
        }
        DiagramKind::Reduced => {
            entries.extend((1..n).map(|j| (x[0] * x[0] - x[j] * x[j]) * norm));
        }
    }
    entries.extend(ps.iter().map(|&(i, j)| prod * x[i] * x[j]));
    Ok(DiagramVector { n, kind, entries })
}

/// `|(n−1)⟨x̃, ỹ⟩ − (n⟨x,y⟩² − ‖x‖²‖y‖²)|` using full diagram vectors.
pub fn diagram_inner_identity_check<T: Real>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() {
        return Err(mismatch(x.len(), y.len()));
    }
    let n = x.len();
    let dx = diagram_vector(x, DiagramKind::Full)?;
    let dy = diagram_vector(y, DiagramKind::Full)?;
    let lhs = T::lit((n - 1) as f64) * dot(&dx.entries, &dy.entries);
    let xy = dot(x, y);
    let rhs = T::lit(n as f64) * xy * xy - dot(x, x) * dot(y, y);
    Ok((lhs - rhs).abs())
}

/// The reduced diagram matrix: column `i` is the reduced diagram vector of `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDiagramMatrix<T> {
    n: usize,
    data: Matrix<T>,
}

impl<T: Real> ReducedDiagramMatrix<T> {
    /// Source dimension of the frame.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.data
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.data
    }

    /// The `n(n−1)/2` product rows, in pair order.
    pub fn product_rows(&self) -> Vec<Vec<T>> {
        (self.n - 1..self.data.rows()).map(|r| self.data.row(r).to_vec()).collect()
    }
}

fn diagram_matrix<T: Real>(frame: &Frame<T>, kind: DiagramKind) -> Result<Matrix<T>> {
    check_dim(frame.n())?;
    let cols = (0..frame.m())
        .map(|i| diagram_vector(&frame.vector(i), kind).map(|d| d.entries))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(&cols)
}

pub fn reduced_diagram_matrix<T: Real>(frame: &Frame<T>) -> Result<ReducedDiagramMatrix<T>> {
    Ok(ReducedDiagramMatrix {
        n: frame.n(),
        data: diagram_matrix(frame, DiagramKind::Reduced)?,
    })
}

/// The full `n(n−1)×m` diagram matrix.
pub fn full_diagram_matrix<T: Real>(frame: &Frame<T>) -> Result<Matrix<T>> {
    diagram_matrix(frame, DiagramKind::Full)
}

/// `Σ_{i,j} ⟨x̃_i, x̃_j⟩` over full diagram vectors of a unit-norm frame.
///
/// Nonnegative, and zero exactly when the frame is tight.
pub fn diagram_gram_sum<T: Real>(frame: &Frame<T>, unit_tol: T) -> Result<T> {
    check_dim(frame.n())?;
    for i in 0..frame.m() {
        let v = frame.vector(i);
        let norm = dot(&v, &v).sqrt();
        if (norm - T::one()).abs() > unit_tol {
            return Err(Error::NotUnitNorm {
                index: i,
                norm: norm.to_f64_lossy(),
            });
        }
    }
    let full = full_diagram_matrix(frame)?;
    // Σ_ij ⟨x̃_i, x̃_j⟩ = ‖Σ_i x̃_i‖²
    let total = full.mul_vec(&vec![T::one(); frame.m()]);
    Ok(dot(&total, &total))
}
