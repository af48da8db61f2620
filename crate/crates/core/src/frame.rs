//! Frames, frame operators and the basic predicates on them.

use crate::error::{mismatch, Error, Result};
use crate::numerics::{dot, rank, symmetric_eigen, Matrix, SpectralData};
use crate::scalar::{Real, Tolerances};

/// A spanning family of `m` nonzero vectors in `R^n`, stored as its n×m
/// synthesis matrix (column `i` is `x_i`).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    synthesis: Matrix<T>,
}

impl<T: Real> Frame<T> {
    /// Builds a frame from its vectors, using the default rank tolerance.
    pub fn new(vectors: &[Vec<T>]) -> Result<Self> {
        Self::with_rank_tol(vectors, Tolerances::default().rank)
    }

    pub fn with_rank_tol(vectors: &[Vec<T>], rank_tol: T) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Empty);
        }
        let n = vectors[0].len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(mismatch(format!("vectors of length {n}"), v.len()));
        }
        Self::from_synthesis_with_tol(Matrix::from_columns(vectors)?, rank_tol)
    }

    pub fn from_synthesis(synthesis: Matrix<T>) -> Result<Self> {
        Self::from_synthesis_with_tol(synthesis, Tolerances::default().rank)
    }

    pub fn from_synthesis_with_tol(synthesis: Matrix<T>, rank_tol: T) -> Result<Self> {
        if !synthesis.is_finite() {
            return Err(Error::NonFinite);
        }
        for j in 0..synthesis.cols() {
            if synthesis.column(j).iter().all(|&v| v == T::zero()) {
                return Err(Error::ZeroVector { index: j });
            }
        }
        let n = synthesis.rows();
        let r = rank(&synthesis, rank_tol)?;
        if r < n {
            return Err(Error::NotSpanning { n, rank: r });
        }
        Ok(Self { synthesis })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.synthesis.rows()
    }

    /// Number of vectors.
    pub fn m(&self) -> usize {
        self.synthesis.cols()
    }

    pub fn synthesis(&self) -> &Matrix<T> {
        &self.synthesis
    }

    pub fn vector(&self, i: usize) -> Vec<T> {
        self.synthesis.column(i)
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        self.synthesis.to_columns()
    }

    /// `{T x_i}` for a square `T`; fails if the image no longer spans.
    pub fn transform(&self, t: &Matrix<T>) -> Result<Self> {
        if t.shape() != (self.n(), self.n()) {
            return Err(mismatch(
                format!("{0}x{0} transform", self.n()),
                format!("{}x{}", t.rows(), t.cols()),
            ));
        }
        Self::from_synthesis(t * &self.synthesis)
    }

    /// The vectors with the given indices, in order.
    pub fn subframe(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Empty);
        }
        Self::from_synthesis(self.synthesis.select_columns(indices))
    }

    pub fn is_unit_norm(&self, tol: T) -> bool {
        (0..self.m()).all(|i| {
            let v = self.vector(i);
            (dot(&v, &v).sqrt() - T::one()).abs() <= tol
        })
    }

    /// Frame operator `S = X·Xᵀ` with its spectrum and optimal frame bounds.
    pub fn operator(&self) -> Result<FrameOperatorData<T>> {
        frame_operator(self)
    }
}

/// `S = X·Xᵀ` together with its eigen-decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOperatorData<T> {
    pub operator: Matrix<T>,
    pub spectral: SpectralData<T>,
    /// Optimal lower frame bound: the smallest eigenvalue of `S`.
    pub lower_bound: T,
    /// Optimal upper frame bound: the largest eigenvalue of `S`.
    pub upper_bound: T,
}

impl<T: Real> FrameOperatorData<T> {
    pub fn inverse(&self) -> Matrix<T> {
        self.spectral.inverse()
    }

    /// `S^{−1/2}`.
    pub fn inverse_sqrt(&self) -> Matrix<T> {
        self.spectral.power(T::lit(-0.5))
    }

    pub fn squared(&self) -> Matrix<T> {
        self.spectral.apply_fn(|l| l * l)
    }
}

pub fn frame_operator<T: Real>(frame: &Frame<T>) -> Result<FrameOperatorData<T>> {
    let operator = frame.synthesis().gram_rows();
    let spectral = symmetric_eigen(&operator, Tolerances::default().symmetry)?;
    let lower_bound = spectral.smallest();
    let upper_bound = spectral.largest();
    if !(lower_bound > T::zero()) {
        return Err(Error::Numeric(format!(
            "frame operator is not positive definite (smallest eigenvalue {lower_bound})"
        )));
    }
    Ok(FrameOperatorData {
        operator,
        spectral,
        lower_bound,
        upper_bound,
    })
}

/// `Σ_i Σ_j ⟨x_i, x_j⟩²`.
pub fn frame_potential<T: Real>(frame: &Frame<T>) -> T {
    // equals ‖XᵀX‖_F² = ‖XXᵀ‖_F²; the n×n side is cheaper
    let s = frame.synthesis().gram_rows();
    s.as_slice().iter().map(|&v| v * v).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tightness<T> {
    /// Tight with the given frame bound.
    Tight(T),
    NotTight,
}

impl<T: Real> Tightness<T> {
    pub fn is_tight(&self) -> bool {
        matches!(self, Tightness::Tight(_))
    }

    pub fn bound(&self) -> Option<T> {
        match *self {
            Tightness::Tight(a) => Some(a),
            Tightness::NotTight => None,
        }
    }

    /// Tight with bound 1 within `tol` (relative).
    pub fn is_parseval(&self, tol: T) -> bool {
        matches!(*self, Tightness::Tight(a) if (a - T::one()).abs() <= tol)
    }
}

/// Tightness through the rows of a synthesis matrix: pairwise orthogonal
/// and of equal norm, both checked with one relative tolerance.
pub fn row_tightness<T: Real>(synthesis: &Matrix<T>, tol: T) -> Tightness<T> {
    let n = synthesis.rows();
    let sq: Vec<T> = (0..n).map(|i| dot(synthesis.row(i), synthesis.row(i))).collect();
    let top = sq.iter().fold(T::zero(), |acc, &v| acc.max(v));
    if top == T::zero() {
        return Tightness::NotTight;
    }
    for i in 0..n {
        if (sq[i] - sq[0]).abs() > tol * sq[i].max(sq[0]) {
            return Tightness::NotTight;
        }
        for j in i + 1..n {
            let ip = dot(synthesis.row(i), synthesis.row(j));
            if ip.abs() > tol * (sq[i] * sq[j]).sqrt() {
                return Tightness::NotTight;
            }
        }
    }
    let mean = sq.iter().copied().sum::<T>() / T::lit(n as f64);
    Tightness::Tight(mean)
}

pub fn is_tight<T: Real>(frame: &Frame<T>, tol: T) -> Tightness<T> {
    row_tightness(frame.synthesis(), tol)
}

/// A frame with nonnegative weights applied: column `i` is `a_i·x_i`.
///
/// Zero weights are allowed, so the scaled family may contain zero vectors;
/// [`ScaledFrame::to_frame`] drops them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledFrame<T> {
    base: Frame<T>,
    weights: Vec<T>,
    synthesis: Matrix<T>,
}

impl<T: Real> ScaledFrame<T> {
    pub fn base(&self) -> &Frame<T> {
        &self.base
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn synthesis(&self) -> &Matrix<T> {
        &self.synthesis
    }

    pub fn tightness(&self, tol: T) -> Tightness<T> {
        row_tightness(&self.synthesis, tol)
    }

    /// Indices with a nonzero weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i] != T::zero())
            .collect()
    }

    /// The scaled vectors with zero weights dropped.
    pub fn to_frame(&self) -> Result<Frame<T>> {
        Frame::from_synthesis(self.synthesis.select_columns(&self.support()))
    }

    /// Frame operator of the scaled family, `Σ a_i² x_i x_iᵀ`.
    pub fn operator(&self) -> Matrix<T> {
        self.synthesis.gram_rows()
    }
}

/// Scales `x_i` by `a_i ≥ 0`. Fails if the scaled vectors stop spanning.
pub fn apply_scaling<T: Real>(frame: &Frame<T>, weights: &[T]) -> Result<ScaledFrame<T>> {
    if weights.len() != frame.m() {
        return Err(mismatch(frame.m(), weights.len()));
    }
    if weights.iter().any(|&w| !w.is_finite() || w < T::zero()) {
        return Err(Error::InvalidWeights);
    }
    let x = frame.synthesis();
    let mut s = x.clone();
    for i in 0..x.rows() {
        for (j, &w) in weights.iter().enumerate() {
            s[(i, j)] = x[(i, j)] * w;
        }
    }
    let r = rank(&s, Tolerances::default().rank)?;
    if r < frame.n() {
        return Err(Error::NotSpanning { n: frame.n(), rank: r });
    }
    Ok(ScaledFrame {
        base: frame.clone(),
        weights: weights.to_vec(),
        synthesis: s,
    })
}

/// Whether `G` is a dual of `F`: `‖X·Yᵀ − I‖_max ≤ tol`.
pub fn is_dual<T: Real>(f: &Frame<T>, g: &Frame<T>, tol: T) -> Result<bool> {
    if f.n() != g.n() || f.m() != g.m() {
        return Err(mismatch(
            format!("{}x{}", f.n(), f.m()),
            format!("{}x{}", g.n(), g.m()),
        ));
    }
    Ok(dual_residual(f.synthesis(), g.synthesis()) <= tol)
}

pub(crate) fn dual_residual<T: Real>(x: &Matrix<T>, y: &Matrix<T>) -> T {
    let xyt = x * &y.transpose();
    xyt.max_abs_diff(&Matrix::identity(x.rows()))
}
