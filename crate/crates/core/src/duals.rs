//! Dual frames and the scalability of canonical duals.

use crate::error::{mismatch, Error, Result};
use crate::frame::{apply_scaling, dual_residual, Frame};
use crate::numerics::{
    max_abs, rank, solve_feasibility, symmetric_eigen, FeasibilityProblem,
    Matrix,
};
use crate::scalar::{Real, Tolerances};

pub use crate::constructions::p1_counterexample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualKind {
    Canonical,
    Alternate,
}

/// A frame and a dual of it: `X·Yᵀ = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPair<T> {
    pub primal: Frame<T>,
    pub dual: Frame<T>,
    pub kind: DualKind,
    /// Indices of the original vectors kept in `primal`.
    pub indices: Vec<usize>,
}

impl<T: Real> DualPair<T> {
    /// `‖X·Yᵀ − I‖_max`.
    pub fn residual(&self) -> T {
        dual_residual(self.primal.synthesis(), self.dual.synthesis())
    }
}

/// `y_i = S⁻¹x_i`.
pub fn canonical_dual<T: Real>(frame: &Frame<T>, tol: &Tolerances<T>) -> Result<DualPair<T>> {
    let op = frame.operator()?;
    let dual = Frame::from_synthesis(&op.inverse() * frame.synthesis())?;
    let pair = DualPair {
        primal: frame.clone(),
        dual,
        kind: DualKind::Canonical,
        indices: (0..frame.m()).collect(),
    };
    if pair.residual() > tol.dual {
        return Err(Error::Numeric(format!(
            "canonical dual residual {} exceeds tolerance",
            pair.residual()
        )));
    }
    Ok(pair)
}

/// `y_i = a_i²·x_i` for weights making `{a_i x_i}` Parseval; zero weights are dropped.
pub fn alternate_dual_from_scaling<T: Real>(
    frame: &Frame<T>,
    a: &[T],
    tol: &Tolerances<T>,
) -> Result<DualPair<T>> {
    let scaled = apply_scaling(frame, a)?;
    let tight = scaled.tightness(tol.tight);
    if !tight.is_parseval(tol.tight) {
        let deviation = tight
            .bound()
            .map_or(f64::INFINITY, |b| (b - T::one()).abs().to_f64_lossy());
        return Err(Error::NotParsevalScaling { deviation });
    }
    let indices = scaled.support();
    let primal = frame.subframe(&indices)?;
    let cols: Vec<Vec<T>> = indices
        .iter()
        .map(|&i| frame.vector(i).into_iter().map(|v| v * a[i] * a[i]).collect())
        .collect();
    let dual = Frame::from_synthesis(Matrix::from_columns(&cols)?)?;
    let pair = DualPair {
        primal,
        dual,
        kind: DualKind::Alternate,
        indices,
    };
    if pair.residual() > tol.dual {
        return Err(Error::Numeric("alternate dual fails X·Yᵀ = I".into()));
    }
    Ok(pair)
}

fn weighted_operator<T: Real>(frame: &Frame<T>, c: &[T]) -> Matrix<T> {
    let x = frame.synthesis();
    let n = frame.n();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = (0..frame.m()).map(|k| c[k] * x[(i, k)] * x[(j, k)]).sum();
        }
    }
    s
}

/// Whether `{a_i x_i}` has frame operator `(TᵀT)⁻¹`, i.e. `{a_i T x_i}` is Parseval.
pub fn check_transform_scaling<T: Real>(
    frame: &Frame<T>,
    t: &Matrix<T>,
    a: &[T],
    tol: &Tolerances<T>,
) -> Result<bool> {
    let n = frame.n();
    if t.shape() != (n, n) {
        return Err(mismatch(format!("{n}x{n} transform"), format!("{}x{}", t.rows(), t.cols())));
    }
    if a.len() != frame.m() {
        return Err(mismatch(frame.m(), a.len()));
    }
    if !t.is_finite() || rank(t, tol.rank)? < n {
        return Err(Error::SingularTransform);
    }
    let target = symmetric_eigen(&(&t.transpose() * t), tol.symmetry)?.inverse();
    let c: Vec<T> = a.iter().map(|&v| v * v).collect();
    let s1 = weighted_operator(frame, &c);
    Ok(s1.max_abs_diff(&target) <= tol.operator * target.max_abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualScalingReport<T> {
    pub feasible: bool,
    /// `c` with `Σ c_i x_i x_iᵀ = S²`.
    pub weights_c: Option<Vec<T>>,
    pub scalars_a: Option<Vec<T>>,
    /// `‖Σ c_i x_i x_iᵀ − S²‖_max` for a solution; 0 otherwise.
    pub residual: T,
    /// Farkas certificate over the flattened equations when infeasible.
    pub certificate: Option<Vec<T>>,
    /// With a strict request: whether a strictly positive solution exists.
    pub strictly_feasible: Option<bool>,
}

/// Upper triangle of a symmetric matrix, off-diagonal entries times `√2`.
fn flatten_sym<T: Real>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let r2 = T::lit(2.0).sqrt();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(if i == j { m[(i, j)] } else { r2 * m[(i, j)] });
        }
    }
    out
}

/// Whether the canonical dual is scalable: `c ≥ 0` with `Σ c_i x_i x_iᵀ = S²`.
///
/// A solution scales the canonical dual to a Parseval frame with `a = √c`,
/// and `{√c_i S^{−1/2} x_i}` then has frame operator `S`; both are re-checked.
pub fn canonical_dual_scalable<T: Real>(
    frame: &Frame<T>,
    strict: bool,
    tol: &Tolerances<T>,
) -> Result<DualScalingReport<T>> {
    let op = frame.operator()?;
    let s2 = op.squared();
    let cols: Vec<Vec<T>> = (0..frame.m())
        .map(|k| {
            let x = frame.vector(k);
            let outer = Matrix::from_columns(std::slice::from_ref(&x))
                .map(|c| &c * &Matrix::from_rows(&[x]).expect("finite"))?;
            Ok(flatten_sym(&outer))
        })
        .collect::<Result<_>>()?;
    let problem = FeasibilityProblem::new(Matrix::from_columns(&cols)?, flatten_sym(&s2), strict)?;
    let outcome = solve_feasibility(&problem, tol)?;
    let strictly_feasible = strict.then(|| outcome.is_feasible());
    let Some(w) = outcome.witness() else {
        return Ok(DualScalingReport {
            feasible: false,
            weights_c: None,
            scalars_a: None,
            residual: T::zero(),
            certificate: outcome.certificate().map(<[T]>::to_vec),
            strictly_feasible,
        });
    };
    let c: Vec<T> = w.iter().map(|v| v.max(T::zero())).collect();
    let residual = weighted_operator(frame, &c).max_abs_diff(&s2);
    if residual > tol.operator * s2.max_abs() {
        return Err(Error::Numeric(format!("S² system residual {residual} too large")));
    }
    let a: Vec<T> = c.iter().map(|v| v.sqrt()).collect();
    let dual = canonical_dual(frame, tol)?;
    if !apply_scaling(&dual.dual, &a)?
        .tightness(tol.tight)
        .is_parseval(tol.tight)
    {
        return Err(Error::Numeric("scaled canonical dual is not Parseval".into()));
    }
    let half = op.inverse_sqrt();
    let moved = Frame::from_synthesis(&half * frame.synthesis())?;
    let s_back = weighted_operator(&moved, &c);
    if s_back.max_abs_diff(&op.operator) > tol.operator * op.operator.max_abs() {
        return Err(Error::Numeric(
            "{√c_i S^(-1/2) x_i} does not have frame operator S".into(),
        ));
    }
    Ok(DualScalingReport {
        feasible: true,
        weights_c: Some(c),
        scalars_a: Some(a),
        residual,
        certificate: None,
        strictly_feasible,
    })
}

/// `‖X(D² − G)Xᵀ‖_max` with `D = diag(a)` and Grammian `G = XᵀX`.
pub fn grammian_form_check<T: Real>(frame: &Frame<T>, a: &[T]) -> Result<T> {
    if a.len() != frame.m() {
        return Err(mismatch(frame.m(), a.len()));
    }
    let x = frame.synthesis();
    let g = &x.transpose() * x;
    let d2 = Matrix::from_diagonal(&a.iter().map(|&v| v * v).collect::<Vec<_>>());
    let r = &(x * &d2.sub(&g)) * &x.transpose();
    Ok(r.max_abs())
}

/// Threshold for [`grammian_form_check`]: `operator·‖X‖²_max·max(‖D²‖_max, ‖G‖_max)`.
pub fn grammian_form_bound<T: Real>(frame: &Frame<T>, a: &[T], tol: &Tolerances<T>) -> Result<T> {
    if a.len() != frame.m() {
        return Err(mismatch(frame.m(), a.len()));
    }
    let x = frame.synthesis();
    let g = &x.transpose() * x;
    let d2 = a.iter().map(|&v| v * v).fold(T::zero(), T::max);
    let xm = x.max_abs();
    Ok(tol.operator * xm * xm * d2.max(g.max_abs()))
}

/// `max_i |a_i·y_i − x_i|` after rescaling dual vectors by `1/a_i`, against the Parseval frame `{a_i x_i}`.
pub fn rescaled_dual_deviation<T: Real>(pair: &DualPair<T>, a: &[T]) -> Result<T> {
    if a.len() < pair.indices.iter().max().map_or(0, |&i| i + 1) {
        return Err(mismatch(pair.indices.len(), a.len()));
    }
    let mut worst = T::zero();
    for (k, &i) in pair.indices.iter().enumerate() {
        let y = pair.dual.vector(k);
        let x = pair.primal.vector(k);
        let diff: Vec<T> = y
            .iter()
            .zip(&x)
            .map(|(&yv, &xv)| yv / a[i] - a[i] * xv)
            .collect();
        worst = worst.max(max_abs(&diff));
    }
    Ok(worst)
}
