//! Deciding whether nonnegative weights make a frame tight.
//!
//! A frame is scalable exactly when the reduced diagram matrix `θ̃` has a
//! nonnegative, nonzero kernel vector `c`; then `a_i = √c_i` is a scaling.
//! When no such vector exists, a functional `y` with `⟨x̃_i, y⟩ > 0` for every
//! `i` certifies it.
//!
//! Three routes are offered. [`decide_scalable`] always applies and goes
//! through a linear feasibility problem. [`cofactor_scaling`] and
//! [`codim2_scaling`] apply when the kernel has dimension one or two and
//! produce the weights in closed form.

mod codim2;
mod cofactor;

pub use codim2::{codim2_pencil, codim2_scaling, Codim2Pencil};
pub use cofactor::{cofactor_scaling, CofactorReport, SignClass};

use crate::diagram::reduced_diagram_matrix;
use crate::error::{mismatch, Error, Result};
use crate::frame::{apply_scaling, Frame, ScaledFrame};
use crate::numerics::{
    least_squares, max_abs, rank, solve_feasibility, FeasibilityOutcome, FeasibilityProblem,
    Matrix,
};
use crate::scalar::{Real, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    NotScalable,
    Scalable,
    StrictlyScalable,
}

impl Verdict {
    pub fn is_scalable(self) -> bool {
        self != Verdict::NotScalable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Feasibility,
    Cofactor,
    Codim2,
    SignReject,
    /// Parseval weights from the `W ∩ V` system.
    Intersection,
}

/// Why [`quick_sign_reject`] ruled a frame out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRejection {
    /// Row `θ̃[row]` has every entry nonzero and of one sign.
    Row(usize),
    /// The columns of `θ̃` are linearly independent, so its kernel is trivial.
    IndependentColumns,
}

/// A sign rejection with the separating functional it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct QuickReject<T> {
    pub reason: SignRejection,
    pub certificate: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingResult<T> {
    pub verdict: Verdict,
    /// Squared weights `c = a²`, normalized to `Σc = 1`.
    pub weights_c: Option<Vec<T>>,
    /// `a_i = √c_i`.
    pub scalars_a: Option<Vec<T>>,
    /// `y` with `⟨x̃_i, y⟩ > 0` for all `i`, over reduced diagram coordinates.
    pub certificate_y: Option<Vec<T>>,
    pub method: Method,
    pub rejection: Option<SignRejection>,
    /// Indices whose weight is at most the strictness margin.
    pub zero_indices: Vec<usize>,
}

impl<T: Real> ScalingResult<T> {
    pub fn is_scalable(&self) -> bool {
        self.verdict.is_scalable()
    }

    /// The frame scaled by `a`, when scalable.
    pub fn scaled(&self, frame: &Frame<T>) -> Option<Result<ScaledFrame<T>>> {
        self.scalars_a.as_ref().map(|a| apply_scaling(frame, a))
    }
}

fn require_dim<T: Real>(frame: &Frame<T>) -> Result<()> {
    if frame.n() < 2 {
        return Err(Error::DimensionTooSmall { n: frame.n() });
    }
    Ok(())
}

/// Cheap sufficient tests for non-scalability.
///
/// A row of `θ̃` whose entries are all of one sign and all of magnitude above
/// `sign_zero` cannot be annihilated by a nonnegative nonzero `c`; `±e_row`
/// is then a certificate. A row that is merely one-signed with some zeros
/// only forces the matching weights to vanish, so it is not a rejection.
/// Linearly independent columns leave no kernel at all; the certificate is
/// `θ̃(θ̃ᵀθ̃)⁻¹·1`.
pub fn quick_sign_reject<T: Real>(
    frame: &Frame<T>,
    tol: &Tolerances<T>,
) -> Result<Option<QuickReject<T>>> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    Ok(sign_reject_theta(&theta, tol))
}

fn sign_reject_theta<T: Real>(theta: &Matrix<T>, tol: &Tolerances<T>) -> Option<QuickReject<T>> {
    let (k, m) = theta.shape();
    for r in 0..k {
        let row = theta.row(r);
        if row.iter().any(|v| v.abs() <= tol.sign_zero) {
            continue;
        }
        let sign = if row[0] > T::zero() { T::one() } else { -T::one() };
        if row.iter().all(|&v| v * sign > T::zero()) {
            let mut y = vec![T::zero(); k];
            y[r] = sign;
            return Some(QuickReject {
                reason: SignRejection::Row(r),
                certificate: y,
            });
        }
    }
    if m <= k && rank(theta, tol.rank).ok()? == m {
        // y = θ̃·z with θ̃ᵀθ̃·z = 1 gives θ̃ᵀy = 1
        let gram = &theta.transpose() * theta;
        let z = least_squares(&gram, &vec![T::one(); m], tol.rank).ok()?;
        let y = theta.mul_vec(&z);
        if hull_margin(theta, &y) > T::zero() {
            return Some(QuickReject {
                reason: SignRejection::IndependentColumns,
                certificate: y,
            });
        }
    }
    None
}

fn hull_margin<T: Real>(theta: &Matrix<T>, y: &[T]) -> T {
    theta
        .tr_mul_vec(y)
        .into_iter()
        .fold(T::infinity(), T::min)
}

/// `min_i ⟨x̃_i, y⟩ > 0`, i.e. `y` certifies that the frame is not scalable.
pub fn hull_certificate_check<T: Real>(frame: &Frame<T>, y: &[T]) -> Result<bool> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    if y.len() != theta.rows() {
        return Err(mismatch(theta.rows(), y.len()));
    }
    Ok(hull_margin(&theta, y) > T::zero())
}

/// Decides scalability through the feasibility problem `θ̃c = 0, c ≥ 0, Σc = 1`.
///
/// With `strict`, the solver maximizes the smallest weight, so a
/// strictly scalable frame is always reported as such. Without it, the
/// verdict reflects the witness found: `Scalable` then means "at least
/// scalable".
pub fn decide_scalable<T: Real>(
    frame: &Frame<T>,
    strict: bool,
    tol: &Tolerances<T>,
) -> Result<ScalingResult<T>> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    if let Some(q) = sign_reject_theta(&theta, tol) {
        return Ok(ScalingResult {
            verdict: Verdict::NotScalable,
            weights_c: None,
            scalars_a: None,
            certificate_y: Some(q.certificate),
            method: Method::SignReject,
            rejection: Some(q.reason),
            zero_indices: Vec::new(),
        });
    }
    let outcome = solve_feasibility(&FeasibilityProblem::homogeneous(theta.clone(), strict), tol)?;
    match outcome {
        FeasibilityOutcome::Infeasible { certificate } => {
            not_scalable(&theta, certificate, Method::Feasibility)
        }
        FeasibilityOutcome::Feasible { witness, .. }
        | FeasibilityOutcome::NotStrictlyFeasible { witness, .. } => {
            scalable(frame, &theta, witness, Method::Feasibility, tol)
        }
    }
}

pub(crate) fn not_scalable<T: Real>(
    theta: &Matrix<T>,
    y: Vec<T>,
    method: Method,
) -> Result<ScalingResult<T>> {
    if !(hull_margin(theta, &y) > T::zero()) {
        return Err(Error::Numeric("certificate does not separate the diagram vectors".into()));
    }
    Ok(ScalingResult {
        verdict: Verdict::NotScalable,
        weights_c: None,
        scalars_a: None,
        certificate_y: Some(y),
        method,
        rejection: None,
        zero_indices: Vec::new(),
    })
}

pub(crate) fn not_scalable_checked<T: Real>(
    frame: &Frame<T>,
    y: Vec<T>,
    method: Method,
) -> Result<ScalingResult<T>> {
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    not_scalable(&theta, y, method)
}

/// Normalizes a nonnegative kernel vector and re-verifies it.
pub(crate) fn scalable<T: Real>(
    frame: &Frame<T>,
    theta: &Matrix<T>,
    c: Vec<T>,
    method: Method,
    tol: &Tolerances<T>,
) -> Result<ScalingResult<T>> {
    let c: Vec<T> = c.into_iter().map(|v| v.max(T::zero())).collect();
    let total: T = c.iter().copied().sum();
    if !(total > T::zero()) {
        return Err(Error::Numeric("scaling weights vanish".into()));
    }
    let c: Vec<T> = c.into_iter().map(|v| v / total).collect();
    let resid = max_abs(&theta.mul_vec(&c));
    if resid > tol.lp_residual * theta.max_abs().max(T::one()) {
        return Err(Error::Numeric(format!(
            "kernel residual {resid} of the scaling weights is too large"
        )));
    }
    let a: Vec<T> = c.iter().map(|v| v.sqrt()).collect();
    if !apply_scaling(frame, &a)?.tightness(tol.tight).is_tight() {
        return Err(Error::Numeric("scaled frame fails the tightness check".into()));
    }
    let zero_indices: Vec<usize> = (0..c.len()).filter(|&i| c[i] <= tol.strict_margin).collect();
    let verdict = if zero_indices.is_empty() {
        Verdict::StrictlyScalable
    } else {
        Verdict::Scalable
    };
    Ok(ScalingResult {
        verdict,
        weights_c: Some(c),
        scalars_a: Some(a),
        certificate_y: None,
        method,
        rejection: None,
        zero_indices,
    })
}

/// Certificate for a kernel known to contain no nonnegative vector.
pub(crate) fn lp_certificate<T: Real>(
    theta: &Matrix<T>,
    method: Method,
    tol: &Tolerances<T>,
) -> Result<ScalingResult<T>> {
    if let Some(q) = sign_reject_theta(theta, tol) {
        return not_scalable(theta, q.certificate, method);
    }
    match solve_feasibility(&FeasibilityProblem::homogeneous(theta.clone(), false), tol)? {
        FeasibilityOutcome::Infeasible { certificate } => not_scalable(theta, certificate, method),
        _ => Err(Error::Numeric(
            "closed-form method and feasibility solver disagree".into(),
        )),
    }
}

/// `‖Gram(θ̃)·c‖∞`, the kernel condition stated through the Gram matrix `θ̃ᵀθ̃`.
pub fn gram_kernel_residual<T: Real>(frame: &Frame<T>, c: &[T]) -> Result<T> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    if c.len() != theta.cols() {
        return Err(mismatch(theta.cols(), c.len()));
    }
    let tc = theta.mul_vec(c);
    Ok(max_abs(&theta.tr_mul_vec(&tc)))
}

/// Dimension of the kernel of `θ̃`.
pub fn diagram_corank<T: Real>(frame: &Frame<T>, tol: &Tolerances<T>) -> Result<usize> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    Ok(theta.cols() - rank(&theta, tol.rank)?)
}
