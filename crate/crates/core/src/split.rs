//! Scalability split into two weaker conditions on the synthesis rows
//! `u_1, …, u_n ∈ R^m`.
//!
//! * `W`: weights `a ≥ 0` with `⟨a, u_j²⟩ = 1` for every row, so the rows of
//!   `[√a_i x_i]` all have unit norm. A convex set, possibly empty.
//! * `V`: weights `a ≥ 0` with `⟨a, u_i∙u_j⟩ = 0` for `i < j`, so the rows are
//!   pairwise orthogonal. A cone that always contains 0.
//!
//! The frame is scalable exactly when `W ∩ V` is nonempty, and then `√a` makes
//! it Parseval.

use crate::diagram::pairs;
use crate::error::{mismatch, Error, Result};
use crate::frame::{apply_scaling, Frame};
use crate::numerics::{
    dot, independent_rows, least_squares, max_abs, solve_feasibility, FeasibilityOutcome,
    FeasibilityProblem, Matrix,
};
use crate::scalability::{Method, ScalingResult, Verdict};
use crate::scalar::{Real, Tolerances};

/// Synthesis rows with their entrywise squares and pairwise products.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSystem<T> {
    pub u: Vec<Vec<T>>,
    pub u_squared: Vec<Vec<T>>,
    /// `u_i ∙ u_j` for `i < j`, lexicographic.
    pub cross_products: Vec<Vec<T>>,
}

fn hadamard<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x * y).collect()
}

pub fn row_system<T: Real>(frame: &Frame<T>) -> RowSystem<T> {
    let u = frame.synthesis().to_rows();
    let u_squared = u.iter().map(|r| hadamard(r, r)).collect();
    let cross_products = pairs(frame.n())
        .into_iter()
        .map(|(i, j)| hadamard(&u[i], &u[j]))
        .collect();
    RowSystem {
        u,
        u_squared,
        cross_products,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipStatus {
    Member,
    NotMember,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeMembership<T> {
    pub status: MembershipStatus,
    /// The tested vector, or the element found.
    pub a: Option<Vec<T>>,
    /// Farkas certificate when a search found nothing.
    pub certificate: Option<Vec<T>>,
    /// Largest violation of a defining equality (zero for failed searches).
    pub deviation: T,
}

impl<T: Real> ConeMembership<T> {
    pub fn is_member(&self) -> bool {
        self.status == MembershipStatus::Member
    }

    fn tested(member: bool, a: &[T], deviation: T) -> Self {
        Self {
            status: if member {
                MembershipStatus::Member
            } else {
                MembershipStatus::NotMember
            },
            a: Some(a.to_vec()),
            certificate: None,
            deviation,
        }
    }

    fn empty(certificate: Vec<T>) -> Self {
        Self {
            status: MembershipStatus::NotMember,
            a: None,
            certificate: Some(certificate),
            deviation: T::zero(),
        }
    }
}

fn check_len<T: Real>(frame: &Frame<T>, a: &[T]) -> Result<()> {
    if a.len() != frame.m() {
        return Err(mismatch(frame.m(), a.len()));
    }
    Ok(())
}

fn nonneg<T: Real>(a: &[T], tol: &Tolerances<T>) -> bool {
    a.iter().all(|&v| v.is_finite() && v >= -tol.clamp)
}

fn w_deviation<T: Real>(rs: &RowSystem<T>, a: &[T]) -> T {
    rs.u_squared
        .iter()
        .map(|r| (dot(a, r) - T::one()).abs())
        .fold(T::zero(), T::max)
}

/// `a ≥ 0` and `|⟨a, u_j²⟩ − 1| ≤ membership` for every row.
pub fn is_in_w<T: Real>(frame: &Frame<T>, a: &[T], tol: &Tolerances<T>) -> Result<ConeMembership<T>> {
    check_len(frame, a)?;
    let dev = w_deviation(&row_system(frame), a);
    Ok(ConeMembership::tested(nonneg(a, tol) && dev <= tol.membership, a, dev))
}

fn v_deviation<T: Real>(rs: &RowSystem<T>, a: &[T]) -> T {
    rs.cross_products
        .iter()
        .map(|r| dot(a, r).abs())
        .fold(T::zero(), T::max)
}

fn v_scale<T: Real>(rs: &RowSystem<T>, a: &[T]) -> T {
    let entries = rs
        .cross_products
        .iter()
        .map(|r| max_abs(r))
        .fold(T::zero(), T::max);
    let mass: T = a.iter().map(|v| v.abs()).sum();
    (entries * mass).max(T::one())
}

/// `a ≥ 0` and `⟨a, u_i∙u_j⟩ = 0` for all `i < j`, relative to the size of `a`.
pub fn is_in_v<T: Real>(frame: &Frame<T>, a: &[T], tol: &Tolerances<T>) -> Result<ConeMembership<T>> {
    check_len(frame, a)?;
    let rs = row_system(frame);
    let dev = v_deviation(&rs, a);
    let ok = nonneg(a, tol) && dev <= tol.membership * v_scale(&rs, a);
    Ok(ConeMembership::tested(ok, a, dev))
}

fn w_problem<T: Real>(rs: &RowSystem<T>, strict: bool) -> Result<FeasibilityProblem<T>> {
    let a = Matrix::from_rows(&rs.u_squared)?;
    let n = a.rows();
    FeasibilityProblem::new(a, vec![T::one(); n], strict)
}

fn found<T: Real>(witness: Vec<T>, deviation: T) -> ConeMembership<T> {
    ConeMembership {
        status: MembershipStatus::Member,
        a: Some(witness),
        certificate: None,
        deviation,
    }
}

/// An element of `W`, or `NotMember` when `W` is empty.
pub fn find_w_element<T: Real>(frame: &Frame<T>, tol: &Tolerances<T>) -> Result<ConeMembership<T>> {
    let rs = row_system(frame);
    match solve_feasibility(&w_problem(&rs, false)?, tol)? {
        FeasibilityOutcome::Infeasible { certificate } => Ok(ConeMembership::empty(certificate)),
        outcome => {
            let a = outcome.witness().expect("feasible outcome").to_vec();
            let dev = w_deviation(&rs, &a);
            Ok(found(a, dev))
        }
    }
}

/// Checks convexity of `W` and the per-row decomposition of its elements.
///
/// Two elements are taken (a vertex and a maximally interior point), and
/// `samples` convex combinations of them are tested for membership. Each
/// element must split as `c_j·u_j² + v` with `c_j‖u_j²‖² = 1` and
/// `v ⟂ u_j²`, which holds exactly when `⟨a, u_j²⟩ = 1`.
pub fn w_geometry_check<T: Real>(frame: &Frame<T>, samples: usize, tol: &Tolerances<T>) -> Result<bool> {
    let rs = row_system(frame);
    let first = match solve_feasibility(&w_problem(&rs, false)?, tol)? {
        FeasibilityOutcome::Infeasible { .. } => return Err(Error::EmptyW),
        outcome => outcome.witness().expect("feasible outcome").to_vec(),
    };
    let second = solve_feasibility(&w_problem(&rs, true)?, tol)?
        .witness()
        .map(<[T]>::to_vec)
        .unwrap_or_else(|| first.clone());
    for k in 0..=samples + 1 {
        let lambda = T::lit(k as f64 / (samples + 1) as f64);
        let mix: Vec<T> = first
            .iter()
            .zip(&second)
            .map(|(&x, &y)| lambda * x + (T::one() - lambda) * y)
            .collect();
        if !is_in_w(frame, &mix, tol)?.is_member() {
            return Ok(false);
        }
    }
    for a in [&first, &second] {
        for u2 in &rs.u_squared {
            let nn = dot(u2, u2);
            let c = T::one() / nn;
            let v: Vec<T> = a.iter().zip(u2).map(|(&x, &y)| x - c * y).collect();
            let scale = dot(a, a).sqrt() * nn.sqrt();
            if dot(&v, u2).abs() > tol.membership * scale.max(T::one()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nonzero element of `V`, normalized by `Σa = 1`.
///
/// With `strict`, the element with the largest smallest entry is sought.
pub fn find_v_element<T: Real>(
    frame: &Frame<T>,
    strict: bool,
    tol: &Tolerances<T>,
) -> Result<ConeMembership<T>> {
    let rs = row_system(frame);
    let a = Matrix::from_rows(&rs.cross_products)?;
    match solve_feasibility(&FeasibilityProblem::homogeneous(a, strict), tol)? {
        FeasibilityOutcome::Infeasible { certificate } => Ok(ConeMembership::empty(certificate)),
        outcome => {
            let w = outcome.witness().expect("feasible outcome").to_vec();
            let dev = v_deviation(&rs, &w);
            Ok(found(w, dev))
        }
    }
}

/// Traceless quadratic form as a functional on reduced diagram vectors:
/// returns `z` with `⟨x̃, z⟩ = xᵀMx` whenever `tr M = 0`.
fn form_to_diagram<T: Real>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let root = T::lit((n - 1) as f64).sqrt();
    let prod = root / T::lit(2.0 * n as f64).sqrt();
    let mut z: Vec<T> = (1..n).map(|j| -m[(j, j)] * root).collect();
    z.extend(pairs(n).into_iter().map(|(i, j)| T::lit(2.0) * m[(i, j)] * prod));
    z
}

/// Scalability through `W ∩ V`: `⟨a, u_j²⟩ = 1`, `⟨a, u_i∙u_j⟩ = 0`, `a ≥ 0`.
///
/// A solution makes `{√a_i x_i}` Parseval, so `weights_c` here is normalized
/// by that condition rather than by `Σc = 1`. An infeasible system yields a
/// quadratic form that is nonnegative on every `x_i` and has negative trace;
/// removing its trace gives a separating functional on the diagram vectors.
pub fn intersection_scalability<T: Real>(
    frame: &Frame<T>,
    tol: &Tolerances<T>,
) -> Result<ScalingResult<T>> {
    let n = frame.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let rs = row_system(frame);
    let mut rows = rs.u_squared.clone();
    rows.extend(rs.cross_products.iter().cloned());
    let mut b = vec![T::one(); n];
    b.extend(vec![T::zero(); rs.cross_products.len()]);
    let problem = FeasibilityProblem::new(Matrix::from_rows(&rows)?, b, true)?;
    match solve_feasibility(&problem, tol)? {
        FeasibilityOutcome::Infeasible { certificate } => {
            let mut q = Matrix::zeros(n, n);
            for j in 0..n {
                q[(j, j)] = certificate[j];
            }
            for (k, (i, j)) in pairs(n).into_iter().enumerate() {
                let half = certificate[n + k] / T::lit(2.0);
                q[(i, j)] = half;
                q[(j, i)] = half;
            }
            let shift = (0..n).map(|j| q[(j, j)]).sum::<T>() / T::lit(n as f64);
            for j in 0..n {
                q[(j, j)] -= shift;
            }
            let y = form_to_diagram(&q);
            crate::scalability::not_scalable_checked(frame, y, Method::Intersection)
        }
        outcome => {
            let a: Vec<T> = outcome
                .witness()
                .expect("feasible outcome")
                .iter()
                .map(|v| v.max(T::zero()))
                .collect();
            let scalars: Vec<T> = a.iter().map(|v| v.sqrt()).collect();
            let tight = apply_scaling(frame, &scalars)?.tightness(tol.tight);
            if !tight.is_parseval(tol.tight) {
                return Err(Error::NotParsevalScaling {
                    deviation: tight
                        .bound()
                        .map_or(f64::INFINITY, |b| (b - T::one()).abs().to_f64_lossy()),
                });
            }
            let total: T = a.iter().copied().sum();
            let zero_indices: Vec<usize> = (0..a.len())
                .filter(|&i| a[i] <= tol.strict_margin * total)
                .collect();
            Ok(ScalingResult {
                verdict: if zero_indices.is_empty() {
                    Verdict::StrictlyScalable
                } else {
                    Verdict::Scalable
                },
                weights_c: Some(a),
                scalars_a: Some(scalars),
                certificate_y: None,
                method: Method::Intersection,
                rejection: None,
                zero_indices,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionBasisReport<T> {
    /// `I = {i : a_i > strict_margin}`.
    pub support: Vec<usize>,
    /// Rows `J` whose projections `P_I u_k²` form a maximal independent set.
    pub basis: Vec<usize>,
    /// For each other row `j`: the sum of its coefficients over `J`.
    pub coefficient_sums: Vec<(usize, T)>,
    pub holds: bool,
}

/// For a `W` element `a` supported on `I`, every `P_I u_j²` outside a maximal
/// independent set `J` is an affine combination of `{P_I u_k²}_{k∈J}`: its
/// coefficients sum to 1.
pub fn projection_basis_check<T: Real>(
    frame: &Frame<T>,
    a: &[T],
    tol: &Tolerances<T>,
) -> Result<ProjectionBasisReport<T>> {
    if !is_in_w(frame, a, tol)?.is_member() {
        return Err(Error::EmptyW);
    }
    let rs = row_system(frame);
    let support: Vec<usize> = (0..a.len()).filter(|&i| a[i] > tol.strict_margin).collect();
    let projected: Vec<Vec<T>> = rs
        .u_squared
        .iter()
        .map(|r| support.iter().map(|&i| r[i]).collect())
        .collect();
    let pm = Matrix::from_rows(&projected)?;
    let basis = independent_rows(&pm, tol.rank);
    let cols: Vec<Vec<T>> = basis.iter().map(|&k| projected[k].clone()).collect();
    let bm = Matrix::from_columns(&cols)?;
    let mut sums = Vec::new();
    let mut holds = true;
    for j in (0..projected.len()).filter(|j| !basis.contains(j)) {
        let coef = least_squares(&bm, &projected[j], tol.rank)?;
        let fit = bm.mul_vec(&coef);
        let resid = fit
            .iter()
            .zip(&projected[j])
            .map(|(&x, &y)| (x - y).abs())
            .fold(T::zero(), T::max);
        let sum: T = coef.iter().copied().sum();
        if resid > tol.lp_residual * max_abs(&projected[j]).max(T::one())
            || (sum - T::one()).abs() > T::tol(1e-6)
        {
            holds = false;
        }
        sums.push((j, sum));
    }
    Ok(ProjectionBasisReport {
        support,
        basis,
        coefficient_sums: sums,
        holds,
    })
}
