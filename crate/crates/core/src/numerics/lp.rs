//! Nonnegative linear feasibility by dense two-phase simplex.
//!
//! Every system is `A·x = b, x ≥ 0`. Pivoting follows Bland's rule, so the
//! method terminates without cycling; an iteration cap of
//! `50·(rows + cols)` of the working tableau guards against numerical stalls.
//! Infeasible systems come back with a Farkas certificate read off the
//! phase-one duals, feasible ones with a re-verified witness.

use crate::error::{mismatch, Error, Result};
use crate::numerics::matrix::{dot, max_abs, Matrix};
use crate::scalar::{Real, Tolerances};

/// `A·x = b, x ≥ 0`, optionally asking for a strictly positive solution.
///
/// When `b = 0` the solver appends `Σx = 1` to exclude the trivial solution.
#[derive(Debug, Clone)]
pub struct FeasibilityProblem<T> {
    a: Matrix<T>,
    b: Vec<T>,
    require_strict: bool,
}

impl<T: Real> FeasibilityProblem<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>, require_strict: bool) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(mismatch(format!("b of length {}", a.rows()), b.len()));
        }
        if !a.is_finite() || b.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            a,
            b,
            require_strict,
        })
    }

    /// Homogeneous system `A·x = 0` (normalized by `Σx = 1`).
    pub fn homogeneous(a: Matrix<T>, require_strict: bool) -> Self {
        let b = vec![T::zero(); a.rows()];
        Self {
            a,
            b,
            require_strict,
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn rhs(&self) -> &[T] {
        &self.b
    }

    pub fn require_strict(&self) -> bool {
        self.require_strict
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b.iter().all(|&x| x == T::zero())
    }

    /// The system actually handed to the simplex: `A` plus the normalization row if homogeneous.
    fn posed(&self) -> (Matrix<T>, Vec<T>) {
        if self.is_homogeneous() {
            let mut rows = self.a.to_rows();
            rows.push(vec![T::one(); self.a.cols()]);
            let mut b = self.b.clone();
            b.push(T::one());
            (Matrix::from_rows(&rows).expect("finite rows"), b)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }
}

/// Status in the two-valued sense used by callers that only need a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityOutcome<T> {
    /// A nonnegative solution. `margin` is the optimal `δ` (with `x_i ≥ δ`) when strictness was requested.
    Feasible { witness: Vec<T>, margin: Option<T> },
    /// Strictness was requested; solutions exist but the best margin is at or below the threshold.
    NotStrictlyFeasible { witness: Vec<T>, margin: T },
    /// No nonnegative (nonzero, for homogeneous systems) solution.
    ///
    /// Homogeneous systems: `(yᵀA)_j > 0` for every column `j`.
    /// Otherwise: `yᵀA ≥ 0` entrywise and `yᵀb < 0`.
    Infeasible { certificate: Vec<T> },
}

impl<T: Real> FeasibilityOutcome<T> {
    pub fn status(&self) -> FeasibilityStatus {
        match self {
            Self::Feasible { .. } => FeasibilityStatus::Feasible,
            _ => FeasibilityStatus::Infeasible,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status() == FeasibilityStatus::Feasible
    }

    /// Any nonnegative solution found, including a boundary one for a failed strict request.
    pub fn witness(&self) -> Option<&[T]> {
        match self {
            Self::Feasible { witness, .. } | Self::NotStrictlyFeasible { witness, .. } => {
                Some(witness)
            }
            Self::Infeasible { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&[T]> {
        match self {
            Self::Infeasible { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn margin(&self) -> Option<T> {
        match self {
            Self::Feasible { margin, .. } => *margin,
            Self::NotStrictlyFeasible { margin, .. } => Some(*margin),
            Self::Infeasible { .. } => None,
        }
    }
}

/// Decides `A·x = b, x ≥ 0` and returns a checked witness or certificate.
pub fn solve_feasibility<T: Real>(
    p: &FeasibilityProblem<T>,
    tol: &Tolerances<T>,
) -> Result<FeasibilityOutcome<T>> {
    let (a, b) = p.posed();
    let mut tab = Tableau::new(&a, &b, tol);
    let w = tab.phase_one()?;
    let b_scale = T::one() + max_abs(&tab.b_internal);
    if w > tol.lp_feasibility * b_scale {
        let cert = tab.farkas_certificate();
        return finish_certificate(p, &a, &b, cert, tol);
    }
    let x = tab.refined_solution(tol);
    check_witness(&a, &b, &x, tol)?;
    if !p.require_strict {
        return Ok(FeasibilityOutcome::Feasible {
            witness: x,
            margin: None,
        });
    }
    match max_margin(&a, &b, tol)? {
        Some((xs, delta)) if delta > tol.strict_margin => Ok(FeasibilityOutcome::Feasible {
            witness: xs,
            margin: Some(delta),
        }),
        Some((_, delta)) => Ok(FeasibilityOutcome::NotStrictlyFeasible {
            witness: x,
            margin: delta.max(T::zero()),
        }),
        None => Ok(FeasibilityOutcome::NotStrictlyFeasible {
            witness: x,
            margin: T::zero(),
        }),
    }
}

/// Maximizes `δ ∈ [0, 1]` subject to `A(z + δ·1) = b`, `z ≥ 0`.
fn max_margin<T: Real>(a: &Matrix<T>, b: &[T], tol: &Tolerances<T>) -> Result<Option<(Vec<T>, T)>> {
    let (k, m) = a.shape();
    let ones = vec![T::one(); m];
    let a1 = a.mul_vec(&ones);
    let mut rows = Vec::with_capacity(k + 1);
    for (i, &s) in a1.iter().enumerate() {
        let mut r = a.row(i).to_vec();
        r.push(s);
        r.push(T::zero());
        rows.push(r);
    }
    let mut cap = vec![T::zero(); m + 2];
    cap[m] = T::one();
    cap[m + 1] = T::one();
    rows.push(cap);
    let mut bb = b.to_vec();
    bb.push(T::one());
    let aa = Matrix::from_rows(&rows)?;

    let mut tab = Tableau::new(&aa, &bb, tol);
    let w = tab.phase_one()?;
    if w > tol.lp_feasibility * (T::one() + max_abs(&tab.b_internal)) {
        return Ok(None);
    }
    tab.drive_out_artificials();
    let mut cost = vec![T::zero(); m + 2];
    cost[m] = -T::one();
    tab.phase_two(&cost)?;
    let sol = tab.refined_solution(tol);
    let delta = sol[m];
    let x: Vec<T> = sol[..m].iter().map(|&z| z + delta).collect();
    if check_witness(a, b, &x, tol).is_err() {
        return Ok(None);
    }
    Ok(Some((x, delta)))
}

fn check_witness<T: Real>(a: &Matrix<T>, b: &[T], x: &[T], tol: &Tolerances<T>) -> Result<()> {
    if x.iter().any(|&v| v < T::zero() || !v.is_finite()) {
        return Err(Error::Numeric("LP witness has a negative entry".into()));
    }
    let ax = a.mul_vec(x);
    let resid = ax
        .iter()
        .zip(b)
        .fold(T::zero(), |acc, (&l, &r)| acc.max((l - r).abs()));
    let bound = tol.lp_residual * (T::one() + max_abs(b)) * a.max_abs().max(T::one());
    if resid > bound {
        return Err(Error::Numeric(format!(
            "LP witness residual {} exceeds {}",
            resid, bound
        )));
    }
    Ok(())
}

fn finish_certificate<T: Real>(
    p: &FeasibilityProblem<T>,
    a: &Matrix<T>,
    b: &[T],
    cert: Vec<T>,
    tol: &Tolerances<T>,
) -> Result<FeasibilityOutcome<T>> {
    let aty = a.tr_mul_vec(&cert);
    let scale = max_abs(&cert).max(T::min_positive_value());
    if p.is_homogeneous() {
        let k = p.a.rows();
        let y: Vec<T> = cert[..k].iter().map(|&v| v / scale).collect();
        let margin = p.a.tr_mul_vec(&y).into_iter().fold(T::infinity(), T::min);
        if !(margin > T::zero()) {
            return Err(Error::Numeric(
                "phase-one certificate is not strictly separating".into(),
            ));
        }
        return Ok(FeasibilityOutcome::Infeasible { certificate: y });
    }
    let y: Vec<T> = cert.iter().map(|&v| v / scale).collect();
    let by = dot(b, &y);
    let worst = aty.iter().fold(T::infinity(), |acc, &v| acc.min(v / scale));
    let slack = tol.lp_feasibility * a.max_abs().max(T::one());
    if !(by < T::zero()) || worst < -slack {
        return Err(Error::Numeric("phase-one certificate fails the Farkas test".into()));
    }
    Ok(FeasibilityOutcome::Infeasible { certificate: y })
}

/// Dense simplex tableau over `[structural | artificial | rhs]`.
struct Tableau<T> {
    rows: usize,
    n_struct: usize,
    width: usize,
    t: Vec<T>,
    obj: Vec<T>,
    basis: Vec<usize>,
    /// Internal row `r` is `row_factor[r]` times original row `r`.
    row_factor: Vec<T>,
    b_internal: Vec<T>,
    a_internal: Matrix<T>,
    pivot_tol: T,
    cost_tol: T,
    limit: usize,
}

impl<T: Real> Tableau<T> {
    fn new(a: &Matrix<T>, b: &[T], tol: &Tolerances<T>) -> Self {
        let (rows, n_struct) = a.shape();
        let cols = n_struct + rows;
        let width = cols + 1;
        let mut t = vec![T::zero(); rows * width];
        let mut row_factor = Vec::with_capacity(rows);
        let mut b_internal = Vec::with_capacity(rows);
        let mut a_rows = Vec::with_capacity(rows);
        // rows at rounding-noise level keep their size relative to the
        // whole matrix; equilibrating them would turn noise into constraints
        let gmax = a.max_abs();
        for r in 0..rows {
            let amax = max_abs(a.row(r));
            let amax = if amax > tol.rank * gmax { amax } else { gmax };
            let mut f = if amax > T::zero() { T::one() / amax } else { T::one() };
            if b[r] < T::zero() {
                f = -f;
            }
            row_factor.push(f);
            let row: Vec<T> = a.row(r).iter().map(|&v| v * f).collect();
            t[r * width..r * width + n_struct].copy_from_slice(&row);
            t[r * width + n_struct + r] = T::one();
            t[r * width + cols] = b[r] * f;
            b_internal.push(b[r] * f);
            a_rows.push(row);
        }
        let a_internal = Matrix::from_rows(&a_rows).expect("finite tableau rows");
        Self {
            rows,
            n_struct,
            width,
            t,
            obj: vec![T::zero(); width],
            basis: (n_struct..cols).collect(),
            row_factor,
            b_internal,
            a_internal,
            pivot_tol: T::tol(1e-11),
            cost_tol: T::tol(1e-11).max(tol.sign_zero),
            limit: 50 * (rows + cols),
        }
    }

    fn at(&self, r: usize, c: usize) -> T {
        self.t[r * self.width + c]
    }

    fn rhs(&self, r: usize) -> T {
        self.at(r, self.width - 1)
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.n_struct
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let p = self.t[r * w + e];
        for c in 0..w {
            self.t[r * w + c] /= p;
        }
        self.t[r * w + e] = T::one();
        let pivot_row: Vec<T> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + e];
            if f == T::zero() {
                continue;
            }
            for c in 0..w {
                self.t[i * w + c] -= f * pivot_row[c];
            }
            self.t[i * w + e] = T::zero();
        }
        let f = self.obj[e];
        if f != T::zero() {
            for c in 0..w {
                self.obj[c] -= f * pivot_row[c];
            }
            self.obj[e] = T::zero();
        }
        self.basis[r] = e;
    }

    /// Recomputes the reduced-cost row for costs on the structural columns
    /// (artificial costs given separately).
    fn set_objective(&mut self, cost: &[T], artificial_cost: T) {
        let w = self.width;
        let cost_of = |j: usize| {
            if j < self.n_struct {
                cost[j]
            } else if j < w - 1 {
                artificial_cost
            } else {
                T::zero()
            }
        };
        let mut obj: Vec<T> = (0..w).map(cost_of).collect();
        for r in 0..self.rows {
            let cb = cost_of(self.basis[r]);
            if cb == T::zero() {
                continue;
            }
            for c in 0..w {
                obj[c] -= cb * self.at(r, c);
            }
        }
        self.obj = obj;
    }

    /// Bland's-rule simplex on the current objective. Artificial columns never enter.
    fn iterate(&mut self) -> Result<()> {
        let w = self.width;
        for _ in 0..self.limit {
            let entering = (0..self.n_struct).find(|&j| self.obj[j] < -self.cost_tol);
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let a = self.at(r, e);
                if a <= self.pivot_tol {
                    continue;
                }
                let ratio = self.rhs(r).max(T::zero()) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        let tie = (ratio - best).abs() <= T::epsilon() * T::lit(16.0) * (T::one() + best);
                        if ratio < best && !tie {
                            Some((r, ratio))
                        } else if tie && self.basis[r] < self.basis[br] {
                            Some((r, ratio.min(best)))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                // Unbounded direction; every caller bounds its objective.
                return Err(Error::Numeric("LP objective unbounded".into()));
            };
            self.pivot(r, e);
            debug_assert_eq!(self.obj.len(), w);
        }
        Err(Error::IterationLimit { limit: self.limit })
    }

    /// Minimizes the sum of artificials; returns the optimal value.
    fn phase_one(&mut self) -> Result<T> {
        let zeros = vec![T::zero(); self.n_struct];
        self.set_objective(&zeros, T::one());
        self.iterate()?;
        Ok((0..self.rows)
            .filter(|&r| self.is_artificial(self.basis[r]))
            .map(|r| self.rhs(r).max(T::zero()))
            .sum())
    }

    fn phase_two(&mut self, cost: &[T]) -> Result<()> {
        self.set_objective(cost, T::zero());
        self.iterate()
    }

    /// Pivots basic artificials out wherever a structural entry allows it.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            let best = (0..self.n_struct)
                .map(|j| (j, self.at(r, j).abs()))
                .filter(|&(_, v)| v > self.pivot_tol)
                .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
            if let Some((j, _)) = best {
                self.pivot(r, j);
            }
        }
    }

    /// Row `i` of `B⁻¹` sits in the artificial block of tableau row `i`.
    fn basis_inverse(&self, i: usize, r: usize) -> T {
        self.at(i, self.n_struct + r)
    }

    fn raw_solution(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.n_struct];
        for r in 0..self.rows {
            let j = self.basis[r];
            if j < self.n_struct {
                x[j] = self.rhs(r);
            }
        }
        x
    }

    /// Basic solution with two steps of iterative refinement, clamped to `x ≥ 0`.
    fn refined_solution(&self, tol: &Tolerances<T>) -> Vec<T> {
        let mut x = self.raw_solution();
        for _ in 0..2 {
            let ax = self.a_internal.mul_vec(&x);
            let resid: Vec<T> = self.b_internal.iter().zip(&ax).map(|(&b, &v)| b - v).collect();
            for i in 0..self.rows {
                let j = self.basis[i];
                if j >= self.n_struct {
                    continue;
                }
                let corr: T = (0..self.rows).map(|r| self.basis_inverse(i, r) * resid[r]).sum();
                x[j] += corr;
            }
        }
        let clamp = tol.clamp;
        for v in &mut x {
            if *v < T::zero() && *v >= -clamp * T::lit(1e3) {
                *v = T::zero();
            }
        }
        x
    }

    /// Phase-one duals mapped back to the caller's rows, oriented so that
    /// `Aᵀy ≥ 0` and `bᵀy < 0`.
    fn farkas_certificate(&self) -> Vec<T> {
        let mut y = vec![T::zero(); self.rows];
        for i in 0..self.rows {
            if !self.is_artificial(self.basis[i]) {
                continue;
            }
            for (r, yr) in y.iter_mut().enumerate() {
                *yr += self.basis_inverse(i, r);
            }
        }
        y.iter()
            .zip(&self.row_factor)
            .map(|(&v, &f)| -v * f)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn orthonormal_basis_scales_uniformly() {
        // reduced diagram matrix of {(1,0),(0,1)}
        let p = FeasibilityProblem::homogeneous(m(&[&[1.0, -1.0], &[0.0, 0.0]]), false);
        let out = solve_feasibility(&p, &tol()).unwrap();
        let x = out.witness().unwrap();
        assert_abs_diff_eq!(x[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn first_quadrant_frame_is_infeasible_with_certificate() {
        // reduced diagram matrix of columns (2,1), (1,2), (1,1)
        let a = m(&[&[3.0, -3.0, 0.0], &[4.0, 4.0, 2.0]]);
        let p = FeasibilityProblem::homogeneous(a.clone(), false);
        let out = solve_feasibility(&p, &tol()).unwrap();
        let y = out.certificate().expect("certificate");
        assert!(a.tr_mul_vec(y).iter().all(|&v| v > 0.0));
    }

    #[test]
    fn dual_scaling_system() {
        let a = m(&[&[4.0, 1.0, 1.0], &[1.0, 4.0, 1.0], &[2.0, 2.0, 1.0]]);
        let p = FeasibilityProblem::new(a, vec![61.0, 61.0, 60.0], false).unwrap();
        let out = solve_feasibility(&p, &tol()).unwrap();
        let x = out.witness().unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x[2], 56.0, epsilon = 1e-9);
    }

    #[test]
    fn general_certificate_is_farkas() {
        // x1 + x2 = 1 and x1 + x2 = 4 cannot both hold
        let a = m(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let b = vec![1.0, 4.0];
        let p = FeasibilityProblem::new(a.clone(), b.clone(), false).unwrap();
        let y = solve_feasibility(&p, &tol()).unwrap().certificate().unwrap().to_vec();
        assert!(a.tr_mul_vec(&y).iter().all(|&v| v >= -1e-12));
        assert!(dot(&b, &y) < 0.0);
    }

    #[test]
    fn negative_rhs_is_handled() {
        let a = m(&[&[-1.0, -2.0]]);
        let p = FeasibilityProblem::new(a, vec![-4.0], false).unwrap();
        let out = solve_feasibility(&p, &tol()).unwrap();
        let x = out.witness().unwrap();
        assert_abs_diff_eq!(x[0] + 2.0 * x[1], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn noise_rows_are_not_amplified() {
        // second row is rounding noise from cos(π/2)
        let a = m(&[&[1.0, 1.0, -1.0], &[0.0, 0.0, 1.2246467991473532e-16]]);
        let out = solve_feasibility(&FeasibilityProblem::homogeneous(a, false), &tol()).unwrap();
        assert!(out.is_feasible());
    }

    #[test]
    fn strict_margin_is_maximized() {
        // x1 − x2 = 0, normalized: only (1/2, 1/2)
        let p = FeasibilityProblem::homogeneous(m(&[&[1.0, -1.0]]), true);
        let out = solve_feasibility(&p, &tol()).unwrap();
        assert!(out.is_feasible());
        assert_abs_diff_eq!(out.margin().unwrap(), 0.5, epsilon = 1e-12);

        // x1 = 0 forced: feasible only on the boundary
        let p = FeasibilityProblem::homogeneous(m(&[&[1.0, 0.0]]), true);
        let out = solve_feasibility(&p, &tol()).unwrap();
        assert!(matches!(out, FeasibilityOutcome::NotStrictlyFeasible { .. }));
        assert_eq!(out.status(), FeasibilityStatus::Infeasible);
        assert!(out.witness().is_some() && out.certificate().is_none());
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        let a = m(&[&[1.0, -1.0, 0.0], &[2.0, -2.0, 0.0], &[0.0, 0.0, 0.0], &[1.0, -1.0, 0.0]]);
        let p = FeasibilityProblem::homogeneous(a.clone(), true);
        let out = solve_feasibility(&p, &tol()).unwrap();
        let x = out.witness().unwrap();
        assert!(out.is_feasible());
        assert!(a.mul_vec(x).iter().all(|v| v.abs() < 1e-12));
        assert_abs_diff_eq!(x.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(
            FeasibilityProblem::new(m(&[&[1.0]]), vec![1.0, 2.0], false),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
