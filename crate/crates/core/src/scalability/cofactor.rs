use super::{lp_certificate, require_dim, scalable, Method, ScalingResult};
use crate::diagram::reduced_diagram_matrix;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::numerics::{cofactor_row, independent_rows, rank, Matrix};
use crate::scalar::{Real, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    AllNonneg,
    AllNonpos,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CofactorReport<T> {
    pub corank: usize,
    /// Rows of `θ̃` used as `R_1, …, R_{m−1}`.
    pub rows: Vec<usize>,
    pub cofactor_vector: Vec<T>,
    pub sign_class: SignClass,
}

/// Classifies signs, treating entries within `rel·Σ|v|` of zero as zero.
pub(crate) fn sign_class<T: Real>(v: &[T], rel: T) -> SignClass {
    let scale: T = v.iter().map(|x| x.abs()).sum();
    let thr = rel * scale;
    if v.iter().all(|&x| x >= -thr) {
        SignClass::AllNonneg
    } else if v.iter().all(|&x| x <= thr) {
        SignClass::AllNonpos
    } else {
        SignClass::Mixed
    }
}

/// Picks `needed` independent rows of `θ̃` or reports the measured corank.
pub(crate) fn kernel_rows<T: Real>(
    theta: &Matrix<T>,
    expected_corank: usize,
    tol: &Tolerances<T>,
) -> Result<Vec<usize>> {
    let m = theta.cols();
    let r = rank(theta, tol.rank)?;
    if r + expected_corank != m {
        return Err(Error::CorankMismatch {
            expected: expected_corank,
            found: m - r,
        });
    }
    let rows = independent_rows(theta, tol.rank);
    if rows.len() != r {
        return Err(Error::Numeric(format!(
            "row selection found {} independent rows, rank is {r}",
            rows.len()
        )));
    }
    Ok(rows)
}

/// Cofactors of a symbolic first row `E` above the given rows.
pub(crate) fn symbolic_cofactors<T: Real>(rows: &[Vec<T>]) -> Vec<T> {
    let m = rows.len() + 1;
    let mut full = vec![vec![T::zero(); m]];
    full.extend(rows.iter().cloned());
    let mat = Matrix::from_rows(&full).expect("finite rows");
    cofactor_row(&mat, 0)
}

/// Scaling for a frame whose reduced diagram matrix has a one-dimensional kernel.
///
/// The kernel is spanned by the cofactors of a symbolic row stacked on
/// `m − 1` independent rows of `θ̃`; the frame is scalable exactly when they
/// share a sign.
pub fn cofactor_scaling<T: Real>(
    frame: &Frame<T>,
    tol: &Tolerances<T>,
) -> Result<(CofactorReport<T>, ScalingResult<T>)> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    let rows = kernel_rows(&theta, 1, tol)?;
    let stacked: Vec<Vec<T>> = rows.iter().map(|&i| theta.row(i).to_vec()).collect();
    let cof = symbolic_cofactors(&stacked);
    let class = sign_class(&cof, tol.strict_margin);
    let result = match class {
        SignClass::AllNonneg => scalable(frame, &theta, cof.clone(), Method::Cofactor, tol)?,
        SignClass::AllNonpos => {
            let c = cof.iter().map(|&v| -v).collect();
            scalable(frame, &theta, c, Method::Cofactor, tol)?
        }
        SignClass::Mixed => lp_certificate(&theta, Method::Cofactor, tol)?,
    };
    let report = CofactorReport {
        corank: 1,
        rows,
        cofactor_vector: cof,
        sign_class: class,
    };
    Ok((report, result))
}
