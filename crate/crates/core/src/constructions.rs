//! Named frames used in examples and tests.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::numerics::Matrix;
use crate::scalar::Real;

/// Unit vectors `(cos t_i, sin t_i)` in the plane, angles in radians.
pub fn angle_frame<T: Real>(angles: &[T]) -> Result<Frame<T>> {
    let v: Vec<Vec<T>> = angles.iter().map(|&t| vec![t.cos(), t.sin()]).collect();
    Frame::new(&v)
}

/// Three unit vectors at 120° spacing.
pub fn mercedes_benz<T: Real>() -> Frame<T> {
    let step = T::lit(2.0 * std::f64::consts::PI / 3.0);
    angle_frame(&[T::zero(), step, step + step]).expect("spans the plane")
}

/// The ±1 Sylvester Hadamard matrix of a power-of-two order.
pub fn sylvester_hadamard<T: Real>(order: usize) -> Result<Matrix<T>> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::NoHadamardAvailable { order });
    }
    let mut h = Matrix::from_diagonal(&[T::one()]);
    while h.rows() < order {
        let k = h.rows();
        let mut next = Matrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                let v = h[(i, j)];
                next[(i, j)] = v;
                next[(i, j + k)] = v;
                next[(i + k, j)] = v;
                next[(i + k, j + k)] = -v;
            }
        }
        h = next;
    }
    Ok(h)
}

/// Sylvester Hadamard matrix scaled by `1/√order`, so that it is orthogonal.
pub fn unitary_hadamard<T: Real>(order: usize) -> Result<Matrix<T>> {
    let h = sylvester_hadamard::<T>(order)?;
    Ok(h.scale(T::one() / T::lit(order as f64).sqrt()))
}

/// Frame whose synthesis matrix is a ±1 Hadamard matrix with its last row doubled.
///
/// Every synthesis row squares to a constant vector, and the last one to four
/// times the others, so no weights normalize all rows at once.
pub fn hadamard_doubled<T: Real>(n: usize) -> Result<Frame<T>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let mut h = sylvester_hadamard::<T>(n)?;
    for j in 0..n {
        h[(n - 1, j)] *= T::lit(2.0);
    }
    Frame::from_synthesis(h)
}

/// A scalable frame whose canonical dual is not scalable.
///
/// With `x_i` the rows of a unitary Hadamard matrix of order `n`, the frame
/// is `{x_i} ∪ {y_i}` where `y_i` is `x_i` with its last two coordinates
/// multiplied by 2 and 3. Its frame operator is `diag(2, …, 2, 5, 10)`.
pub fn p1_counterexample<T: Real>(n: usize) -> Result<Frame<T>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let h = unitary_hadamard::<T>(n)?;
    let mut vectors = h.to_rows();
    for i in 0..n {
        let mut y = h.row(i).to_vec();
        y[n - 2] *= T::lit(2.0);
        y[n - 1] *= T::lit(3.0);
        vectors.push(y);
    }
    Frame::new(&vectors)
}
