use crate::numerics::Matrix;
use crate::scalar::Real;

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<T: Real>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().partial_cmp(&a[(j, col)].abs()).unwrap())
            .unwrap();
        if a[(pivot, col)] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = tmp;
            }
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        for i in col + 1..n {
            let f = a[(i, col)] / p;
            if f == T::zero() {
                continue;
            }
            for j in col..n {
                let v = a[(col, j)];
                a[(i, j)] -= f * v;
            }
        }
    }
    det
}

/// Cofactors `(−1)^{row+j}·minor(row, j)` along one row of a square matrix.
pub fn cofactor_row<T: Real>(m: &Matrix<T>, row: usize) -> Vec<T> {
    assert!(m.is_square(), "cofactors of a non-square matrix");
    let n = m.rows();
    if n == 1 {
        return vec![T::one()];
    }
    let other_rows: Vec<usize> = (0..n).filter(|&i| i != row).collect();
    (0..n)
        .map(|j| {
            let other_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = m.select_rows(&other_rows).select_columns(&other_cols);
            let d = determinant(&minor);
            if (row + j).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}
