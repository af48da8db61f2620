#![allow(dead_code)]

use framescale::{Frame, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // Box-Muller, keeps the dev-dependency list short
    (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(f64::EPSILON..1.0);
            let v: f64 = rng.random();
            (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
        })
        .collect()
}

pub fn unit_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

pub fn random_frame(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Frame<f64> {
    loop {
        let v: Vec<Vec<f64>> = (0..m).map(|_| gaussian_vec(rng, n)).collect();
        if let Ok(f) = Frame::new(&v) {
            return f;
        }
    }
}

pub fn random_unit_frame(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Frame<f64> {
    loop {
        let v: Vec<Vec<f64>> = (0..m).map(|_| unit_vec(rng, n)).collect();
        if let Ok(f) = Frame::new(&v) {
            return f;
        }
    }
}

/// A scalable frame with known Parseval weights: `S^{-1/2}X` is Parseval,
/// so dividing its columns by `a_i` gives a frame scaled to Parseval by `a`.
pub fn scalable_frame(rng: &mut ChaCha8Rng, n: usize, m: usize) -> (Frame<f64>, Vec<f64>) {
    let f = random_frame(rng, n, m);
    let p = &f.operator().unwrap().inverse_sqrt() * f.synthesis();
    let a: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..2.0)).collect();
    let cols: Vec<Vec<f64>> = (0..m)
        .map(|i| p.column(i).into_iter().map(|x| x / a[i]).collect())
        .collect();
    (Frame::from_synthesis(Matrix::from_columns(&cols).unwrap()).unwrap(), a)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<f64> {
    let r: Vec<Vec<f64>> = (0..rows).map(|_| gaussian_vec(rng, cols)).collect();
    Matrix::from_rows(&r).unwrap()
}
