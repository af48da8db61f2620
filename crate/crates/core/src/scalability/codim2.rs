use super::cofactor::{kernel_rows, symbolic_cofactors};
use super::{lp_certificate, require_dim, scalable, Method, ScalingResult};
use crate::diagram::reduced_diagram_matrix;
use crate::error::{mismatch, Error, Result};
use crate::frame::Frame;
use crate::numerics::{rank, Matrix};
use crate::scalar::{Real, Tolerances};

/// The two cofactor vectors spanning a two-dimensional kernel of `θ̃`.
///
/// `ξ_k` holds the cofactors of a symbolic first row in `(E; w_k; R_1; …; R_{m−2})`,
/// so the cofactors for the completion row `cos t·w_1 + sin t·w_2` are
/// `A(t) = cos t·ξ_1 + sin t·ξ_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Codim2Pencil<T> {
    pub rows: Vec<usize>,
    pub w1: Vec<T>,
    pub w2: Vec<T>,
    pub xi1: Vec<T>,
    pub xi2: Vec<T>,
}

impl<T: Real> Codim2Pencil<T> {
    pub fn at(&self, t: T) -> Vec<T> {
        self.direction(t.cos(), t.sin())
    }

    fn direction(&self, u: T, v: T) -> Vec<T> {
        self.xi1
            .iter()
            .zip(&self.xi2)
            .map(|(&p, &q)| p * u + q * v)
            .collect()
    }
}

fn stacked_rank<T: Real>(rows: &[Vec<T>], tol: &Tolerances<T>) -> Result<usize> {
    rank(&Matrix::from_rows(rows)?, tol.rank)
}

/// Builds the pencil. Without explicit completion vectors, standard basis
/// vectors are taken greedily in ascending index order.
pub fn codim2_pencil<T: Real>(
    frame: &Frame<T>,
    completion: Option<(Vec<T>, Vec<T>)>,
    tol: &Tolerances<T>,
) -> Result<Codim2Pencil<T>> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    pencil_for(&theta, completion, tol)
}

fn pencil_for<T: Real>(
    theta: &Matrix<T>,
    completion: Option<(Vec<T>, Vec<T>)>,
    tol: &Tolerances<T>,
) -> Result<Codim2Pencil<T>> {
    let m = theta.cols();
    let rows = kernel_rows(theta, 2, tol)?;
    let base: Vec<Vec<T>> = rows.iter().map(|&i| theta.row(i).to_vec()).collect();
    let (w1, w2) = match completion {
        Some((w1, w2)) => {
            for w in [&w1, &w2] {
                if w.len() != m {
                    return Err(mismatch(m, w.len()));
                }
            }
            let mut all = base.clone();
            all.push(w1.clone());
            all.push(w2.clone());
            if stacked_rank(&all, tol)? != m {
                return Err(Error::DependentCompletion);
            }
            (w1, w2)
        }
        None => {
            let mut all = base.clone();
            let mut picked = Vec::new();
            for i in 0..m {
                let mut e = vec![T::zero(); m];
                e[i] = T::one();
                all.push(e.clone());
                if stacked_rank(&all, tol)? == all.len() {
                    picked.push(e);
                    if picked.len() == 2 {
                        break;
                    }
                } else {
                    all.pop();
                }
            }
            let w2 = picked.pop().ok_or(Error::DependentCompletion)?;
            let w1 = picked.pop().ok_or(Error::DependentCompletion)?;
            (w1, w2)
        }
    };
    let with = |w: &Vec<T>| {
        let mut r = vec![w.clone()];
        r.extend(base.iter().cloned());
        symbolic_cofactors(&r)
    };
    let xi1 = with(&w1);
    let xi2 = with(&w2);
    Ok(Codim2Pencil {
        rows,
        w1,
        w2,
        xi1,
        xi2,
    })
}

/// Smallest normalized `A_j` in direction `d`, over the nonzero normals.
fn score<T: Real>(normals: &[(T, T, T)], d: (T, T)) -> T {
    normals
        .iter()
        .map(|&(p, q, len)| (p * d.0 + q * d.1) / len)
        .fold(T::infinity(), T::min)
}

/// Direction `(cos t, sin t)` maximizing `min_j A_j(t)/‖(p_j, q_j)‖`.
///
/// Each constraint `A_j(t) ≥ 0` is a closed half-circle of directions. Their
/// intersection is an arc whose end points are perpendiculars of some
/// normals, and the best direction in it is the bisector of its end points
/// (or a normal itself when the arc is a half-circle). Checking those
/// finitely many candidates decides the problem exactly.
fn best_direction<T: Real>(p: &[T], q: &[T]) -> Option<((T, T), T)> {
    let normals: Vec<(T, T, T)> = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| (a, b, a.hypot(b)))
        .filter(|&(_, _, len)| len > T::zero())
        .collect();
    if normals.is_empty() {
        return None;
    }
    let scale = normals.iter().map(|n| n.2).fold(T::zero(), T::max);
    let mut candidates: Vec<(T, T)> = Vec::new();
    for &(a, b, len) in &normals {
        if len <= scale * T::epsilon() {
            continue;
        }
        let (u, v) = (a / len, b / len);
        candidates.push((u, v));
        candidates.push((-v, u));
        candidates.push((v, -u));
    }
    let slack = T::lit(1e3) * T::epsilon();
    let boundary: Vec<(T, T)> = candidates
        .iter()
        .copied()
        .filter(|&d| score(&normals, d) >= -slack)
        .collect();
    for i in 0..boundary.len() {
        for j in i + 1..boundary.len() {
            let (u, v) = (boundary[i].0 + boundary[j].0, boundary[i].1 + boundary[j].1);
            let len = u.hypot(v);
            if len > T::lit(1e-6) {
                candidates.push((u / len, v / len));
            }
        }
    }
    candidates
        .into_iter()
        .map(|d| (d, score(&normals, d)))
        .fold(None, |best: Option<((T, T), T)>, cand| match best {
            Some(b) if b.1 >= cand.1 => Some(b),
            _ => Some(cand),
        })
}

/// Scaling for a frame whose reduced diagram matrix has a two-dimensional kernel.
///
/// Every kernel vector is a positive multiple of `A(t)` for some `t`, so the
/// frame is scalable exactly when some direction makes all `A_j(t) ≥ 0`. An
/// all-nonpositive `A(t)` is the same as all-nonnegative `A(t + π)`.
pub fn codim2_scaling<T: Real>(frame: &Frame<T>, tol: &Tolerances<T>) -> Result<ScalingResult<T>> {
    require_dim(frame)?;
    let theta = reduced_diagram_matrix(frame)?.into_matrix();
    let pencil = pencil_for(&theta, None, tol)?;
    let Some(((u, v), best)) = best_direction(&pencil.xi1, &pencil.xi2) else {
        return Err(Error::Numeric("cofactor pencil vanishes".into()));
    };
    if best < -tol.lp_feasibility {
        return lp_certificate(&theta, Method::Codim2, tol);
    }
    scalable(frame, &theta, pencil.direction(u, v), Method::Codim2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalability::{hull_certificate_check, Verdict};
    use std::f64::consts::PI;

    fn angles(deg: &[f64]) -> Frame<f64> {
        let v: Vec<Vec<f64>> = deg
            .iter()
            .map(|d| vec![d.to_radians().cos(), d.to_radians().sin()])
            .collect();
        Frame::new(&v).unwrap()
    }

    fn e(i: usize) -> Vec<f64> {
        let mut v = vec![0.0; 4];
        v[i] = 1.0;
        v
    }

    #[test]
    fn pencil_matches_closed_form() {
        let (a, b, g) = (30f64.to_radians(), 100f64.to_radians(), 110f64.to_radians());
        let f = angles(&[0.0, 30.0, 100.0, 110.0]);
        let pencil = codim2_pencil(&f, Some((e(2), e(3))), &Tolerances::default()).unwrap();
        for k in 0..8 {
            let t = k as f64 * PI / 4.0 + 0.1;
            let want = [
                t.sin() * (2.0 * b - 2.0 * a).sin() + t.cos() * (2.0 * a - 2.0 * g).sin(),
                t.cos() * (2.0 * g).sin() - t.sin() * (2.0 * b).sin(),
                t.sin() * (2.0 * a).sin(),
                -t.cos() * (2.0 * a).sin(),
            ];
            for (got, w) in pencil.at(t).iter().zip(want) {
                assert!((got - w).abs() < 1e-12, "t={t}: {got} vs {w}");
            }
        }
        let at = pencil.at(0.75 * PI);
        assert!(at[2] > 0.0 && at[3] > 0.0);
    }

    #[test]
    fn strictly_scalable_example() {
        let f = angles(&[0.0, 30.0, 100.0, 110.0]);
        let r = codim2_scaling(&f, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::StrictlyScalable);
        assert_eq!(r.method, Method::Codim2);
        let scaled = r.scaled(&f).unwrap().unwrap();
        assert!(scaled.tightness(1e-8).is_tight());
    }

    #[test]
    fn open_quadrant_is_not_scalable() {
        let f = angles(&[10.0, 25.0, 50.0, 80.0]);
        let r = codim2_scaling(&f, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotScalable);
        assert!(hull_certificate_check(&f, r.certificate_y.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn boundary_case_is_scalable_not_strictly() {
        // 0° and 90° form a basis; 20° and 40° can only get zero weight
        let f = angles(&[0.0, 20.0, 40.0, 90.0]);
        let r = codim2_scaling(&f, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Scalable);
        assert_eq!(r.zero_indices, vec![1, 2]);
    }

    #[test]
    fn rejects_wrong_corank_and_dependent_completion() {
        let tol = Tolerances::default();
        assert_eq!(
            codim2_scaling(&angles(&[0.0, 60.0, 120.0]), &tol).unwrap_err(),
            Error::CorankMismatch { expected: 2, found: 1 }
        );
        let f = angles(&[0.0, 30.0, 100.0, 110.0]);
        assert_eq!(
            codim2_pencil(&f, Some((e(2), e(2))), &tol).unwrap_err(),
            Error::DependentCompletion
        );
    }

    #[test]
    fn best_direction_matches_grid_search() {
        let p: [f64; 4] = [1.0, 0.5, 1.0, 0.0];
        let q = [0.2, 1.0, -0.3, 0.0];
        let normals: Vec<(f64, f64, f64)> = (0..3).map(|j| (p[j], q[j], p[j].hypot(q[j]))).collect();
        let ((u, v), s) = best_direction(&p, &q).unwrap();
        let brute = (0..100_000)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 100_000.0;
                score(&normals, (t.cos(), t.sin()))
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(s > 0.0);
        assert!(s >= brute - 1e-12 && s - brute < 1e-4);
        assert!((u * u + v * v - 1.0).abs() < 1e-12);

        // opposite normals: only the common perpendicular survives
        let ((_, _), s) = best_direction(&[1.0f64, -1.0], &[0.0, 0.0]).unwrap();
        assert!(s.abs() < 1e-15);
        let ((_, _), s) = best_direction(&[1.0, -1.0, 0.0], &[0.0, -0.1, 1.0]).unwrap();
        assert!(s < 0.0);
    }
}
