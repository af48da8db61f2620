//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Oracles here are computed directly from the vectors (explicit frame
//! operators, hand-written diagram coordinates, angle bookkeeping) rather
//! than through the library routines being judged.

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use framescale::constructions::{angle_frame, hadamard_doubled, mercedes_benz, p1_counterexample, sylvester_hadamard};
use framescale::{
    alternate_dual_from_scaling, apply_scaling, canonical_dual, canonical_dual_scalable, codim2_pencil,
    codim2_scaling, cofactor_scaling, decide_scalable, diagram_inner_identity_check, diagram_vector,
    find_v_element, find_w_element, frame_potential, hull_certificate_check, intersection_scalability, is_dual,
    is_in_v, DiagramKind, Frame, Matrix, Tolerances, Verdict,
};
use framescale_cli::{analyze, AnalyzeOptions, FrameDocument};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian(rng, n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn random_frame(rng: &mut ChaCha8Rng, n: usize, m: usize, unit_norm: bool) -> Frame<f64> {
    loop {
        let v: Vec<Vec<f64>> = (0..m)
            .map(|_| if unit_norm { unit(rng, n) } else { gaussian(rng, n) })
            .collect();
        if let Ok(f) = Frame::new(&v) {
            return f;
        }
    }
}

fn angles_rad(t: &[f64]) -> Frame<f64> {
    angle_frame(t).expect("spanning angle frame")
}

fn deg(d: &[f64]) -> Frame<f64> {
    angles_rad(&d.iter().map(|x| x.to_radians()).collect::<Vec<_>>())
}

/// `Σ c_i x_i x_iᵀ` as nested vectors.
fn operator(vectors: &[Vec<f64>], c: &[f64]) -> Vec<Vec<f64>> {
    let n = vectors[0].len();
    let mut s = vec![vec![0.0; n]; n];
    for (x, &w) in vectors.iter().zip(c) {
        for i in 0..n {
            for j in 0..n {
                s[i][j] += w * x[i] * x[j];
            }
        }
    }
    s
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

/// Tight with some bound: `‖S − (tr S / n) I‖_max ≤ rel · tr S`.
fn is_tight_direct(vectors: &[Vec<f64>], c: &[f64], rel: f64) -> bool {
    let s = operator(vectors, c);
    let n = s.len();
    let tr: f64 = (0..n).map(|i| s[i][i]).sum();
    let mean = tr / n as f64;
    tr > 0.0
        && (0..n).all(|i| (0..n).all(|j| (s[i][j] - if i == j { mean } else { 0.0 }).abs() <= rel * tr))
}

/// Reduced diagram coordinates of a planar vector, written out by hand.
fn planar_diagram(x: &[f64]) -> [f64; 2] {
    [x[0] * x[0] - x[1] * x[1], 2.0 * x[0] * x[1]]
}

// 1 -----------------------------------------------------------------------

fn c1() -> Check {
    let f = Frame::from_synthesis(Matrix::from_rows(&[vec![2.0, 1.0, 1.0], vec![1.0, 2.0, 1.0]]).unwrap()).unwrap();
    let op = f.operator().map_err(|e| e.to_string())?;
    let s_want: [[f64; 2]; 2] = [[6.0, 5.0], [5.0, 6.0]];
    let inv_want: [[f64; 2]; 2] = [[6.0 / 11.0, -5.0 / 11.0], [-5.0 / 11.0, 6.0 / 11.0]];
    let inv = op.inverse();
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((op.operator[(i, j)] - s_want[i][j]).abs());
            worst = worst.max((inv[(i, j)] - inv_want[i][j]).abs());
        }
    }
    let dual = canonical_dual(&f, &tol()).map_err(|e| e.to_string())?;
    let d_want = [[7.0, -4.0, 1.0], [-4.0, 7.0, 1.0]];
    for i in 0..2 {
        for j in 0..3 {
            worst = worst.max((dual.dual.synthesis()[(i, j)] - d_want[i][j] / 11.0).abs());
        }
    }
    ensure!(worst <= 1e-12, "max entry error {worst:e}");
    Ok(format!("max entry error {worst:.1e}"))
}

// 2 -----------------------------------------------------------------------

fn c2() -> Check {
    let f = Frame::new(&[vec![2.0, 1.0], vec![1.0, 2.0], vec![1.0, 1.0]]).unwrap();
    let r = decide_scalable(&f, true, &tol()).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::NotScalable, "example frame: {:?}", r.verdict);
    let y = r.certificate_y.ok_or("example frame: no certificate")?;
    for x in f.vectors() {
        let d = planar_diagram(&x);
        ensure!(d[0] * y[0] + d[1] * y[1] > 0.0, "certificate not positive on {x:?}");
    }
    ensure!(hull_certificate_check(&f, &y).unwrap_or(false), "library rejects its own certificate");

    let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
    for i in 0..25 {
        for j in i..25 {
            let (theta, psi) = (i as f64 * PI / 24.0, j as f64 * PI / 24.0);
            let Ok(f) = angle_frame(&[0.0, theta, psi]) else {
                skipped += 1;
                continue;
            };
            let expected = theta <= FRAC_PI_2 + 1e-8 && FRAC_PI_2 - 1e-8 <= psi && psi <= theta + FRAC_PI_2 + 1e-8;
            let got = decide_scalable(&f, false, &tol()).map_err(|e| e.to_string())?.is_scalable();
            checked += 1;
            if got != expected {
                bad.push((i, j));
            }
        }
    }
    ensure!(bad.is_empty(), "{} disagreements on grid at (i, j) = {:?}", bad.len(), bad);
    Ok(format!("{checked} grid frames agree, {skipped} non-spanning skipped"))
}

// 3 -----------------------------------------------------------------------

fn c3() -> Check {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 50 {
        let theta: f64 = r.random_range(0.05..PI - 0.05);
        let psi: f64 = r.random_range(0.05..PI - 0.05);
        let w = [(2.0 * (psi - theta)).sin(), -(2.0 * psi).sin(), (2.0 * theta).sin()];
        let wn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if wn < 1e-3 || (theta - psi).abs() < 1e-3 {
            continue;
        }
        let f = angles_rad(&[0.0, theta, psi]);
        let (rep, _) = cofactor_scaling(&f, &tol()).map_err(|e| format!("θ={theta}, ψ={psi}: {e}"))?;
        let v = &rep.cofactor_vector;
        let lambda = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / (wn * wn);
        ensure!(lambda != 0.0, "zero scalar at θ={theta}, ψ={psi}");
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let err = v.iter().zip(&w).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt() / vn;
        worst = worst.max(err);
        done += 1;
    }
    ensure!(worst <= 1e-8, "relative error {worst:e}");
    Ok(format!("50 pairs, worst relative error {worst:.1e}"))
}

// 4 -----------------------------------------------------------------------

fn c4() -> Check {
    let f = deg(&[0.0, 30.0, 100.0, 110.0]);
    let r = codim2_scaling(&f, &tol()).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::StrictlyScalable, "verdict {:?}", r.verdict);
    let a = r.scalars_a.as_ref().ok_or("no weights")?;
    ensure!(a.iter().all(|&v| v > 0.0), "weights not positive: {a:?}");
    let scaled = apply_scaling(&f, a).map_err(|e| e.to_string())?;
    ensure!(scaled.tightness(1e-8).is_tight(), "scaled frame not tight at 1e-8");
    let c: Vec<f64> = a.iter().map(|v| v * v).collect();
    ensure!(is_tight_direct(&f.vectors(), &c, 1e-8), "direct operator check fails");

    let e = |i: usize| {
        let mut v = vec![0.0; 4];
        v[i] = 1.0;
        v
    };
    let pencil = codim2_pencil(&f, Some((e(2), e(3))), &tol()).map_err(|e| e.to_string())?;
    let (al, be, ga) = (30f64.to_radians(), 100f64.to_radians(), 110f64.to_radians());
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let t = k as f64 * 2.0 * PI / 20.0 + 0.05;
        let want = [
            t.sin() * (2.0 * be - 2.0 * al).sin() + t.cos() * (2.0 * al - 2.0 * ga).sin(),
            t.cos() * (2.0 * ga).sin() - t.sin() * (2.0 * be).sin(),
            t.sin() * (2.0 * al).sin(),
            -t.cos() * (2.0 * al).sin(),
        ];
        for (got, w) in pencil.at(t).iter().zip(want) {
            worst = worst.max((got - w).abs());
        }
    }
    ensure!(worst <= 1e-10, "A_j(t) error {worst:e}");
    Ok(format!("strictly scalable, tight; A_j(t) error {worst:.1e} over 20 t"))
}

// 5 -----------------------------------------------------------------------

fn c5() -> Check {
    let mut r = rng(5);
    let (mut worst_id, mut worst_norm): (f64, f64) = (0.0, 0.0);
    for n in 2..=8 {
        for _ in 0..1000 {
            let x = gaussian(&mut r, n);
            let y = gaussian(&mut r, n);
            let nx: f64 = x.iter().map(|v| v * v).sum();
            let ny: f64 = y.iter().map(|v| v * v).sum();
            let res = diagram_inner_identity_check(&x, &y).map_err(|e| e.to_string())?;
            worst_id = worst_id.max(res / (1.0 + nx * ny));
            let d = diagram_vector(&x, DiagramKind::Full).map_err(|e| e.to_string())?;
            let dn = d.entries.iter().map(|v| v * v).sum::<f64>().sqrt();
            worst_norm = worst_norm.max((dn - nx).abs());
        }
    }
    ensure!(worst_id <= 1e-9, "identity residual {worst_id:e}");
    ensure!(worst_norm <= 1e-9, "norm identity error {worst_norm:e}");
    Ok(format!("7000 pairs, residual {worst_id:.1e}, norm error {worst_norm:.1e}"))
}

// 6 -----------------------------------------------------------------------

fn c6() -> Check {
    let mut r = rng(6);
    let mut slack = f64::INFINITY;
    for k in 0..200 {
        let n = 2 + k % 5;
        let m = n + r.random_range(0..=8);
        let f = random_frame(&mut r, n, m, true);
        let fp = frame_potential(&f);
        let bound = (m * m) as f64 / n as f64;
        ensure!(fp >= bound - 1e-9, "n={n} m={m}: FP {fp} < {bound}");
        slack = slack.min(fp - bound);
    }
    let mut tight: Vec<(String, Frame<f64>)> = vec![("Mercedes-Benz".into(), mercedes_benz())];
    for n in 2..=6 {
        let id: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect();
        tight.push((format!("ONB n={n}"), Frame::new(&id).unwrap()));
    }
    let h = sylvester_hadamard::<f64>(8).unwrap();
    for n in 2..=8 {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| h.row(i).iter().map(|v| v / (n as f64).sqrt()).collect()).collect();
        let f = Frame::from_synthesis(Matrix::from_rows(&rows).unwrap()).unwrap();
        tight.push((format!("Hadamard columns n={n}"), f));
    }
    let mut worst: f64 = 0.0;
    for (label, f) in &tight {
        let want = (f.m() * f.m()) as f64 / f.n() as f64;
        let err = (frame_potential(f) - want).abs();
        ensure!(err <= 1e-7, "{label}: FP off by {err:e}");
        worst = worst.max(err);
    }
    Ok(format!("200 random frames (min slack {slack:.2e}), {} tight frames within {worst:.1e}", tight.len()))
}

// 7 -----------------------------------------------------------------------

fn eigenbasis_frame(f: &Frame<f64>) -> Frame<f64> {
    let u = f.operator().unwrap().spectral.eigenvectors.clone();
    Frame::from_synthesis(&u.transpose() * f.synthesis()).unwrap()
}

fn c7() -> Check {
    for n in [2, 4, 8] {
        let f = hadamard_doubled::<f64>(n).map_err(|e| e.to_string())?;
        let w = find_w_element(&f, &tol()).map_err(|e| e.to_string())?;
        ensure!(!w.is_member(), "doubled Hadamard n={n}: W reported nonempty");
    }
    let mut r = rng(7);
    for k in 0..20 {
        let n = 2 + k % 3;
        let f = eigenbasis_frame(&random_frame(&mut r, n, n + 2, false));
        let ones = vec![1.0; f.m()];
        ensure!(is_in_v(&f, &ones, &tol()).map_err(|e| e.to_string())?.is_member(), "all-ones not in V");
        ensure!(find_v_element(&f, false, &tol()).map_err(|e| e.to_string())?.is_member(), "V search empty");
    }
    let (mut yes, mut no) = (0, 0);
    for k in 0..500 {
        let n = 2 + k % 3;
        let m = r.random_range(n..=8);
        let f = if k % 4 == 0 {
            // scalable by construction: S^{-1/2}X is Parseval, then reweighted
            let g = random_frame(&mut r, n, m, false);
            let p = &g.operator().unwrap().inverse_sqrt() * g.synthesis();
            let cols: Vec<Vec<f64>> = (0..m)
                .map(|i| {
                    let s: f64 = r.random_range(0.5..2.0);
                    p.column(i).into_iter().map(|x| x * s).collect()
                })
                .collect();
            Frame::from_synthesis(Matrix::from_columns(&cols).unwrap()).unwrap()
        } else {
            random_frame(&mut r, n, m, false)
        };
        let a = decide_scalable(&f, false, &tol()).map_err(|e| e.to_string())?;
        let b = intersection_scalability(&f, &tol()).map_err(|e| format!("frame {k}: {e}"))?;
        ensure!(a.is_scalable() == b.is_scalable(), "frame {k} (n={n}, m={m}): LP {:?} vs W∩V {:?}", a.verdict, b.verdict);
        if a.is_scalable() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("W empty for doubled Hadamard; V nontrivial on 20 eigenbasis frames; 500 agree ({yes} scalable, {no} not)"))
}

// 8 -----------------------------------------------------------------------

fn c8() -> Check {
    let t = tol();
    let mut r = rng(8);
    for k in 0..100 {
        let n = 2 + k % 4;
        let m = n + r.random_range(0..=6);
        let g = random_frame(&mut r, n, m, false);
        let p = &g.operator().unwrap().inverse_sqrt() * g.synthesis();
        let a: Vec<f64> = (0..m).map(|_| r.random_range(0.5..2.0)).collect();
        let cols: Vec<Vec<f64>> = (0..m).map(|i| p.column(i).into_iter().map(|x| x / a[i]).collect()).collect();
        let f = Frame::from_synthesis(Matrix::from_columns(&cols).unwrap()).unwrap();
        let pair = alternate_dual_from_scaling(&f, &a, &t).map_err(|e| format!("frame {k}: {e}"))?;
        ensure!(is_dual(&pair.primal, &pair.dual, t.dual).unwrap_or(false), "frame {k}: not a dual");
        let inv: Vec<f64> = a.iter().map(|v| 1.0 / v).collect();
        let back = apply_scaling(&pair.dual, &inv).map_err(|e| e.to_string())?;
        ensure!(back.tightness(t.tight).is_parseval(t.tight), "frame {k}: rescaled dual not Parseval");
    }

    let f = Frame::new(&[vec![2.0, 1.0], vec![1.0, 2.0], vec![1.0, 1.0]]).unwrap();
    let rep = canonical_dual_scalable(&f, false, &t).map_err(|e| e.to_string())?;
    let c = rep.weights_c.ok_or("example frame: dual reported not scalable")?;
    for (got, want) in c.iter().zip([1.0, 1.0, 56.0]) {
        ensure!((got - want).abs() <= 1e-8 * want, "c = {c:?}");
    }
    let dual = canonical_dual(&f, &t).unwrap().dual.vectors();
    ensure!(is_tight_direct(&dual, &c, 1e-9), "scaled dual not tight");
    let s = operator(&dual, &c);
    ensure!((s[0][0] - 1.0).abs() < 1e-9, "scaled dual bound {} != 1", s[0][0]);

    let p1 = p1_counterexample::<f64>(4).unwrap();
    let sc = decide_scalable(&p1, true, &t).map_err(|e| e.to_string())?;
    ensure!(sc.is_scalable(), "P1 frame reported not scalable");
    let rep = canonical_dual_scalable(&p1, false, &t).map_err(|e| e.to_string())?;
    ensure!(!rep.feasible, "P1 dual reported scalable");
    let y = rep.certificate.ok_or("P1: no certificate")?;
    // y over the flattened upper triangle (off-diagonals scaled by √2) as a symmetric form
    let n = 4;
    let mut ym = vec![vec![0.0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let v = if i == j { y[k] } else { y[k] / 2f64.sqrt() };
            ym[i][j] = v;
            ym[j][i] = v;
            k += 1;
        }
    }
    let vecs = p1.vectors();
    let sop = operator(&vecs, &vec![1.0; vecs.len()]);
    let s2 = matmul(&sop, &sop);
    let pair = |a: &[Vec<f64>]| -> f64 { (0..n).map(|i| (0..n).map(|j| ym[i][j] * a[i][j]).sum::<f64>()).sum() };
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for x in &vecs {
        let q: f64 = (0..n).map(|i| (0..n).map(|j| x[i] * ym[i][j] * x[j]).sum::<f64>()).sum();
        ensure!(q >= -1e-9 * scale, "certificate negative on a frame vector: {q}");
    }
    let on_target = pair(&s2);
    ensure!(on_target < 0.0, "certificate not negative on S²: {on_target}");
    Ok("100 alternate duals; c = (1, 1, 56) Parseval; P1 scalable, dual certified not scalable".into())
}

// 9 -----------------------------------------------------------------------

/// 40 planar frames, m ≤ 5: 20 built around exact scalings with weights in
/// multiples of 1/60, 20 confined to an arc narrower than 80° (mod π).
fn corpus() -> Vec<Vec<f64>> {
    let mut r = rng(9);
    let mut out = Vec::new();
    for k in 0..20 {
        let rot: f64 = r.random_range(0.0..180.0);
        let mut a: Vec<f64> = match k % 5 {
            0 => vec![0.0, 90.0],
            1 => vec![0.0, 90.0, 35.0, 90.0 + 35.0],
            2 => vec![0.0, 60.0, 120.0],
            3 => vec![0.0, 36.0, 72.0, 108.0, 144.0],
            _ => vec![0.0, 45.0, 90.0, 135.0],
        };
        while a.len() < 3 + k % 3 && a.len() < 5 {
            a.push(r.random_range(0.0..180.0));
        }
        out.push(a.into_iter().map(|d| d + rot).collect());
    }
    for k in 0..20 {
        let start: f64 = r.random_range(0.0..180.0);
        let width: f64 = r.random_range(15.0..80.0);
        let m = 2 + k % 4;
        let mut a = vec![start, start + width];
        while a.len() < m {
            a.push(start + r.random_range(0.0..width));
        }
        out.push(a);
    }
    // sign flips change nothing about scalability
    for a in &mut out {
        for d in a.iter_mut() {
            if r.random_bool(0.3) {
                *d += 180.0;
            }
        }
    }
    out
}

/// Brute force over the simplex grid with pitch 1/60.
fn grid_oracle(vectors: &[Vec<f64>]) -> bool {
    const N: usize = 60;
    let m = vectors.len();
    let terms: Vec<[f64; 3]> = vectors.iter().map(|x| [x[0] * x[0], x[1] * x[1], x[0] * x[1]]).collect();
    fn rec(terms: &[[f64; 3]], i: usize, left: usize, acc: [f64; 3]) -> bool {
        let m = terms.len();
        let step = 1.0 / 60.0;
        if i == m - 1 {
            let w = left as f64 * step;
            let s = [acc[0] + w * terms[i][0], acc[1] + w * terms[i][1], acc[2] + w * terms[i][2]];
            let tr = s[0] + s[1];
            return (s[0] - s[1]).abs() <= 1e-9 * tr && s[2].abs() <= 1e-9 * tr;
        }
        (0..=left).any(|k| {
            let w = k as f64 * step;
            let next = [acc[0] + w * terms[i][0], acc[1] + w * terms[i][1], acc[2] + w * terms[i][2]];
            rec(terms, i + 1, left - k, next)
        })
    }
    m > 0 && rec(&terms, 0, N, [0.0; 3])
}

/// Scalable exactly when the lines through the vectors do not all fit in an open quarter turn.
fn quadrant_oracle(vectors: &[Vec<f64>]) -> bool {
    let mut t: Vec<f64> = vectors.iter().map(|x| x[1].atan2(x[0]).rem_euclid(PI)).collect();
    t.sort_by(f64::total_cmp);
    let mut gap = t[0] + PI - t[t.len() - 1];
    for w in t.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap <= FRAC_PI_2 + 1e-9
}

fn c9() -> Check {
    let (mut yes, mut no) = (0, 0);
    for (k, a) in corpus().iter().enumerate() {
        let f = deg(a);
        let vecs = f.vectors();
        let lib = decide_scalable(&f, false, &tol()).map_err(|e| e.to_string())?.is_scalable();
        let grid = grid_oracle(&vecs);
        let quad = quadrant_oracle(&vecs);
        ensure!(lib == grid && lib == quad, "frame {k} {a:?}: library {lib}, grid {grid}, quadrant {quad}");
        if lib {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("40 frames agree with both oracles ({yes} scalable, {no} not)"))
}

// 10 ----------------------------------------------------------------------

fn c10() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    ensure!(!files.is_empty(), "empty golden corpus");
    for p in &files {
        let doc = FrameDocument::parse(&std::fs::read_to_string(p).unwrap()).map_err(|e| e.to_string())?;
        let runs: Vec<String> = (0..3)
            .map(|_| analyze(&doc, &AnalyzeOptions::default(), &tol()).map(|r| r.to_json()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure!(runs.windows(2).all(|w| w[0] == w[1]), "{}: in-process runs differ", p.display());
        for _ in 0..2 {
            let out = Command::new(env!("CARGO_BIN_EXE_framescale"))
                .args(["analyze", "--json"])
                .arg(p)
                .env_remove("FRAMESCALE_TOL")
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{}: exit {:?}", p.display(), out.status.code());
            ensure!(out.stdout == runs[0].as_bytes(), "{}: binary output differs", p.display());
        }
    }
    Ok(format!("{} golden files, byte-identical across 5 runs each", files.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("frame operator regression", c1),
        ("scalability verdicts", c2),
        ("cofactor formula", c3),
        ("codim-2 example", c4),
        ("diagram inner-product identity", c5),
        ("frame potential", c6),
        ("W/V decomposition", c7),
        ("dual frames", c8),
        ("oracle equivalence", c9),
        ("determinism", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
