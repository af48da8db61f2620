//! Frames for `framescale generate`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use framescale::constructions::{angle_frame, hadamard_doubled, mercedes_benz, p1_counterexample};

use crate::document::FrameDocument;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    /// Three unit vectors at 120°.
    Mb,
    /// ±1 Hadamard synthesis matrix with the last row doubled.
    HadamardDoubled,
    /// Scalable frame with a non-scalable canonical dual.
    P1,
    /// Seeded Gaussian directions normalized to unit length.
    RandomUnit,
    /// Planar unit vectors at given angles in degrees.
    Angles,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerateParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    pub degrees: Vec<f64>,
}

fn unit_gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

pub fn generate(kind: GenerateKind, p: &GenerateParams) -> CliResult<FrameDocument> {
    let (name, frame) = match kind {
        GenerateKind::Mb => ("mercedes-benz".to_string(), mercedes_benz::<f64>()),
        GenerateKind::HadamardDoubled => {
            let n = p.n.unwrap_or(2);
            (format!("hadamard-doubled n={n}"), hadamard_doubled::<f64>(n)?)
        }
        GenerateKind::P1 => {
            let n = p.n.unwrap_or(4);
            (format!("p1 n={n}"), p1_counterexample::<f64>(n)?)
        }
        GenerateKind::RandomUnit => {
            let n = p.n.ok_or_else(|| CliError::BadParams("random-unit needs --n".into()))?;
            let m = p.m.ok_or_else(|| CliError::BadParams("random-unit needs --m".into()))?;
            if n == 0 || m < n {
                return Err(CliError::BadParams(format!(
                    "random-unit needs 1 <= n <= m, got n={n} m={m}"
                )));
            }
            let seed = p.seed.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vectors: Vec<Vec<f64>> = (0..m).map(|_| unit_gaussian(&mut rng, n)).collect();
            let frame = framescale::Frame::new(&vectors)?;
            (format!("random-unit n={n} m={m} seed={seed}"), frame)
        }
        GenerateKind::Angles => {
            if p.degrees.len() < 2 {
                return Err(CliError::BadParams("angles needs at least two --degrees values".into()));
            }
            let rad: Vec<f64> = p.degrees.iter().map(|d| d.to_radians()).collect();
            let label: Vec<String> = p.degrees.iter().map(|d| d.to_string()).collect();
            (format!("angles {}", label.join(" ")), angle_frame(&rad)?)
        }
    };
    Ok(FrameDocument::from_frame(Some(name), &frame))
}
