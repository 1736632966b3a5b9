//! Binary iterative hard thresholding over a Gaussian sensing matrix with
//! one-bit measurements, finished by a top-k binary assignment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::pipeline::SparseSignal;

/// Φ_G with iid N(0, 1/m) entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSensing {
    m: usize,
    n: usize,
    seed: u64,
    entries: Vec<f64>,
}

impl GaussianSensing {
    pub fn new(m: usize, n: usize, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("Gaussian matrix needs m, n ≥ 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = (m as f64).sqrt().recip();
        let entries = (0..m * n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                z * scale
            })
            .collect();
        Ok(Self { m, n, seed, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Φ_G·a for a sparse a given as (index, value) pairs.
    fn apply_sparse(&self, a: &[(usize, f64)]) -> Vec<f64> {
        (0..self.m).map(|i| a.iter().map(|&(j, v)| self.entry(i, j) * v).sum()).collect()
    }
}

fn sign(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// sign(Φ_G x + n) with n_i ~ N(0, σ²/m); sign(0) = +1.
pub fn sign_measure<R: Rng + ?Sized>(
    phi: &GaussianSensing,
    x: &SparseSignal,
    sigma_sq: f64,
    rng: &mut R,
) -> Result<Vec<i8>> {
    if !(sigma_sq >= 0.0 && sigma_sq.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma^2 must be finite and ≥ 0, got {sigma_sq}")));
    }
    let sd = (sigma_sq / phi.m as f64).sqrt();
    let noise: Vec<f64> = if sd == 0.0 {
        vec![0.0; phi.m]
    } else {
        (0..phi.m).map(|_| sd * Distribution::<f64>::sample(&StandardNormal, rng)).collect()
    };
    sign_measure_with_noise(phi, x, &noise)
}

/// sign(Φ_G x + n) for an explicit noise realization.
pub fn sign_measure_with_noise(phi: &GaussianSensing, x: &SparseSignal, noise: &[f64]) -> Result<Vec<i8>> {
    if x.len() != phi.n {
        return Err(Error::LengthMismatch { expected: phi.n, actual: x.len() });
    }
    if noise.len() != phi.m {
        return Err(Error::LengthMismatch { expected: phi.m, actual: noise.len() });
    }
    let a: Vec<(usize, f64)> = x.entries().iter().map(|&(j, v)| (j, v as f64)).collect();
    Ok(phi.apply_sparse(&a).into_iter().zip(noise).map(|(v, e)| sign(v + e)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BihtConfig {
    pub step_size: f64,
    pub max_iters: usize,
    pub k: usize,
}

impl BihtConfig {
    pub fn new(k: usize) -> Self {
        Self { step_size: 1.0, max_iters: 100, k }
    }
}

/// Indices of the k largest |a_j|; ties go to the lower index.
fn top_k(a: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..a.len()).collect();
    idx.sort_by(|&i, &j| a[j].abs().total_cmp(&a[i].abs()).then(i.cmp(&j)));
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

/// BIHT: a ← H_k(a + (η/m)·Φᵀ(y − sign(Φa))) from a = 0, then the final
/// support is set to 1.
pub fn biht_recover(signs: &[i8], phi: &GaussianSensing, cfg: &BihtConfig) -> Result<SparseSignal> {
    if signs.len() != phi.m {
        return Err(Error::LengthMismatch { expected: phi.m, actual: signs.len() });
    }
    if cfg.step_size.is_nan() || cfg.step_size <= 0.0 || cfg.max_iters == 0 || cfg.k > phi.n {
        return Err(Error::InvalidParameter(format!("bad BIHT config {cfg:?}")));
    }
    let scale = cfg.step_size / phi.m as f64;
    let mut sparse: Vec<(usize, f64)> = Vec::new();
    let mut a = vec![0.0; phi.n];
    for _ in 0..cfg.max_iters {
        let current = phi.apply_sparse(&sparse);
        let mut consistent = true;
        for (i, (&y, &v)) in signs.iter().zip(&current).enumerate() {
            let r = (y - sign(v)) as f64;
            if r != 0.0 {
                consistent = false;
                for (aj, &phi_ij) in a.iter_mut().zip(phi.row(i)) {
                    *aj += scale * r * phi_ij;
                }
            }
        }
        if consistent {
            break;
        }
        let keep = top_k(&a, cfg.k);
        let mut next = vec![0.0; phi.n];
        for &j in &keep {
            next[j] = a[j];
        }
        a = next;
        sparse = keep.into_iter().map(|j| (j, a[j])).collect();
    }
    SparseSignal::new(phi.n, top_k(&a, cfg.k).into_iter().map(|j| (j, 1)).collect())
}
