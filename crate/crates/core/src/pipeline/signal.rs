use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::ModulationSpec;

/// A sparse vector in Z_p^n, stored as sorted (position, value) pairs with
/// values in {1, …, p − 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseSignal {
    n: usize,
    entries: Vec<(usize, u32)>,
}

impl SparseSignal {
    pub fn new(n: usize, mut entries: Vec<(usize, u32)>) -> Result<Self> {
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("duplicate support position".into()));
        }
        if let Some(&(pos, _)) = entries.iter().find(|(pos, _)| *pos >= n) {
            return Err(Error::InvalidParameter(format!("position {pos} outside length {n}")));
        }
        if entries.iter().any(|&(_, v)| v == 0) {
            return Err(Error::InvalidParameter("support values must be nonzero".into()));
        }
        Ok(Self { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: Vec::new() }
    }

    /// Uniform support of size k, values uniform on {1, …, p − 1}.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, p: u32, rng: &mut R) -> Self {
        let mut entries: Vec<(usize, u32)> = sample(rng, n, k).into_iter().map(|pos| (pos, 0)).collect();
        entries.sort_unstable();
        for e in entries.iter_mut() {
            e.1 = rng.random_range(1..p);
        }
        Self { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Sparsity k = |support|.
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|&(pos, _)| pos).collect()
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for &(pos, v) in &self.entries {
            out[pos] = v;
        }
        out
    }
}

/// Quantizer outputs y ∈ R^m, stored as grid indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeasurementVector {
    indices: Vec<i32>,
}

impl MeasurementVector {
    pub fn from_indices(indices: Vec<i32>) -> Self {
        Self { indices }
    }

    pub fn indices(&self) -> &[i32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn samples(&self, spec: &ModulationSpec) -> Vec<f64> {
        self.indices.iter().map(|&j| spec.index_to_real(j)).collect()
    }
}

/// Measurement noise n_i ~ N(0, σ²/m); element-wise SNR is τ²/(σ²/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma_sq: f64,
    m: usize,
}

impl NoiseModel {
    pub fn new(sigma_sq: f64, m: usize) -> Result<Self> {
        if !(sigma_sq >= 0.0 && sigma_sq.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma^2 must be finite and ≥ 0, got {sigma_sq}")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        Ok(Self { sigma_sq, m })
    }

    pub fn noiseless(m: usize) -> Self {
        Self { sigma_sq: 0.0, m }
    }

    /// Noise level that realizes an element-wise linear SNR (∞ allowed).
    pub fn from_snr(snr: f64, tau: f64, m: usize) -> Result<Self> {
        if snr.is_nan() || snr <= 0.0 {
            return Err(Error::InvalidParameter(format!("snr must be positive, got {snr}")));
        }
        Self::new(m as f64 * tau * tau / snr, m)
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn per_entry_variance(&self) -> f64 {
        self.sigma_sq / self.m as f64
    }

    pub fn snr(&self, tau: f64) -> f64 {
        if self.sigma_sq == 0.0 {
            f64::INFINITY
        } else {
            tau * tau / self.per_entry_variance()
        }
    }
}
