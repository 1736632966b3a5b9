//! Construction-A modulation onto the cubic lattice τZ^m and the p-level
//! sawtooth quantizer.
//!
//! Every quantity lives on the fine grid (τ/p)Z and is stored as an integer
//! grid index j (real value j·τ/p). Reduction mod τZ is reduction of j into
//! the representative range [−⌊p/2⌋, ⌈p/2⌉ − 1], which is the half-open
//! Voronoi interval [−τ/2, τ/2) expressed in grid units.

use crate::error::{Error, Result};

/// Grid-membership tolerance for [`ModulationSpec::fold_to_field`], in grid units.
const GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationSpec {
    p: u32,
    tau: f64,
}

impl ModulationSpec {
    /// Default shaping scale: τ = √8 for p = 2 and √12 otherwise.
    pub fn new(p: u32) -> Self {
        Self { p, tau: default_tau(p) }
    }

    pub fn with_tau(p: u32, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        if p < 2 {
            return Err(Error::InvalidParameter(format!("alphabet size {p} < 2")));
        }
        Ok(Self { p, tau })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Fine-grid spacing τ/p.
    pub fn step(&self) -> f64 {
        self.tau / self.p as f64
    }

    /// Reduces a grid index mod p into the Voronoi representative range.
    pub fn reduce_index(&self, j: i64) -> i32 {
        let p = self.p as i64;
        let half = p / 2;
        ((j + half).rem_euclid(p) - half) as i32
    }

    pub fn index_to_real(&self, j: i32) -> f64 {
        j as f64 * self.step()
    }

    /// t = [(τ/p)·g(c)] mod τZ, per component.
    pub fn modulate(&self, codeword: &[u32]) -> LatticeWord {
        LatticeWord { indices: codeword.iter().map(|&c| self.reduce_index(c as i64)).collect() }
    }

    /// Grid index of S_p(r): nearest multiple of τ/p (ties toward +∞), then mod τZ.
    pub fn sawtooth_index(&self, r: f64) -> i32 {
        let nearest = (r / self.step() + 0.5).floor();
        // rem_euclid on the float keeps huge inputs in range before the cast.
        self.reduce_index(nearest.rem_euclid(self.p as f64) as i64)
    }

    pub fn sawtooth_quantize(&self, r: f64) -> f64 {
        self.index_to_real(self.sawtooth_index(r))
    }

    /// g⁻¹ of the grid index, i.e. the F_p symbol carried by a quantizer output.
    pub fn fold_index(&self, j: i32) -> u32 {
        (j as i64).rem_euclid(self.p as i64) as u32
    }

    /// Folds a real quantizer output back to F_p.
    pub fn fold_to_field(&self, y: f64) -> Result<u32> {
        let scaled = y / self.step();
        let j = scaled.round();
        if !scaled.is_finite() || (scaled - j).abs() > GRID_TOL || self.reduce_index(j as i64) as f64 != j {
            return Err(Error::NotOnGrid(y));
        }
        Ok(self.fold_index(j as i32))
    }
}

pub fn default_tau(p: u32) -> f64 {
    if p == 2 {
        8f64.sqrt()
    } else {
        12f64.sqrt()
    }
}

/// A lattice codeword stored as reduced grid indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeWord {
    indices: Vec<i32>,
}

impl LatticeWord {
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

    /// (1/m)‖t‖².
    pub fn power(&self, spec: &ModulationSpec) -> f64 {
        let step = spec.step();
        let sum: f64 = self.indices.iter().map(|&j| (j as f64 * step).powi(2)).sum();
        sum / self.indices.len() as f64
    }
}

/// Monte Carlo estimate of (1/m)E‖t‖² over uniformly random messages.
pub fn average_power<R, F>(spec: &ModulationSpec, message_len: usize, samples: usize, rng: &mut R, encode: F) -> f64
where
    R: rand::Rng,
    F: Fn(&[u32]) -> Vec<u32>,
{
    let mut total = 0.0;
    for _ in 0..samples {
        let msg: Vec<u32> = (0..message_len).map(|_| rng.random_range(0..spec.p())).collect();
        total += spec.modulate(&encode(&msg)).power(spec);
    }
    total / samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct reduction of a real into [−τ/2, τ/2).
    fn reduce_real(x: f64, tau: f64) -> f64 {
        x - tau * ((x + tau / 2.0) / tau).floor()
    }

    #[test]
    fn modulate_examples() {
        let m2 = ModulationSpec::new(2);
        assert_eq!(m2.modulate(&[0]).samples(&m2), vec![0.0]);
        let t = m2.modulate(&[1]).samples(&m2)[0];
        assert!((t - reduce_real(m2.tau() / 2.0, m2.tau())).abs() < 1e-12);
        assert!((t + 2f64.sqrt()).abs() < 1e-12);

        let m3 = ModulationSpec::new(3);
        let tau = m3.tau();
        for c in 0..3u32 {
            let t = m3.modulate(&[c]).samples(&m3)[0];
            assert!((t - reduce_real(c as f64 * tau / 3.0, tau)).abs() < 1e-12);
        }
        assert_eq!(m3.modulate(&[0, 1, 2]).indices(), &[0, 1, -1]);
    }

    #[test]
    fn constellation_power() {
        // Exhaustive average over the reduced constellation.
        let exhaustive = |spec: &ModulationSpec| {
            (0..spec.p()).map(|c| spec.modulate(&[c]).power(spec)).sum::<f64>() / spec.p() as f64
        };
        assert!((exhaustive(&ModulationSpec::new(2)) - 1.0).abs() < 1e-12);
        let p3 = exhaustive(&ModulationSpec::new(3));
        assert!((p3 - 8.0 / 9.0).abs() < 1e-12);
        for p in [3, 5, 7, 11] {
            assert!(exhaustive(&ModulationSpec::new(p)) <= 1.0 + 1e-12);
        }
        let m2 = ModulationSpec::new(2);
        assert_eq!(m2.modulate(&[0; 16]).power(&m2), 0.0);
    }

    #[test]
    fn monte_carlo_power_uncoded() {
        let spec = ModulationSpec::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let est = average_power(&spec, 180, 2000, &mut rng, |m| m.to_vec());
        // Var of a per-sample power is 1, so the std of the mean is 1/√(180·2000).
        assert!((est - 1.0).abs() < 5.0 / (360_000f64).sqrt(), "{est}");
    }

    #[test]
    fn sawtooth_examples() {
        let m2 = ModulationSpec::new(2);
        assert_eq!(m2.sawtooth_quantize(0.0), 0.0);
        assert!((m2.sawtooth_quantize(1.6) + 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(m2.sawtooth_quantize(-3.0), 0.0);
        // tie at exactly half a step rounds up
        assert_eq!(m2.sawtooth_index(m2.step() / 2.0), -1);
        assert_eq!(m2.sawtooth_index(-m2.step() / 2.0), 0);
    }

    #[test]
    fn fold_examples() {
        let m2 = ModulationSpec::new(2);
        assert_eq!(m2.fold_to_field(0.0).unwrap(), 0);
        assert_eq!(m2.fold_to_field(-2f64.sqrt()).unwrap(), 1);
        assert!(matches!(m2.fold_to_field(0.3), Err(Error::NotOnGrid(_))));
        // on the fine grid but outside the Voronoi interval
        assert!(matches!(m2.fold_to_field(2f64.sqrt()), Err(Error::NotOnGrid(_))));
    }

    #[test]
    fn noiseless_round_trip_exhaustive() {
        for p in [2, 3, 5, 7] {
            let spec = ModulationSpec::new(p);
            for c in 0..p {
                let t = spec.modulate(&[c]).samples(&spec)[0];
                let y = spec.sawtooth_quantize(t);
                assert_eq!(spec.fold_to_field(y).unwrap(), c);
            }
        }
    }

    #[test]
    fn superposition_folds_to_field_sum() {
        let spec = ModulationSpec::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let a: Vec<u32> = (0..32).map(|_| rng.random_range(0..3)).collect();
            let b: Vec<u32> = (0..32).map(|_| rng.random_range(0..3)).collect();
            let (xa, xb) = (rng.random_range(1..3i64), rng.random_range(1..3i64));
            let ta = spec.modulate(&a);
            let tb = spec.modulate(&b);
            for i in 0..32 {
                let real =
                    spec.index_to_real(ta.indices()[i]) * xa as f64 + spec.index_to_real(tb.indices()[i]) * xb as f64;
                let folded = spec.fold_index(spec.sawtooth_index(real));
                assert_eq!(folded as i64, (a[i] as i64 * xa + b[i] as i64 * xb) % 3);
            }
        }
    }
}
