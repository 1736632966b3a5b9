//! The folded quantization noise and the measurement bound it implies.
//!
//! With element-wise SNR the folded noise is Z = [Q_Z(N)] mod p for
//! N ~ N(0, p²/SNR), so
//!
//! P(Z = j) = Σ_{t ≡ j (mod p)} P(t − ½ ≤ N < t + ½),
//!
//! and a rate-m1/m code can carry the folded channel when
//! m1/m ≤ 1 − H_p(Z). Combined with m1 = 2k·s this gives
//! m ≥ 2k·s / (1 − H_p(Z)).

use crate::error::{Error, Result};

/// Tail mass beyond which shells of the integer sum are dropped.
const TAIL_MASS: f64 = 1e-14;
/// Entropies this close to 1 leave no usable capacity.
const UNACHIEVABLE_GAP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedNoisePmf {
    p: u32,
    probs: Vec<f64>,
    /// Variance of the unfolded noise N, p²/SNR.
    source_variance: f64,
}

impl QuantizedNoisePmf {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn source_variance(&self) -> f64 {
        self.source_variance
    }

    pub fn entropy(&self) -> f64 {
        entropy_p(&self.probs, self.p)
    }
}

/// Upper-tail probability P(N ≥ x) for N ~ N(0, σ²).
fn upper_tail(x: f64, sigma: f64) -> f64 {
    0.5 * libm::erfc(x / (sigma * std::f64::consts::SQRT_2))
}

/// P(a ≤ N < b), evaluated on whichever side avoids cancellation.
fn interval_mass(a: f64, b: f64, sigma: f64) -> f64 {
    if a >= 0.0 {
        upper_tail(a, sigma) - upper_tail(b, sigma)
    } else if b <= 0.0 {
        upper_tail(-b, sigma) - upper_tail(-a, sigma)
    } else {
        1.0 - upper_tail(b, sigma) - upper_tail(-a, sigma)
    }
}

/// Law of the folded noise for element-wise linear SNR (`f64::INFINITY` allowed).
pub fn noise_pmf(p: u32, snr: f64) -> Result<QuantizedNoisePmf> {
    if snr.is_nan() || snr <= 0.0 {
        return Err(Error::InvalidParameter(format!("snr must be positive, got {snr}")));
    }
    if p < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {p} < 2")));
    }
    let mut probs = vec![0.0; p as usize];
    if snr.is_infinite() {
        probs[0] = 1.0;
        return Ok(QuantizedNoisePmf { p, probs, source_variance: 0.0 });
    }
    let sigma = p as f64 / snr.sqrt();
    let pi = p as i64;
    let mut t = 0i64;
    loop {
        let mass = interval_mass(t as f64 - 0.5, t as f64 + 0.5, sigma);
        probs[t.rem_euclid(pi) as usize] += mass;
        if t > 0 {
            let mirror = interval_mass(-t as f64 - 0.5, -t as f64 + 0.5, sigma);
            probs[(-t).rem_euclid(pi) as usize] += mirror;
        }
        if 2.0 * upper_tail(t as f64 + 0.5, sigma) < TAIL_MASS {
            break;
        }
        t += 1;
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|x| *x /= total);
    Ok(QuantizedNoisePmf { p, probs, source_variance: sigma * sigma })
}

/// −Σ P(j) log_p P(j), with 0·log 0 = 0.
pub fn entropy_p(probs: &[f64], p: u32) -> f64 {
    let lp = (p as f64).ln();
    let h = -probs.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln() / lp).sum::<f64>();
    // Avoid reporting −0 for a point mass.
    h.max(0.0)
}

/// Smallest s with p^s > n: the extension degree of an RS code of length n.
pub fn field_degree(n: usize, p: u32) -> u32 {
    let mut s = 0;
    let mut q = 1u128;
    while q <= n as u128 {
        q *= p as u128;
        s += 1;
    }
    s
}

/// ⌈2k·s / (1 − H)⌉ for a given noise entropy H.
pub fn sufficient_m_for_entropy(n: usize, k: usize, p: u32, entropy: f64) -> Result<u64> {
    if entropy >= 1.0 - UNACHIEVABLE_GAP {
        return Err(Error::Unachievable(entropy));
    }
    let noiseless = 2 * k as u64 * field_degree(n, p) as u64;
    if entropy <= 0.0 {
        return Ok(noiseless);
    }
    Ok((noiseless as f64 / (1.0 - entropy)).ceil() as u64)
}

/// Sufficient number of measurements at element-wise linear SNR.
pub fn sufficient_m(n: usize, k: usize, p: u32, snr: f64) -> Result<u64> {
    let pmf = noise_pmf(p, snr)?;
    sufficient_m_for_entropy(n, k, p, pmf.entropy())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    /// (1 − H_p(Z)) − m1/m.
    pub margin: f64,
}

/// Whether a rate-m1/m code fits under the folded-channel capacity.
pub fn rate_feasible(message_len: usize, block_len: usize, p: u32, snr: f64) -> Result<Feasibility> {
    let h = noise_pmf(p, snr)?.entropy();
    Ok(feasibility_for_entropy(message_len, block_len, h))
}

pub fn feasibility_for_entropy(message_len: usize, block_len: usize, entropy: f64) -> Feasibility {
    let margin = (1.0 - entropy) - message_len as f64 / block_len as f64;
    Feasibility { feasible: margin >= 0.0, margin }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_limit() {
        let pmf = noise_pmf(2, f64::INFINITY).unwrap();
        assert_eq!(pmf.probs(), &[1.0, 0.0]);
        assert_eq!(pmf.entropy(), 0.0);
        let pmf = noise_pmf(2, 1e12).unwrap();
        assert!(pmf.probs()[1] < 1e-100 || pmf.probs()[1] == 0.0);
    }

    #[test]
    fn binary_snr16_matches_reference() {
        // Reference values from 40-digit evaluation of the shell sum.
        let pmf = noise_pmf(2, 16.0).unwrap();
        assert!((pmf.probs()[1] - 0.314_611_285_100_238).abs() < 1e-12);
        assert!((pmf.entropy() - 0.898_424_878_735_579).abs() < 1e-12);
        assert!((pmf.source_variance() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn ternary_symmetry() {
        for db in [0.0, 6.0, 12.0, 20.0] {
            let pmf = noise_pmf(3, db_to_linear(db)).unwrap();
            assert!((pmf.probs()[1] - pmf.probs()[2]).abs() < 1e-15);
            let total: f64 = pmf.probs().iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
        for p in [5, 7] {
            let pmf = noise_pmf(p, 10.0).unwrap();
            for j in 1..p as usize {
                assert!((pmf.probs()[j] - pmf.probs()[p as usize - j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_p(&[1.0, 0.0, 0.0], 3), 0.0);
        assert!((entropy_p(&[1.0 / 3.0; 3], 3) - 1.0).abs() < 1e-15);
        assert!((entropy_p(&[0.5, 0.5], 2) - 1.0).abs() < 1e-15);
        assert!((entropy_p(&[1.0 - 0.3146, 0.3146], 2) - 0.898_412_201_169_432).abs() < 1e-12);
    }

    #[test]
    fn sufficient_m_examples() {
        assert_eq!(sufficient_m(511, 5, 2, f64::INFINITY).unwrap(), 90);
        assert_eq!(sufficient_m_for_entropy(511, 5, 2, 0.899).unwrap(), 892);
        assert_eq!(sufficient_m(511, 5, 2, 16.0).unwrap(), 887);
        assert_eq!(sufficient_m(511, 0, 2, 16.0).unwrap(), 0);
        assert!(matches!(sufficient_m_for_entropy(511, 5, 2, 1.0), Err(Error::Unachievable(_))));
        assert!(matches!(sufficient_m(511, 5, 2, 1e-6), Err(Error::Unachievable(_))));
    }

    #[test]
    fn feasibility_examples() {
        let f = feasibility_for_entropy(90, 180, 0.898_412_201_169_432);
        assert!(!f.feasible);
        assert!((f.margin + 0.398_412_201_169_432).abs() < 1e-12);
        let h01 = entropy_p(&[0.99, 0.01], 2);
        let f = feasibility_for_entropy(90, 180, h01);
        assert!(f.feasible);
        assert!((f.margin - 0.419_206_864_104_089).abs() < 1e-12);
        assert!(feasibility_for_entropy(0, 180, 0.999).feasible);
    }

    #[test]
    fn monotone_in_snr() {
        for p in [2, 3, 5] {
            let mut last_h = f64::INFINITY;
            let mut last_m = u64::MAX;
            for i in 0..60 {
                let snr = db_to_linear(-5.0 + i as f64);
                let h = noise_pmf(p, snr).unwrap().entropy();
                assert!(h <= last_h + 1e-12, "p={p} step {i}");
                last_h = h;
                if let Ok(m) = sufficient_m(511, 5, p, snr) {
                    assert!(m <= last_m);
                    last_m = m;
                }
            }
        }
    }

    #[test]
    fn field_degrees() {
        assert_eq!(field_degree(511, 2), 9);
        assert_eq!(field_degree(7, 2), 3);
        assert_eq!(field_degree(8, 2), 4);
        assert_eq!(field_degree(728, 3), 6);
    }
}
