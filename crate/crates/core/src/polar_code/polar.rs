//! Shortened polar codes in natural (non-bit-reversed) order.
//!
//! The transform is x = u·F^⊗n with F = [[1, 0], [1, 1]], so x_i is the XOR
//! of u_j over all j whose bit pattern contains i. Freezing every u_j with
//! j ≥ m therefore forces x_j = 0 for j ≥ m, and those trailing positions are
//! dropped on transmission and restored as certain zeros at the decoder.

use std::cmp::Ordering;

use super::ChannelLaw;
use crate::error::{Error, Result};
use crate::ops::OpCount;

/// Magnitude bound on channel LLRs.
pub const LLR_CLAMP: f64 = 40.0;
/// LLR given to shortened positions; large enough to dominate any clamped sum.
const SHORTENED_LLR: f64 = 1e9;

/// Bhattacharyya parameters of the synthetic channels for u_0..u_{N−1},
/// given the parameter of each physical channel.
pub fn bhattacharyya(physical: &[f64]) -> Vec<f64> {
    let n = physical.len();
    if n == 1 {
        return physical.to_vec();
    }
    let h = n / 2;
    let (a, b) = physical.split_at(h);
    let minus: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x + y - x * y).collect();
    let plus: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x * y).collect();
    let mut out = bhattacharyya(&minus);
    out.extend(bhattacharyya(&plus));
    out
}

fn bsc_bhattacharyya(crossover: f64) -> f64 {
    2.0 * (crossover * (1.0 - crossover)).sqrt()
}

/// Frozen set of an unshortened length-N code: the N − m1 synthetic channels
/// with the largest Bhattacharyya parameter on a BSC of the given crossover.
pub fn construct_frozen_set(mother_len: usize, info_count: usize, design_crossover: f64) -> Vec<usize> {
    construct_frozen_set_shortened(mother_len, mother_len, info_count, design_crossover)
}

/// Frozen set when the trailing `mother_len − block_len` positions are shortened.
///
/// Shortened positions enter the recursion as perfect channels and their
/// u-indices are always frozen. Ties in reliability go to the higher index.
pub fn construct_frozen_set_shortened(
    mother_len: usize,
    block_len: usize,
    info_count: usize,
    design_crossover: f64,
) -> Vec<usize> {
    let z0 = bsc_bhattacharyya(design_crossover);
    let physical: Vec<f64> = (0..mother_len).map(|i| if i < block_len { z0 } else { 0.0 }).collect();
    let z = bhattacharyya(&physical);
    let mut candidates: Vec<usize> = (0..block_len).collect();
    candidates.sort_by(|&a, &b| z[a].partial_cmp(&z[b]).unwrap_or(Ordering::Equal).then(b.cmp(&a)));
    let mut frozen: Vec<usize> = candidates[info_count..].to_vec();
    frozen.extend(block_len..mother_len);
    frozen.sort_unstable();
    frozen
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarCode {
    mother_len: usize,
    block_len: usize,
    info: Vec<usize>,
    frozen_mask: Vec<bool>,
    design_crossover: f64,
}

impl PolarCode {
    pub fn new(mother_len: usize, block_len: usize, info_count: usize, design_crossover: f64) -> Result<Self> {
        Self::check_dims(mother_len, block_len, info_count)?;
        if !(design_crossover > 0.0 && design_crossover < 0.5) {
            return Err(Error::InvalidParameter(format!("design crossover {design_crossover} must lie in (0, 0.5)")));
        }
        let frozen = construct_frozen_set_shortened(mother_len, block_len, info_count, design_crossover);
        Self::from_frozen(mother_len, block_len, &frozen, design_crossover)
    }

    /// Rebuilds a code from an explicit frozen set, e.g. from a design dump.
    pub fn from_frozen(mother_len: usize, block_len: usize, frozen: &[usize], design_crossover: f64) -> Result<Self> {
        if frozen.len() > mother_len {
            return Err(Error::InvalidParameter("frozen set larger than the code".into()));
        }
        let info_count = mother_len - frozen.len();
        Self::check_dims(mother_len, block_len, info_count)?;
        let mut frozen_mask = vec![false; mother_len];
        for &i in frozen {
            if i >= mother_len || frozen_mask[i] {
                return Err(Error::InvalidParameter(format!("bad frozen index {i}")));
            }
            frozen_mask[i] = true;
        }
        if (block_len..mother_len).any(|i| !frozen_mask[i]) {
            return Err(Error::InvalidParameter("shortened positions must be frozen".into()));
        }
        let info = (0..mother_len).filter(|&i| !frozen_mask[i]).collect();
        Ok(Self { mother_len, block_len, info, frozen_mask, design_crossover })
    }

    fn check_dims(mother_len: usize, block_len: usize, info_count: usize) -> Result<()> {
        if !mother_len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("mother length {mother_len} is not a power of two")));
        }
        if info_count > block_len || block_len > mother_len {
            return Err(Error::InvalidParameter(format!(
                "need m1 ≤ m ≤ N, got {info_count}, {block_len}, {mother_len}"
            )));
        }
        Ok(())
    }

    pub fn mother_len(&self) -> usize {
        self.mother_len
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn message_len(&self) -> usize {
        self.info.len()
    }

    pub fn design_crossover(&self) -> f64 {
        self.design_crossover
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info
    }

    pub fn frozen_set(&self) -> Vec<usize> {
        (0..self.mother_len).filter(|&i| self.frozen_mask[i]).collect()
    }

    pub fn shortened_set(&self) -> Vec<usize> {
        (self.block_len..self.mother_len).collect()
    }

    /// Full length-N codeword before shortening.
    pub fn encode_mother(&self, message: &[u32]) -> Result<Vec<u8>> {
        if message.len() != self.info.len() {
            return Err(Error::LengthMismatch { expected: self.info.len(), actual: message.len() });
        }
        let mut u = vec![0u8; self.mother_len];
        for (&pos, &bit) in self.info.iter().zip(message) {
            if bit > 1 {
                return Err(Error::InvalidParameter(format!("symbol {bit} is not binary")));
            }
            u[pos] = bit as u8;
        }
        polar_transform(&mut u);
        Ok(u)
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        let x = self.encode_mother(message)?;
        debug_assert!(x[self.block_len..].iter().all(|&b| b == 0));
        Ok(self.shorten(&x))
    }

    /// Drops the trailing shortened positions of a mother codeword.
    pub fn shorten(&self, mother: &[u8]) -> Vec<u32> {
        mother[..self.block_len].iter().map(|&b| b as u32).collect()
    }

    pub fn sc_decode(&self, received: &[u32], law: &ChannelLaw) -> Result<Vec<u32>> {
        let mut ops = OpCount::default();
        self.sc_decode_counted(received, law, &mut ops)
    }

    pub fn sc_decode_counted(&self, received: &[u32], law: &ChannelLaw, ops: &mut OpCount) -> Result<Vec<u32>> {
        if law.p() != 2 {
            return Err(Error::AlphabetUnsupported(law.p()));
        }
        if received.len() != self.block_len {
            return Err(Error::LengthMismatch { expected: self.block_len, actual: received.len() });
        }
        let llr: Vec<f64> = received.iter().map(|&r| law.binary_llr(r)).collect();
        Ok(self.decode_llr_counted(&llr, ops))
    }

    /// Successive cancellation from LLRs of the m transmitted positions.
    pub fn decode_llr(&self, llr: &[f64]) -> Vec<u32> {
        let mut ops = OpCount::default();
        self.decode_llr_counted(llr, &mut ops)
    }

    fn decode_llr_counted(&self, llr: &[f64], ops: &mut OpCount) -> Vec<u32> {
        let mut full = Vec::with_capacity(self.mother_len);
        full.extend_from_slice(&llr[..self.block_len]);
        full.resize(self.mother_len, SHORTENED_LLR);
        let mut u = vec![0u8; self.mother_len];
        let mut x = vec![0u8; self.mother_len];
        sc_recurse(&full, &self.frozen_mask, &mut u, &mut x, ops);
        self.info.iter().map(|&i| u[i] as u32).collect()
    }
}

/// In-place x = u·F^⊗n.
fn polar_transform(bits: &mut [u8]) {
    let n = bits.len();
    let mut half = 1;
    while half < n {
        for start in (0..n).step_by(2 * half) {
            for j in start..start + half {
                bits[j] ^= bits[j + half];
            }
        }
        half <<= 1;
    }
}

/// Check-node combine: LLR of a ⊕ b.
fn llr_xor(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * a.abs().min(b.abs()) + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
}

fn sc_recurse(llr: &[f64], frozen: &[bool], u: &mut [u8], x: &mut [u8], ops: &mut OpCount) {
    let n = llr.len();
    if n == 1 {
        let bit = if frozen[0] || llr[0] >= 0.0 { 0 } else { 1 };
        u[0] = bit;
        x[0] = bit;
        return;
    }
    let h = n / 2;
    let (l1, l2) = llr.split_at(h);
    let minus: Vec<f64> = l1.iter().zip(l2).map(|(&a, &b)| llr_xor(a, b)).collect();
    let (u_top, u_bot) = u.split_at_mut(h);
    let (x_top, x_bot) = x.split_at_mut(h);
    sc_recurse(&minus, &frozen[..h], u_top, x_top, ops);
    let plus: Vec<f64> =
        l1.iter().zip(l2).zip(x_top.iter()).map(|((&a, &b), &bit)| if bit == 1 { b - a } else { b + a }).collect();
    sc_recurse(&plus, &frozen[h..], u_bot, x_bot, ops);
    for (t, &b) in x_top.iter_mut().zip(x_bot.iter()) {
        *t ^= b;
    }
    ops.channel += 3 * h as u64;
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Explicit F^⊗n generator rows, built by Kronecker products.
    fn kron_generator(n: usize) -> Vec<Vec<u8>> {
        let mut g = vec![vec![1u8]];
        while g.len() < n {
            let k = g.len();
            let mut next = vec![vec![0u8; 2 * k]; 2 * k];
            for r in 0..k {
                for c in 0..k {
                    next[r][c] = g[r][c];
                    next[r + k][c] = g[r][c];
                    next[r + k][c + k] = g[r][c];
                }
            }
            g = next;
        }
        g
    }

    fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
        (0..n).map(|_| rng.random_range(0..2)).collect()
    }

    #[test]
    fn transform_matches_kronecker_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in [2, 4, 8, 32] {
            let g = kron_generator(n);
            for _ in 0..20 {
                let u: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
                let mut x = u.clone();
                polar_transform(&mut x);
                let expected: Vec<u8> = (0..n).map(|c| (0..n).fold(0, |acc, r| acc ^ (u[r] & g[r][c]))).collect();
                assert_eq!(x, expected);
            }
        }
    }

    #[test]
    fn rate_one_n4_first_row() {
        let code = PolarCode::new(4, 4, 4, 0.1).unwrap();
        assert!(code.frozen_set().is_empty());
        assert_eq!(code.encode(&[1, 0, 0, 0]).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(code.encode(&[0, 0, 0, 1]).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rate_one_has_empty_frozen_set() {
        assert!(construct_frozen_set(64, 64, 0.05).is_empty());
    }

    #[test]
    fn n2_freezes_minus_channel() {
        for eps in [0.01, 0.1, 0.3, 0.49] {
            assert_eq!(construct_frozen_set(2, 1, eps), vec![0]);
        }
    }

    #[test]
    fn frozen_set_regression_n256() {
        let frozen = construct_frozen_set(256, 128, 0.05);
        assert_eq!(frozen.len(), 128);
        let info: Vec<usize> = (0..256).filter(|i| !frozen.contains(i)).collect();
        // Extremes of the ordering are unambiguous.
        assert!(frozen.contains(&0));
        assert!(info.contains(&255));
        assert_eq!(frozen, construct_frozen_set(256, 128, 0.05));
        let checksum: usize = frozen.iter().map(|&i| i * i).sum();
        assert_eq!(checksum, FROZEN_256_128_CHECKSUM);
    }

    const FROZEN_256_128_CHECKSUM: usize = 1_044_565;

    #[test]
    fn zero_message_zero_codeword() {
        let code = PolarCode::new(256, 180, 90, 0.05).unwrap();
        assert_eq!(code.encode(&vec![0; 90]).unwrap(), vec![0; 180]);
    }

    #[test]
    fn linear_encoder() {
        let code = PolarCode::new(256, 180, 90, 0.05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = random_bits(&mut rng, 90);
            let b = random_bits(&mut rng, 90);
            let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            let ca = code.encode(&a).unwrap();
            let cb = code.encode(&b).unwrap();
            let expected: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| x ^ y).collect();
            assert_eq!(code.encode(&sum).unwrap(), expected);
        }
    }

    #[test]
    fn shortened_positions_are_zero() {
        let code = PolarCode::new(256, 180, 90, 0.05).unwrap();
        assert_eq!(code.shortened_set().len(), 76);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let x = code.encode_mother(&random_bits(&mut rng, 90)).unwrap();
            assert!(x[180..].iter().all(|&b| b == 0));
        }
        assert!((code.message_len() as f64 / code.block_len() as f64 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unshortened_is_identity_shortening() {
        let code = PolarCode::new(64, 64, 32, 0.05).unwrap();
        let msg = vec![1; 32];
        let mother = code.encode_mother(&msg).unwrap();
        assert_eq!(code.shorten(&mother), code.encode(&msg).unwrap());
    }

    #[test]
    fn noiseless_round_trip() {
        let law = ChannelLaw::noiseless(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (n, m, k) in [(256, 180, 90), (128, 90, 90), (8, 6, 6), (64, 64, 20)] {
            let code = PolarCode::new(n, m, k, 0.05).unwrap();
            for _ in 0..1000 {
                let msg = random_bits(&mut rng, k);
                let cw = code.encode(&msg).unwrap();
                assert_eq!(code.sc_decode(&cw, &law).unwrap(), msg);
            }
        }
    }

    #[test]
    fn n2_map_decision_on_zeros() {
        let code = PolarCode::new(2, 2, 1, 0.1).unwrap();
        let law = ChannelLaw::bsc(0.1).unwrap();
        // Codewords: message 0 → (0,0), message 1 → (1,1). MAP on (0,0):
        let like0 = 0.9f64 * 0.9;
        let like1 = 0.1f64 * 0.1;
        assert!(like0 > like1);
        assert_eq!(code.sc_decode(&[0, 0], &law).unwrap(), vec![0]);
        assert_eq!(code.sc_decode(&[1, 1], &law).unwrap(), vec![1]);
    }

    fn block_error_rate(code: &PolarCode, eps: f64, trials: usize, seed: u64) -> f64 {
        let law = ChannelLaw::bsc(eps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut errors = 0;
        for _ in 0..trials {
            let msg = random_bits(&mut rng, code.message_len());
            let mut y = code.encode(&msg).unwrap();
            for b in y.iter_mut() {
                if rng.random::<f64>() < eps {
                    *b ^= 1;
                }
            }
            if code.sc_decode(&y, &law).unwrap() != msg {
                errors += 1;
            }
        }
        errors as f64 / trials as f64
    }

    #[test]
    fn bsc_005_n256_m1_90() {
        let code = PolarCode::new(256, 256, 90, 0.05).unwrap();
        let bler = block_error_rate(&code, 0.05, 10_000, 4);
        assert!(bler < 0.05, "BLER {bler}");
    }

    #[test]
    fn bler_monotone_in_crossover() {
        let code = PolarCode::new(256, 180, 90, 0.05).unwrap();
        let trials = 2000;
        let mut prev: Option<f64> = None;
        for eps in [0.02, 0.05, 0.08, 0.11] {
            let bler = block_error_rate(&code, eps, trials, 5);
            if let Some(p) = prev {
                let sigma = (p.max(bler) * (1.0 - p.min(bler)) / trials as f64).sqrt();
                assert!(p <= bler + 3.0 * sigma + 1e-12, "{p} then {bler} at {eps}");
            }
            prev = Some(bler);
        }
    }

    #[test]
    fn polarization_trend_with_length() {
        let eps = 0.08;
        let rate = 0.25;
        let blers: Vec<f64> = [64usize, 128, 256]
            .iter()
            .map(|&n| {
                let code = PolarCode::new(n, n, (n as f64 * rate) as usize, eps).unwrap();
                block_error_rate(&code, eps, 20_000, 6)
            })
            .collect();
        assert!(blers[0] > blers[1] && blers[1] > blers[2], "{blers:?}");
    }

    /// Genie-aided SC: per-index probability that the decision for u_i is
    /// wrong when all earlier bits are known. Written directly on the
    /// recursive channel definition with explicit u-vectors.
    fn genie_error_rates(n: usize, eps: f64, trials: usize, seed: u64) -> Vec<f64> {
        fn rec(llr: &[f64], u_true: &[u8], errs: &mut [usize]) {
            let n = llr.len();
            if n == 1 {
                let dec = if llr[0] >= 0.0 { 0 } else { 1 };
                if dec != u_true[0] {
                    errs[0] += 1;
                }
                return;
            }
            let h = n / 2;
            let minus: Vec<f64> = (0..h).map(|i| llr_xor(llr[i], llr[i + h])).collect();
            rec(&minus, &u_true[..h], &mut errs[..h]);
            let mut x_top = u_true[..h].to_vec();
            polar_transform(&mut x_top);
            let plus: Vec<f64> =
                (0..h).map(|i| if x_top[i] == 1 { llr[i + h] - llr[i] } else { llr[i + h] + llr[i] }).collect();
            rec(&plus, &u_true[h..], &mut errs[h..]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut errs = vec![0usize; n];
        let l = ((1.0 - eps) / eps).ln();
        for _ in 0..trials {
            let u: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
            let mut x = u.clone();
            polar_transform(&mut x);
            let llr: Vec<f64> = x
                .iter()
                .map(|&b| {
                    let flip = rng.random::<f64>() < eps;
                    if (b == 1) ^ flip {
                        -l
                    } else {
                        l
                    }
                })
                .collect();
            rec(&llr, &u, &mut errs);
        }
        errs.iter().map(|&e| e as f64 / trials as f64).collect()
    }

    #[test]
    fn bhattacharyya_ranking_agrees_with_monte_carlo() {
        let (n, k, eps) = (256, 128, 0.05);
        let frozen = construct_frozen_set(n, k, eps);
        let info: Vec<usize> = (0..n).filter(|i| !frozen.contains(i)).collect();
        let rates = genie_error_rates(n, eps, 4000, 12);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| rates[a].partial_cmp(&rates[b]).unwrap().then(b.cmp(&a)));
        let mc_info: Vec<usize> = order[..k].to_vec();
        let overlap = info.iter().filter(|i| mc_info.contains(i)).count();
        assert!(overlap as f64 >= 0.9 * k as f64, "overlap {overlap}/{k}");
    }

    #[test]
    fn from_frozen_requires_shortened_frozen() {
        assert!(PolarCode::from_frozen(8, 6, &[0, 1], 0.1).is_err());
        let code = PolarCode::new(8, 6, 3, 0.1).unwrap();
        let again = PolarCode::from_frozen(8, 6, &code.frozen_set(), 0.1).unwrap();
        assert_eq!(code, again);
    }
}
