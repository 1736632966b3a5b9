//! Generic linear codes over F_p with exhaustive ML decoding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ChannelLaw;
use crate::error::{Error, Result};
use crate::ops::OpCount;

/// Exhaustive decoding is refused beyond this many candidate messages.
pub const ML_SEARCH_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    p: u32,
    /// m1 rows of length m.
    generator: Vec<Vec<u32>>,
    block_len: usize,
}

impl LinearCode {
    pub fn from_generator(p: u32, generator: Vec<Vec<u32>>) -> Result<Self> {
        let block_len = generator.first().map_or(0, Vec::len);
        if generator.iter().any(|r| r.len() != block_len) {
            return Err(Error::InvalidParameter("ragged generator matrix".into()));
        }
        if generator.iter().flatten().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("generator entry out of range".into()));
        }
        if generator.len() > block_len {
            return Err(Error::InvalidParameter("more message symbols than block symbols".into()));
        }
        Ok(Self { p, generator, block_len })
    }

    /// Systematic generator [I | P] with P drawn uniformly from a seeded stream.
    pub fn systematic_random(p: u32, message_len: usize, block_len: usize, seed: u64) -> Result<Self> {
        if message_len > block_len {
            return Err(Error::InvalidParameter("more message symbols than block symbols".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generator = (0..message_len)
            .map(|r| {
                let mut row = vec![0u32; block_len];
                row[r] = 1;
                for c in row[message_len..].iter_mut() {
                    *c = rng.random_range(0..p);
                }
                row
            })
            .collect();
        Self::from_generator(p, generator)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn message_len(&self) -> usize {
        self.generator.len()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.generator.len() {
            return Err(Error::LengthMismatch { expected: self.generator.len(), actual: message.len() });
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.block_len];
        for (&w, row) in message.iter().zip(&self.generator) {
            if w as u64 >= p {
                return Err(Error::InvalidParameter(format!("symbol {w} out of range")));
            }
            if w == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = (*o + w as u64 * g as u64) % p;
            }
        }
        Ok(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn ml_decode(&self, received: &[u32], law: &ChannelLaw) -> Result<Vec<u32>> {
        let mut ops = OpCount::default();
        self.ml_decode_counted(received, law, &mut ops)
    }

    /// Exact ML under the additive law; ties go to the lexicographically
    /// smallest message.
    pub fn ml_decode_counted(&self, received: &[u32], law: &ChannelLaw, ops: &mut OpCount) -> Result<Vec<u32>> {
        let k = self.generator.len();
        let space = (self.p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if space > ML_SEARCH_LIMIT {
            return Err(Error::SearchSpaceTooLarge(space));
        }
        if received.len() != self.block_len {
            return Err(Error::LengthMismatch { expected: self.block_len, actual: received.len() });
        }
        if law.p() != self.p {
            return Err(Error::InvalidParameter("channel alphabet differs from code alphabet".into()));
        }
        let p = self.p;
        let log_pmf: Vec<f64> = law.pmf().iter().map(|&x| x.ln()).collect();
        let mut message = vec![0u32; k];
        let mut best = (f64::NEG_INFINITY, vec![0u32; k]);
        let mut first = true;
        loop {
            let cw = self.encode(&message)?;
            let score: f64 = cw.iter().zip(received).map(|(&c, &r)| log_pmf[((r + p - c % p) % p) as usize]).sum();
            ops.channel += (k * self.block_len + self.block_len) as u64;
            if first || score > best.0 {
                best = (score, message.clone());
                first = false;
            }
            // Lexicographic increment, first symbol most significant.
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(best.1);
                }
                i -= 1;
                message[i] += 1;
                if message[i] < p {
                    break;
                }
                message[i] = 0;
            }
        }
    }
}
