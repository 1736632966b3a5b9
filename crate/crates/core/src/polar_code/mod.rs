//! The linear channel code that protects each dictionary column.
//!
//! For p = 2 this is a shortened polar code with successive-cancellation
//! decoding; for larger alphabets a generic systematic linear code with
//! exhaustive maximum-likelihood decoding stands in.

mod linear;
mod polar;

pub use linear::LinearCode;
pub use polar::{bhattacharyya, construct_frozen_set, construct_frozen_set_shortened, PolarCode, LLR_CLAMP};

use crate::error::{Error, Result};
use crate::ops::OpCount;

/// Law of the additive noise Z on F_p seen by the channel decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelLaw {
    p: u32,
    pmf: Vec<f64>,
}

impl ChannelLaw {
    pub fn new(p: u32, pmf: Vec<f64>) -> Result<Self> {
        if pmf.len() != p as usize {
            return Err(Error::LengthMismatch { expected: p as usize, actual: pmf.len() });
        }
        if pmf.iter().any(|&x| x.is_nan() || x < 0.0) {
            return Err(Error::InvalidParameter("channel pmf has a negative or NaN entry".into()));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("channel pmf sums to {total}")));
        }
        Ok(Self { p, pmf })
    }

    /// Binary symmetric channel with the given crossover.
    pub fn bsc(crossover: f64) -> Result<Self> {
        Self::new(2, vec![1.0 - crossover, crossover])
    }

    /// The noiseless channel, Z = 0 with certainty.
    pub fn noiseless(p: u32) -> Self {
        let mut pmf = vec![0.0; p as usize];
        pmf[0] = 1.0;
        Self { p, pmf }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// log P(c = 0) − log P(c = 1) for a binary received symbol, clamped.
    pub fn binary_llr(&self, received: u32) -> f64 {
        let r = (received & 1) as usize;
        let llr = (self.pmf[r] / self.pmf[r ^ 1]).ln();
        if llr.is_nan() {
            0.0
        } else {
            llr.clamp(-LLR_CLAMP, LLR_CLAMP)
        }
    }
}

/// The code C used for dictionary coding.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelCode {
    Polar(PolarCode),
    Linear(LinearCode),
}

impl ChannelCode {
    /// A shortened polar code; only binary alphabets are supported.
    pub fn polar(p: u32, block_len: usize, message_len: usize, design_crossover: f64) -> Result<Self> {
        if p != 2 {
            return Err(Error::AlphabetUnsupported(p));
        }
        let mother = block_len.next_power_of_two();
        Ok(ChannelCode::Polar(PolarCode::new(mother, block_len, message_len, design_crossover)?))
    }

    pub fn p(&self) -> u32 {
        match self {
            ChannelCode::Polar(_) => 2,
            ChannelCode::Linear(c) => c.p(),
        }
    }

    pub fn message_len(&self) -> usize {
        match self {
            ChannelCode::Polar(c) => c.message_len(),
            ChannelCode::Linear(c) => c.message_len(),
        }
    }

    pub fn block_len(&self) -> usize {
        match self {
            ChannelCode::Polar(c) => c.block_len(),
            ChannelCode::Linear(c) => c.block_len(),
        }
    }

    pub fn rate(&self) -> f64 {
        self.message_len() as f64 / self.block_len() as f64
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        match self {
            ChannelCode::Polar(c) => c.encode(message),
            ChannelCode::Linear(c) => c.encode(message),
        }
    }

    pub fn decode(&self, received: &[u32], law: &ChannelLaw, ops: &mut OpCount) -> Result<Vec<u32>> {
        match self {
            ChannelCode::Polar(c) => c.sc_decode_counted(received, law, ops),
            ChannelCode::Linear(c) => c.ml_decode_counted(received, law, ops),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_validation() {
        assert!(ChannelLaw::new(2, vec![0.5, 0.6]).is_err());
        assert!(ChannelLaw::new(2, vec![1.0]).is_err());
        assert!(ChannelLaw::new(3, vec![0.5, 0.25, 0.25]).is_ok());
    }

    #[test]
    fn llr_sign_and_clamp() {
        let bsc = ChannelLaw::bsc(0.1).unwrap();
        assert!((bsc.binary_llr(0) - (0.9f64 / 0.1).ln()).abs() < 1e-12);
        assert!((bsc.binary_llr(1) + (0.9f64 / 0.1).ln()).abs() < 1e-12);
        let clean = ChannelLaw::noiseless(2);
        assert_eq!(clean.binary_llr(0), LLR_CLAMP);
        assert_eq!(clean.binary_llr(1), -LLR_CLAMP);
    }

    #[test]
    fn polar_rejects_nonbinary() {
        assert!(matches!(ChannelCode::polar(3, 8, 4, 0.1), Err(Error::AlphabetUnsupported(3))));
    }
}
