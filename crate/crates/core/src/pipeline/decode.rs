use super::design::SensingDesign;
use super::signal::{MeasurementVector, NoiseModel, SparseSignal};
use crate::error::{DecodeFailureKind, Error, Result};
use crate::finite_field::FpElement;
use crate::noise_theory::noise_pmf;
use crate::ops::OpCount;
use crate::polar_code::ChannelLaw;
use crate::reed_solomon::Syndrome;

/// Knobs for the two-stage decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOptions {
    /// Channel law the compute stage decodes against.
    pub law: ChannelLaw,
    /// Stage 1 is flagged invalid when the re-encoded codeword differs from
    /// the folded measurements in more than this many positions.
    pub max_disagreements: usize,
}

impl DecodeOptions {
    /// Decode against the true quantized-noise law of `noise`.
    pub fn genie(design: &SensingDesign, noise: &NoiseModel) -> Result<Self> {
        Self::assumed(design, noise.snr(design.modulation().tau()))
    }

    /// Decode against the law implied by an assumed element-wise SNR.
    pub fn assumed(design: &SensingDesign, snr: f64) -> Result<Self> {
        let pmf = noise_pmf(design.p(), snr)?;
        Ok(Self { law: ChannelLaw::new(design.p(), pmf.probs().to_vec())?, max_disagreements: design.m() / 4 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage1Output {
    /// ỹ ∈ F_p^{m1}, the decoded estimate of Σ h_ℓ x_ℓ.
    pub message: Vec<u32>,
    /// Positions where C(ỹ) differs from the folded measurements.
    pub disagreements: usize,
    pub codeword_valid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage2Status {
    Ok,
    Failed(DecodeFailureKind),
}

impl std::fmt::Display for Stage2Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stage2Status::Ok => f.write_str("ok"),
            Stage2Status::Failed(kind) => kind.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeDiagnostics {
    pub stage1_codeword_valid: bool,
    pub stage1_disagreements: usize,
    pub stage2_status: Stage2Status,
    pub ops: OpCount,
}

impl DecodeDiagnostics {
    pub fn success(&self) -> bool {
        self.stage1_codeword_valid && self.stage2_status == Stage2Status::Ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// x̂; all-zero when stage 2 fails.
    pub estimate: SparseSignal,
    pub diagnostics: DecodeDiagnostics,
}

impl SensingDesign {
    /// Stage 1: fold y to F_p^m and decode C to get ỹ = H x.
    pub fn compute_stage(
        &self,
        y: &MeasurementVector,
        opts: &DecodeOptions,
        ops: &mut OpCount,
    ) -> Result<Stage1Output> {
        if y.len() != self.m() {
            return Err(Error::LengthMismatch { expected: self.m(), actual: y.len() });
        }
        let folded: Vec<u32> = y.indices().iter().map(|&j| self.modulation.fold_index(j)).collect();
        ops.channel += folded.len() as u64;
        let message = self.code.decode(&folded, &opts.law, ops)?;
        let reencoded = self.code.encode(&message)?;
        ops.channel += reencoded.len() as u64;
        let disagreements = reencoded.iter().zip(&folded).filter(|(a, b)| a != b).count();
        Ok(Stage1Output { message, disagreements, codeword_valid: disagreements <= opts.max_disagreements })
    }

    /// Stage 2: pack ỹ into the GF(p^s) syndrome and run RS syndrome decoding.
    pub fn recover_stage(&self, message: &[u32], ops: &mut OpCount) -> Result<SparseSignal> {
        if message.len() != self.m1() {
            return Err(Error::LengthMismatch { expected: self.m1(), actual: message.len() });
        }
        let base = self.field.base();
        let s = self.s() as usize;
        let values = message
            .chunks(s)
            .map(|block| {
                let word: Vec<FpElement> = block.iter().map(|&c| base.elem(c as i64)).collect();
                self.field.h_pack(&word)
            })
            .collect::<Result<Vec<_>>>()?;
        let entries = self.rs.syndrome_decode_counted(&Syndrome { values }, ops)?;
        SparseSignal::new(self.n(), entries.into_iter().map(|(pos, v)| (pos, v.value())).collect())
    }

    /// Both stages; decoding failures are reported in the diagnostics, not as errors.
    pub fn decode(&self, y: &MeasurementVector, opts: &DecodeOptions) -> Result<DecodeOutcome> {
        let mut ops = OpCount::default();
        let stage1 = self.compute_stage(y, opts, &mut ops)?;
        let (estimate, stage2_status) = match self.recover_stage(&stage1.message, &mut ops) {
            Ok(x) => (x, Stage2Status::Ok),
            Err(Error::DecodeFailure(kind)) => (SparseSignal::zero(self.n()), Stage2Status::Failed(kind)),
            Err(e) => return Err(e),
        };
        Ok(DecodeOutcome {
            estimate,
            diagnostics: DecodeDiagnostics {
                stage1_codeword_valid: stage1.codeword_valid,
                stage1_disagreements: stage1.disagreements,
                stage2_status,
                ops,
            },
        })
    }
}
