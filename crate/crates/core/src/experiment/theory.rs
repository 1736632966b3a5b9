use std::fmt;

use crate::error::{Error, Result};
use crate::noise_theory::{feasibility_for_entropy, field_degree, noise_pmf, sufficient_m_for_entropy, Feasibility};

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryReport {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    /// Element-wise linear SNR.
    pub snr: f64,
    pub pmf: Vec<f64>,
    pub entropy: f64,
    /// `None` when the noise entropy leaves no capacity.
    pub sufficient_m: Option<u64>,
    /// m1 = 2k·s against the given m, if any.
    pub feasibility: Option<(usize, usize, Feasibility)>,
}

pub fn theory_report(n: usize, k: usize, p: u32, snr: f64, m: Option<usize>) -> Result<TheoryReport> {
    let pmf = noise_pmf(p, snr)?;
    let entropy = pmf.entropy();
    let sufficient_m = match sufficient_m_for_entropy(n, k, p, entropy) {
        Ok(v) => Some(v),
        Err(Error::Unachievable(_)) if k > 0 => None,
        Err(Error::Unachievable(_)) => Some(0),
        Err(e) => return Err(e),
    };
    let feasibility = m.map(|m| {
        let m1 = 2 * k * field_degree(n, p) as usize;
        (m1, m, feasibility_for_entropy(m1, m, entropy))
    });
    Ok(TheoryReport { n, k, p, snr, pmf: pmf.probs().to_vec(), entropy, sufficient_m, feasibility })
}

impl fmt::Display for TheoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}, p = {}", self.n, self.k, self.p)?;
        writeln!(f, "element-wise SNR = {:.4} dB", 10.0 * self.snr.log10())?;
        for (z, pz) in self.pmf.iter().enumerate() {
            writeln!(f, "P(Z={z}) = {pz:.10}")?;
        }
        writeln!(f, "H_p(Z) = {:.10}", self.entropy)?;
        match self.sufficient_m {
            Some(m) => writeln!(f, "sufficient m >= {m}")?,
            None => writeln!(f, "sufficient m: unachievable (H_p(Z) ~ 1)")?,
        }
        if let Some((m1, m, feas)) = self.feasibility {
            let verdict = if feas.feasible { "feasible" } else { "infeasible" };
            writeln!(f, "rate m1/m = {m1}/{m}: {verdict} (margin {:+.6})", feas.margin)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_n511_numbers() {
        let r = theory_report(511, 5, 2, f64::INFINITY, Some(180)).unwrap();
        assert_eq!(r.sufficient_m, Some(90));
        assert_eq!(r.entropy, 0.0);
        let (m1, m, feas) = r.feasibility.unwrap();
        assert_eq!((m1, m), (90, 180));
        assert!(feas.feasible && (feas.margin - 0.5).abs() < 1e-12);
        assert!(r.to_string().contains("sufficient m >= 90"));
    }

    #[test]
    fn zero_sparsity_and_unachievable() {
        assert_eq!(theory_report(511, 0, 2, 1.0, None).unwrap().sufficient_m, Some(0));
        let r = theory_report(511, 5, 2, 1e-6, None).unwrap();
        assert_eq!(r.sufficient_m, None);
        assert!(r.to_string().contains("unachievable"));
    }
}
