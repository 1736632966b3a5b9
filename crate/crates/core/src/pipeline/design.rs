use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::signal::{MeasurementVector, NoiseModel, SparseSignal};
use crate::error::{Error, Result};
use crate::finite_field::{is_prime, ExtField, FpElement};
use crate::lattice::{default_tau, ModulationSpec};
use crate::noise_theory::{field_degree, rate_feasible, Feasibility};
use crate::polar_code::{ChannelCode, LinearCode};
use crate::reed_solomon::RsCode;

/// Default design crossover for the polar frozen-set construction.
pub const DEFAULT_DESIGN_CROSSOVER: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct DesignParams {
    pub n: usize,
    pub k_max: usize,
    pub p: u32,
    pub m: usize,
    pub design_crossover: f64,
    /// Seed of the random generator matrix used when p ≥ 3.
    pub generator_seed: u64,
    /// Lattice scale; `None` selects the default for p.
    pub tau: Option<f64>,
}

impl DesignParams {
    pub fn new(n: usize, k_max: usize, p: u32, m: usize) -> Self {
        Self { n, k_max, p, m, design_crossover: DEFAULT_DESIGN_CROSSOVER, generator_seed: 0, tau: None }
    }
}

/// A fully built sensing matrix Φ together with the codes that define it.
///
/// Column ℓ of Φ is t_ℓ = [(τ/p)·g(C(h(h̃_ℓ)))] mod τZ, stored as grid
/// indices so superpositions are exact integer sums.
#[derive(Debug, Clone)]
pub struct SensingDesign {
    pub(super) field: Arc<ExtField>,
    pub(super) rs: RsCode,
    pub(super) code: ChannelCode,
    pub(super) modulation: ModulationSpec,
    pub(super) k_max: usize,
    pub(super) generator_seed: u64,
    dictionary: Vec<Vec<FpElement>>,
    columns: Vec<Vec<i32>>,
}

impl SensingDesign {
    pub fn build(params: &DesignParams) -> Result<Self> {
        let (field, rs) = rs_for(params.n, params.k_max, params.p, None)?;
        let m1 = rs.m_tilde1() * field.degree() as usize;
        if params.m < m1 {
            return Err(Error::RateInfeasible(format!("m = {} is below the dictionary length m1 = {m1}", params.m)));
        }
        let code = if params.p == 2 {
            ChannelCode::polar(2, params.m, m1, params.design_crossover)?
        } else {
            ChannelCode::Linear(LinearCode::systematic_random(params.p, m1, params.m, params.generator_seed)?)
        };
        let modulation = ModulationSpec::with_tau(params.p, params.tau.unwrap_or_else(|| default_tau(params.p)))?;
        Self::assemble(field, rs, code, modulation, params.k_max, params.generator_seed)
    }

    pub(super) fn assemble(
        field: Arc<ExtField>,
        rs: RsCode,
        code: ChannelCode,
        modulation: ModulationSpec,
        k_max: usize,
        generator_seed: u64,
    ) -> Result<Self> {
        let m1 = rs.m_tilde1() * field.degree() as usize;
        if code.message_len() != m1 || code.p() != field.p() || modulation.p() != field.p() {
            return Err(Error::InvalidParameter("code, field and modulation disagree".into()));
        }
        let parity = rs.parity_check();
        let mut dictionary = Vec::with_capacity(rs.n());
        let mut columns = Vec::with_capacity(rs.n());
        for col in 0..rs.n() {
            let h: Vec<FpElement> = parity.column(col).into_iter().flat_map(|a| field.h_expand(a)).collect();
            let message: Vec<u32> = h.iter().map(|c| c.value()).collect();
            let codeword = code.encode(&message)?;
            columns.push(modulation.modulate(&codeword).indices().to_vec());
            dictionary.push(h);
        }
        Ok(Self { field, rs, code, modulation, k_max, generator_seed, dictionary, columns })
    }

    pub fn n(&self) -> usize {
        self.rs.n()
    }

    pub fn m(&self) -> usize {
        self.code.block_len()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn s(&self) -> u32 {
        self.field.degree()
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn m_tilde1(&self) -> usize {
        self.rs.m_tilde1()
    }

    pub fn m1(&self) -> usize {
        self.code.message_len()
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn code(&self) -> &ChannelCode {
        &self.code
    }

    pub fn modulation(&self) -> &ModulationSpec {
        &self.modulation
    }

    pub fn generator_seed(&self) -> u64 {
        self.generator_seed
    }

    /// Column ℓ of the expanded dictionary H = h(H̃), length m1.
    pub fn dictionary_column(&self, col: usize) -> &[FpElement] {
        &self.dictionary[col]
    }

    /// H as rows (m1 × n) of F_p values.
    pub fn dictionary_rows(&self) -> Vec<Vec<u32>> {
        (0..self.m1()).map(|r| self.dictionary.iter().map(|c| c[r].value()).collect()).collect()
    }

    /// Column ℓ of Φ as grid indices.
    pub fn column_indices(&self, col: usize) -> &[i32] {
        &self.columns[col]
    }

    /// Φ as real m × n rows.
    pub fn sensing_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.m()).map(|i| self.columns.iter().map(|c| self.modulation.index_to_real(c[i])).collect()).collect()
    }

    pub fn rate_feasible(&self, snr: f64) -> Result<Feasibility> {
        rate_feasible(self.m1(), self.m(), self.p(), snr)
    }

    /// Noiseless real superposition Σ_ℓ t_ℓ x_ℓ, as integer grid indices.
    pub fn superpose(&self, x: &SparseSignal) -> Result<Vec<i64>> {
        self.check_signal(x)?;
        let mut acc = vec![0i64; self.m()];
        for &(pos, v) in x.entries() {
            for (a, &t) in acc.iter_mut().zip(&self.columns[pos]) {
                *a += t as i64 * v as i64;
            }
        }
        Ok(acc)
    }

    /// y = S_p(Φx + n) with n_i ~ N(0, σ²/m).
    pub fn sense<R: Rng + ?Sized>(
        &self,
        x: &SparseSignal,
        noise: &NoiseModel,
        rng: &mut R,
    ) -> Result<MeasurementVector> {
        if noise.m() != self.m() {
            return Err(Error::LengthMismatch { expected: self.m(), actual: noise.m() });
        }
        let sd = noise.per_entry_variance().sqrt();
        let n: Vec<f64> = if sd == 0.0 {
            vec![0.0; self.m()]
        } else {
            (0..self.m()).map(|_| sd * Distribution::<f64>::sample(&StandardNormal, rng)).collect()
        };
        self.sense_with_noise(x, &n)
    }

    /// y = S_p(Φx + n) for an explicit noise realization.
    pub fn sense_with_noise(&self, x: &SparseSignal, noise: &[f64]) -> Result<MeasurementVector> {
        if noise.len() != self.m() {
            return Err(Error::LengthMismatch { expected: self.m(), actual: noise.len() });
        }
        let clean = self.superpose(x)?;
        let step = self.modulation.step();
        let indices = clean
            .iter()
            .zip(noise)
            .map(|(&j, &e)| {
                if e == 0.0 {
                    self.modulation.reduce_index(j)
                } else {
                    self.modulation.sawtooth_index(j as f64 * step + e)
                }
            })
            .collect();
        Ok(MeasurementVector::from_indices(indices))
    }

    fn check_signal(&self, x: &SparseSignal) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), actual: x.len() });
        }
        if let Some(&(_, v)) = x.entries().iter().find(|&&(_, v)| v >= self.p()) {
            return Err(Error::InvalidParameter(format!("signal value {v} not in F_{}", self.p())));
        }
        Ok(())
    }
}

/// The RS code [n, n − 2k] over GF(p^s), p^s = n + 1.
pub(super) fn rs_for(n: usize, k_max: usize, p: u32, modulus: Option<&[u32]>) -> Result<(Arc<ExtField>, RsCode)> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let s = field_degree(n, p);
    if (p as u128).pow(s) != n as u128 + 1 {
        return Err(Error::InvalidParameter(format!("n = {n} is not of the form {p}^s - 1")));
    }
    if 2 * k_max >= n {
        return Err(Error::InvalidParameter(format!("2k = {} must be below n = {n}", 2 * k_max)));
    }
    let field = Arc::new(match modulus {
        Some(f) => ExtField::with_modulus(p, s, f)?,
        None => ExtField::new(p, s)?,
    });
    let rs = RsCode::new(field.clone(), n, n - 2 * k_max)?;
    Ok((field, rs))
}
