//! Flat `key = value` experiment configuration.
//!
//! Lists are comma separated, `#` starts a comment line, and `inf` is the
//! noiseless SNR sentinel.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pipeline::DEFAULT_DESIGN_CROSSOVER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Coded,
    Biht,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Coded => "coded",
            Algorithm::Biht => "biht",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coded" => Ok(Algorithm::Coded),
            "biht" => Ok(Algorithm::Biht),
            _ => Err(Error::Parse(format!("unknown algorithm '{s}'"))),
        }
    }
}

/// How the SNR grid is read.
///
/// `Elementwise` is τ²/(σ²/m). `Aggregate` is τ²/σ², which sits
/// 10·log10(m) dB below the element-wise value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SnrConvention {
    #[default]
    Elementwise,
    Aggregate,
}

impl SnrConvention {
    pub fn to_elementwise_db(self, db: f64, m: usize) -> f64 {
        match self {
            SnrConvention::Elementwise => db,
            SnrConvention::Aggregate => db + 10.0 * (m as f64).log10(),
        }
    }
}

impl fmt::Display for SnrConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SnrConvention::Elementwise => "elementwise",
            SnrConvention::Aggregate => "aggregate",
        })
    }
}

impl FromStr for SnrConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elementwise" => Ok(SnrConvention::Elementwise),
            "aggregate" => Ok(SnrConvention::Aggregate),
            _ => Err(Error::Parse(format!("unknown SNR convention '{s}'"))),
        }
    }
}

/// Noise given to the BIHT baseline at a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BihtNoise {
    /// Same σ² and the same per-measurement noise σ²/m as the coded system,
    /// with Φ_G entries N(0, 1/m).
    #[default]
    SameSigma,
    /// Noise rescaled so the per-entry signal-to-noise ratio of Φ_G matches
    /// the per-entry constellation power of the coded system.
    PowerMatched,
}

impl fmt::Display for BihtNoise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BihtNoise::SameSigma => "same_sigma",
            BihtNoise::PowerMatched => "power_matched",
        })
    }
}

impl FromStr for BihtNoise {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "same_sigma" => Ok(BihtNoise::SameSigma),
            "power_matched" => Ok(BihtNoise::PowerMatched),
            _ => Err(Error::Parse(format!("unknown biht_noise '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub m: usize,
    /// Sorted ascending; interpreted under `snr_convention`.
    pub snr_db: Vec<f64>,
    pub snr_convention: SnrConvention,
    pub trials: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub out: PathBuf,
    pub design_crossover: f64,
    pub generator_seed: u64,
    pub biht_noise: BihtNoise,
    pub biht_step: f64,
    pub biht_max_iters: usize,
}

impl Default for ExperimentConfig {
    /// The n = 511, m = 180, k = 5 binary setting.
    fn default() -> Self {
        Self {
            n: 511,
            k: 5,
            p: 2,
            m: 180,
            snr_db: (0..=12).map(|i| 10.0 + 1.5 * i as f64).collect(),
            snr_convention: SnrConvention::Elementwise,
            trials: 500,
            seed: 0,
            algorithms: vec![Algorithm::Coded],
            out: PathBuf::from("results.csv"),
            design_crossover: DEFAULT_DESIGN_CROSSOVER,
            generator_seed: 0,
            biht_noise: BihtNoise::SameSigma,
            biht_step: 1.0,
            biht_max_iters: 100,
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse(format!("bad value for '{key}': '{raw}'")))
}

fn values<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>> {
    raw.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| value(key, t)).collect()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::InvalidParameter("snr_db grid is empty".into()));
        }
        if self.snr_db.iter().any(|v| v.is_nan()) || self.snr_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("snr_db must be strictly ascending".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidParameter("no algorithms selected".into()));
        }
        if self.k > self.n {
            return Err(Error::InvalidParameter(format!("k = {} exceeds n = {}", self.k, self.n)));
        }
        if self.biht_step.is_nan() || self.biht_step <= 0.0 || self.biht_max_iters == 0 {
            return Err(Error::InvalidParameter("BIHT needs step > 0 and max_iters ≥ 1".into()));
        }
        Ok(())
    }

    /// Element-wise linear SNR for a grid value.
    pub fn elementwise_snr(&self, snr_db: f64) -> f64 {
        10f64.powf(self.snr_convention.to_elementwise_db(snr_db, self.m) / 10.0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        kv("n", self.n.to_string());
        kv("k", self.k.to_string());
        kv("p", self.p.to_string());
        kv("m", self.m.to_string());
        // {:?} keeps every bit of the f64.
        kv("snr_db", self.snr_db.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(","));
        kv("snr_convention", self.snr_convention.to_string());
        kv("trials", self.trials.to_string());
        kv("seed", self.seed.to_string());
        kv("algorithms", list(&self.algorithms));
        kv("out", self.out.display().to_string());
        kv("design_crossover", format!("{:?}", self.design_crossover));
        kv("generator_seed", self.generator_seed.to_string());
        kv("biht_noise", self.biht_noise.to_string());
        kv("biht_step", format!("{:?}", self.biht_step));
        kv("biht_max_iters", self.biht_max_iters.to_string());
        out
    }

    /// Parses the key-value format; missing keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, raw) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, raw) = (key.trim(), raw.trim());
            match key {
                "n" => cfg.n = value(key, raw)?,
                "k" => cfg.k = value(key, raw)?,
                "p" => cfg.p = value(key, raw)?,
                "m" => cfg.m = value(key, raw)?,
                "snr_db" => cfg.snr_db = values(key, raw)?,
                "snr_convention" => cfg.snr_convention = raw.parse()?,
                "trials" => cfg.trials = value(key, raw)?,
                "seed" => cfg.seed = value(key, raw)?,
                "algorithms" => cfg.algorithms = values(key, raw)?,
                "out" => cfg.out = PathBuf::from(raw),
                "design_crossover" => cfg.design_crossover = value(key, raw)?,
                "generator_seed" => cfg.generator_seed = value(key, raw)?,
                "biht_noise" => cfg.biht_noise = raw.parse()?,
                "biht_step" => cfg.biht_step = value(key, raw)?,
                "biht_max_iters" => cfg.biht_max_iters = value(key, raw)?,
                _ => return Err(Error::Parse(format!("unknown key '{key}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}
