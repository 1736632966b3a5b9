use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::config::{Algorithm, BihtNoise, ExperimentConfig};
use super::stats::{wilson_interval, WILSON_Z};
use crate::biht::{biht_recover, sign_measure_with_noise, BihtConfig, GaussianSensing};
use crate::error::{Error, Result};
use crate::lattice::ModulationSpec;
use crate::pipeline::{DecodeOptions, DesignParams, NoiseModel, SensingDesign, SparseSignal};

pub const CSV_HEADER: &str = "algorithm,snr_db,trials,successes,rate,ci_lo,ci_hi,mean_decode_ms";

const STREAM_SIGNAL: u64 = 0;
const STREAM_NOISE: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub algorithm: Algorithm,
    pub snr_db: f64,
    pub trials: usize,
    pub successes: usize,
    /// `None` when timing is disabled.
    pub mean_decode_ms: Option<f64>,
}

impl ResultRow {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.successes, self.trials, WILSON_Z)
    }

    pub fn to_csv(&self) -> String {
        let (lo, hi) = self.wilson();
        let ms = self.mean_decode_ms.map_or_else(|| "NA".to_string(), |v| format!("{v:.4}"));
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{}",
            self.algorithm,
            self.snr_db,
            self.trials,
            self.successes,
            self.rate(),
            lo,
            hi,
            ms
        )
    }

    pub fn from_csv(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 8 {
            return Err(Error::Parse(format!("expected 8 CSV fields: '{line}'")));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{s}'")));
        let int = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer '{s}'")));
        Ok(Self {
            algorithm: f[0].parse()?,
            snr_db: num(f[1])?,
            trials: int(f[2])?,
            successes: int(f[3])?,
            mean_decode_ms: if f[7] == "NA" { None } else { Some(num(f[7])?) },
        })
    }
}

/// Per-trial generator keyed by (master seed, SNR grid value, trial, stream).
pub fn trial_rng(seed: u64, snr_db: f64, trial: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&snr_db.to_bits().to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    key[24..].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Mean per-entry power of the p-point constellation.
pub fn constellation_power(spec: &ModulationSpec) -> f64 {
    let p = spec.p();
    (0..p).map(|c| spec.index_to_real(spec.reduce_index(c as i64)).powi(2)).sum::<f64>() / p as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub success: bool,
    pub decode_time: Duration,
}

struct Systems {
    design: SensingDesign,
    gaussian: Option<GaussianSensing>,
}

impl Systems {
    fn build(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let mut params = DesignParams::new(cfg.n, cfg.k, cfg.p, cfg.m);
        params.design_crossover = cfg.design_crossover;
        params.generator_seed = cfg.generator_seed;
        let design = SensingDesign::build(&params)?;
        let gaussian = if cfg.algorithms.contains(&Algorithm::Biht) {
            if cfg.p != 2 {
                return Err(Error::AlphabetUnsupported(cfg.p));
            }
            Some(GaussianSensing::new(cfg.m, cfg.n, cfg.seed.wrapping_add(0x9E37_79B9_7F4A_7C15))?)
        } else {
            None
        };
        Ok(Self { design, gaussian })
    }

    fn trial(&self, cfg: &ExperimentConfig, snr_db: f64, trial: u64) -> Result<Vec<TrialOutcome>> {
        let snr = cfg.elementwise_snr(snr_db);
        let tau = self.design.modulation().tau();
        let noise = NoiseModel::from_snr(snr, tau, cfg.m)?;
        let x = SparseSignal::random(cfg.n, cfg.k, cfg.p, &mut trial_rng(cfg.seed, snr_db, trial, STREAM_SIGNAL));
        // One standard-normal draw per measurement, shared by every algorithm.
        let mut rng = trial_rng(cfg.seed, snr_db, trial, STREAM_NOISE);
        let z: Vec<f64> = (0..cfg.m).map(|_| Distribution::<f64>::sample(&StandardNormal, &mut rng)).collect();
        let var = noise.per_entry_variance();

        cfg.algorithms
            .iter()
            .map(|alg| match alg {
                Algorithm::Coded => {
                    let sd = var.sqrt();
                    let n: Vec<f64> = z.iter().map(|v| v * sd).collect();
                    let y = self.design.sense_with_noise(&x, &n)?;
                    let opts = DecodeOptions::genie(&self.design, &noise)?;
                    let start = Instant::now();
                    let out = self.design.decode(&y, &opts)?;
                    Ok(TrialOutcome { success: out.estimate == x, decode_time: start.elapsed() })
                }
                Algorithm::Biht => {
                    let phi = self.gaussian.as_ref().expect("built when biht is selected");
                    let sd = match cfg.biht_noise {
                        BihtNoise::SameSigma => var.sqrt(),
                        BihtNoise::PowerMatched => {
                            (var / (cfg.m as f64 * constellation_power(self.design.modulation()))).sqrt()
                        }
                    };
                    let n: Vec<f64> = z.iter().map(|v| v * sd).collect();
                    let signs = sign_measure_with_noise(phi, &x, &n)?;
                    let bcfg = BihtConfig { step_size: cfg.biht_step, max_iters: cfg.biht_max_iters, k: cfg.k };
                    let start = Instant::now();
                    let xhat = biht_recover(&signs, phi, &bcfg)?;
                    Ok(TrialOutcome { success: xhat == x, decode_time: start.elapsed() })
                }
            })
            .collect()
    }

    fn point(&self, cfg: &ExperimentConfig, snr_db: f64, timing: bool) -> Result<Vec<ResultRow>> {
        let outcomes: Vec<Vec<TrialOutcome>> =
            (0..cfg.trials as u64).into_par_iter().map(|t| self.trial(cfg, snr_db, t)).collect::<Result<_>>()?;
        Ok(cfg
            .algorithms
            .iter()
            .enumerate()
            .map(|(a, &algorithm)| {
                let successes = outcomes.iter().filter(|o| o[a].success).count();
                let total: Duration = outcomes.iter().map(|o| o[a].decode_time).sum();
                ResultRow {
                    algorithm,
                    snr_db,
                    trials: cfg.trials,
                    successes,
                    mean_decode_ms: timing.then(|| total.as_secs_f64() * 1e3 / cfg.trials as f64),
                }
            })
            .collect())
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Runs every (SNR, algorithm) point in memory.
pub fn run_experiment(cfg: &ExperimentConfig, workers: usize, timing: bool) -> Result<Vec<ResultRow>> {
    let systems = Systems::build(cfg)?;
    pool(workers)?.install(|| {
        let mut rows = Vec::new();
        for &snr_db in &cfg.snr_db {
            rows.extend(systems.point(cfg, snr_db, timing)?);
        }
        Ok(rows)
    })
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn write_rows<W: Write>(mut w: W, rows: &[ResultRow]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.to_csv())?;
    }
    Ok(())
}

pub fn read_rows(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Parse("missing or unexpected CSV header".into()));
    }
    lines.filter(|l| !l.trim().is_empty()).map(ResultRow::from_csv).collect()
}

/// Runs the sweep into `cfg.out`.
///
/// Rows go to `<out>.partial` as each SNR point finishes, and the file is
/// renamed to `<out>` at the end. An existing partial file written under the
/// same config (recorded in `<out>.partial.cfg`) is resumed: its rows are kept
/// and only missing points are run. Every trial is keyed by (seed, SNR, trial),
/// so a resumed sweep matches an uninterrupted one.
pub fn run_to_csv(cfg: &ExperimentConfig, workers: usize, timing: bool) -> Result<Vec<ResultRow>> {
    let systems = Systems::build(cfg)?;
    let partial = with_suffix(&cfg.out, ".partial");
    let sidecar = with_suffix(&cfg.out, ".partial.cfg");
    let fingerprint = cfg.to_text();

    let mut done: Vec<ResultRow> = Vec::new();
    if partial.exists() && fs::read_to_string(&sidecar).ok().as_deref() == Some(fingerprint.as_str()) {
        // A torn final line is simply dropped.
        if let Ok(text) = fs::read_to_string(&partial) {
            let mut lines = text.lines();
            if lines.next() == Some(CSV_HEADER) {
                done = lines.filter_map(|l| ResultRow::from_csv(l).ok()).filter(|r| r.trials == cfg.trials).collect();
            }
        }
    }

    if let Some(dir) = cfg.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(&sidecar, &fingerprint)?;
    let mut w = BufWriter::new(File::create(&partial)?);
    writeln!(w, "{CSV_HEADER}")?;
    w.flush()?;

    let pool = pool(workers)?;
    let mut rows = Vec::new();
    for &snr_db in &cfg.snr_db {
        let cached: Vec<ResultRow> = cfg
            .algorithms
            .iter()
            .filter_map(|&a| done.iter().find(|r| r.algorithm == a && r.snr_db.to_bits() == snr_db.to_bits()).cloned())
            .collect();
        let point = if cached.len() == cfg.algorithms.len() {
            cached
        } else {
            pool.install(|| systems.point(cfg, snr_db, timing))?
        };
        for row in &point {
            writeln!(w, "{}", row.to_csv())?;
        }
        w.flush()?;
        rows.extend(point);
    }
    w.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    fs::rename(&partial, &cfg.out)?;
    fs::remove_file(&sidecar)?;
    Ok(rows)
}
