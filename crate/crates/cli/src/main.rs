//! `coded-cs`: build designs, run recovery sweeps, and evaluate the
//! measurement bound from the command line.
//!
//! Exit codes: 0 success, 1 usage or internal error, 2 infeasible or invalid
//! configuration, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coded_cs::experiment::{run_to_csv, theory_report, Algorithm, ExperimentConfig, SnrConvention};
use coded_cs::pipeline::{DesignParams, SensingDesign};
use coded_cs::Error;

#[derive(Parser)]
#[command(name = "coded-cs", version, about = "Sparse recovery experiments with lattice-coded sensing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the sensing design and write its dump.
    Design {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Dump destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo recovery sweep over the SNR grid.
    Simulate(RunArgs),
    /// Print the quantized-noise law, entropy and sufficient m.
    Theory {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<u32>,
        /// Also report rate feasibility of 2k·s / m.
        #[arg(long)]
        m: Option<usize>,
        /// SNR in dB; `inf` for the noiseless limit.
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long)]
        snr_convention: Option<SnrConvention>,
    },
    /// Coded pipeline and BIHT on matched noise, one CSV.
    Compare(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    snr_convention: Option<SnrConvention>,
    /// Write `NA` in the timing column so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

fn load(path: Option<&PathBuf>) -> coded_cs::Result<ExperimentConfig> {
    path.map_or_else(|| Ok(ExperimentConfig::default()), |p| ExperimentConfig::load(p))
}

fn design_params(cfg: &ExperimentConfig) -> DesignParams {
    let mut params = DesignParams::new(cfg.n, cfg.k, cfg.p, cfg.m);
    params.design_crossover = cfg.design_crossover;
    params.generator_seed = cfg.generator_seed;
    params
}

fn run(args: RunArgs, compare: bool) -> coded_cs::Result<()> {
    let mut cfg = load(args.config.as_ref())?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = args.out {
        cfg.out = out;
    }
    if let Some(conv) = args.snr_convention {
        cfg.snr_convention = conv;
    }
    if compare {
        cfg.algorithms = vec![Algorithm::Coded, Algorithm::Biht];
    }
    let workers = args.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let rows = run_to_csv(&cfg, workers, !args.no_timing)?;
    eprintln!("snr convention: {}", cfg.snr_convention);
    if compare {
        eprintln!("biht noise: {}", cfg.biht_noise);
    }
    for row in &rows {
        eprintln!("{:>6} {:>8} dB  rate {:.4}", row.algorithm.to_string(), row.snr_db, row.rate());
    }
    eprintln!("wrote {}", cfg.out.display());
    Ok(())
}

fn execute(cli: Cli) -> coded_cs::Result<()> {
    match cli.command {
        Command::Design { config, out } => {
            let cfg = load(config.as_ref())?;
            let dump = SensingDesign::build(&design_params(&cfg))?.dump();
            match out {
                Some(path) => std::fs::write(path, dump)?,
                None => print!("{dump}"),
            }
            Ok(())
        }
        Command::Simulate(args) => run(args, false),
        Command::Compare(args) => run(args, true),
        Command::Theory { config, n, k, p, m, snr_db, snr_convention } => {
            let mut cfg = load(config.as_ref())?;
            cfg.n = n.unwrap_or(cfg.n);
            cfg.k = k.unwrap_or(cfg.k);
            cfg.p = p.unwrap_or(cfg.p);
            cfg.m = m.unwrap_or(cfg.m);
            cfg.snr_convention = snr_convention.unwrap_or(cfg.snr_convention);
            let report = theory_report(cfg.n, cfg.k, cfg.p, cfg.elementwise_snr(snr_db), m)?;
            print!("{report}");
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        Error::RateInfeasible(_)
        | Error::InvalidParameter(_)
        | Error::NotPrime(_)
        | Error::FieldTooSmall { .. }
        | Error::AlphabetUnsupported(_)
        | Error::SearchSpaceTooLarge(_)
        | Error::Unachievable(_)
        | Error::InvalidModulus(_)
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
