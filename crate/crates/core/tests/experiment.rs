use coded_cs::experiment::{read_rows, run_experiment, run_to_csv, Algorithm, ExperimentConfig, SnrConvention};

fn small(out: std::path::PathBuf) -> ExperimentConfig {
    ExperimentConfig {
        n: 63,
        k: 2,
        m: 40,
        snr_db: vec![14.0, 16.0, 18.0, f64::INFINITY],
        trials: 60,
        seed: 5,
        out,
        ..ExperimentConfig::default()
    }
}

#[test]
fn rows_are_identical_across_worker_counts() {
    let cfg = small("unused.csv".into());
    let one = run_experiment(&cfg, 1, false).unwrap();
    let many = run_experiment(&cfg, 5, false).unwrap();
    assert_eq!(one, many);
    assert_eq!(one.len(), 4);
    assert_eq!(one[3].successes, 60);
    assert!(one.iter().all(|r| r.mean_decode_ms.is_none()));
}

#[test]
fn resume_reuses_finished_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let cfg = small(out.clone());
    run_to_csv(&cfg, 2, false).unwrap();
    let full = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&out).unwrap();

    // Interrupted after the first point with a torn second line.
    let lines: Vec<&str> = full.lines().collect();
    let partial = dir.path().join("sweep.csv.partial");
    std::fs::write(&partial, format!("{}\n{}\ncoded,16,6", lines[0], lines[1])).unwrap();
    std::fs::write(dir.path().join("sweep.csv.partial.cfg"), cfg.to_text()).unwrap();
    run_to_csv(&cfg, 3, false).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), full);
    assert!(!partial.exists());

    // A finished row in the partial file is taken as is.
    let mut fake = read_rows(&format!("{}\n{}\n", lines[0], lines[1])).unwrap().remove(0);
    fake.successes = 59 - fake.successes.min(59);
    std::fs::write(&partial, format!("{}\n{}\n", lines[0], fake.to_csv())).unwrap();
    std::fs::write(dir.path().join("sweep.csv.partial.cfg"), cfg.to_text()).unwrap();
    let rows = run_to_csv(&cfg, 1, false).unwrap();
    assert_eq!(rows[0], fake);

    // A partial file from a different config is ignored.
    std::fs::write(&partial, format!("{}\n{}\n", lines[0], fake.to_csv())).unwrap();
    let mut other = cfg.clone();
    other.seed = 6;
    std::fs::write(dir.path().join("sweep.csv.partial.cfg"), other.to_text()).unwrap();
    run_to_csv(&cfg, 1, false).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), full);
}

#[test]
fn timing_column_is_filled_when_enabled() {
    let cfg = ExperimentConfig { snr_db: vec![f64::INFINITY], trials: 5, ..small("unused.csv".into()) };
    let rows = run_experiment(&cfg, 1, true).unwrap();
    assert!(rows[0].mean_decode_ms.unwrap() >= 0.0);
}

#[test]
fn both_algorithms_succeed_at_high_snr() {
    let cfg = ExperimentConfig {
        snr_db: vec![30.0],
        snr_convention: SnrConvention::Aggregate,
        trials: 100,
        seed: 3,
        algorithms: vec![Algorithm::Coded, Algorithm::Biht],
        ..ExperimentConfig::default()
    };
    let rows = run_experiment(&cfg, 4, false).unwrap();
    assert_eq!(rows.iter().map(|r| r.algorithm).collect::<Vec<_>>(), vec![Algorithm::Coded, Algorithm::Biht]);
    for row in rows {
        assert!(row.rate() >= 0.95, "{row:?}");
    }
}

#[test]
fn biht_needs_binary_alphabet() {
    let cfg =
        ExperimentConfig { n: 26, k: 1, p: 3, m: 12, algorithms: vec![Algorithm::Biht], ..ExperimentConfig::default() };
    assert!(run_experiment(&cfg, 1, false).is_err());
}
