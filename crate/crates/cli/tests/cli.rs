use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coded-cs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("exp.cfg");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn design_dump_echoes_dimensions_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.design");
    let b = dir.path().join("b.design");
    assert!(run(&["design", "--out", a.to_str().unwrap()]).status.success());
    assert!(run(&["design", "--out", b.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("coded-cs-design v1 n=511 m=180 k=5 p=2\n"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn infeasible_design_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m = 80\n");
    let out = run(&["design", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rate infeasible"));
}

#[test]
fn theory_reports() {
    let out = run(&["theory", "--snr-db", "inf"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("sufficient m >= 90"));
    let out = run(&["theory", "--k", "0", "--snr-db", "-5"]);
    assert!(stdout(&out).contains("sufficient m >= 0"));
    let out = run(&["theory", "--snr-db", "-40"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unachievable"));
    // 0 dB aggregate is about 22.55 dB element-wise at m = 180.
    let out = run(&["theory", "--snr-db", "0", "--snr-convention", "aggregate", "--m", "180"]);
    assert!(stdout(&out).contains("element-wise SNR = 22.5527 dB"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--snr-convention", "sideways"]).status.code(), Some(1));
}

#[test]
fn io_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 63\nk = 1\nm = 24\ntrials = 2\nsnr_db = inf\n");
    let out = run(&["simulate", "--config", &cfg, "--out", "/dev/null/nope/out.csv"]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("missing.cfg");
    assert_eq!(run(&["simulate", "--config", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn simulate_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 63\nk = 2\nm = 40\ntrials = 40\nsnr_db = 15, 18, inf\nseed = 17\n");
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "4", "4"].iter().enumerate() {
        let path = dir.path().join(format!("r{i}.csv"));
        let out =
            run(&["simulate", "--config", &cfg, "--out", path.to_str().unwrap(), "--workers", workers, "--no-timing"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(text.starts_with("algorithm,snr_db,trials,successes,rate,ci_lo,ci_hi,mean_decode_ms\n"));
    assert!(text.contains("coded,inf,40,40,1.000000,"));
    assert!(!dir.path().join("r0.csv.partial").exists());
}

#[test]
fn seed_flag_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 63\nk = 2\nm = 40\ntrials = 200\nsnr_db = 17\n");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, seed) in [(&a, "1"), (&b, "2")] {
        let out = run(&["simulate", "--config", &cfg, "--out", path.to_str().unwrap(), "--seed", seed, "--no-timing"]);
        assert!(out.status.success());
    }
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn compare_smoke_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "trials = 1\nsnr_db = 30\n");
    let path = dir.path().join("cmp.csv");
    let start = Instant::now();
    let out = run(&["compare", "--config", &cfg, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(start.elapsed().as_secs_f64() < 10.0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("coded,30,1,"));
    assert!(lines[2].starts_with("biht,30,1,"));
}
