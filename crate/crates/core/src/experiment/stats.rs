/// Two-sided 95% standard normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // The bounds touch 0 and 1 exactly at the extremes; keep rounding from
    // pushing them past the point estimate.
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Score-test inversion solved by bisection.
        fn oracle(s: usize, n: usize, upper: bool) -> f64 {
            let phat = s as f64 / n as f64;
            let f = |q: f64| (phat - q).abs() - WILSON_Z * (q * (1.0 - q) / n as f64).sqrt();
            let (mut lo, mut hi) = if upper { (phat, 1.0) } else { (0.0, phat) };
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                // f < 0 inside the interval.
                if (f(mid) < 0.0) == upper {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
        for (s, n) in [(0, 10), (5, 10), (10, 10), (1, 500), (250, 500), (499, 500)] {
            let (lo, hi) = wilson_interval(s, n, WILSON_Z);
            assert!((lo - oracle(s, n, false)).abs() < 1e-9, "{s}/{n}");
            assert!((hi - oracle(s, n, true)).abs() < 1e-9, "{s}/{n}");
            let rate = s as f64 / n as f64;
            assert!(lo <= rate && rate <= hi);
        }
    }
}
