//! Scaling of the normalized sample autocovariances: the gamma(0)
//! statistic converges to a positive stable law of index alpha/2 and the
//! lag statistics to symmetric stables of index alpha.
//!
//! Run with: cargo run --release --example autocov_scaling

use stablegram::experiments::autocov_scaling_experiment;
use stablegram::RngStream;

fn main() -> stablegram::Result<()> {
    let alpha = 1.2;
    let out = autocov_scaling_experiment(alpha, &[1024, 4096], 800, 2, RngStream::new(77, 0))?;
    println!(
        "alpha = {alpha}: targets hill(gamma0) = {}, hill(lags) = {alpha}",
        alpha / 2.0
    );
    for p in &out.report.per_n {
        println!(
            "n = {:>5}: positive fraction {:.3}, hill(gamma0) {:.3}, hill(lag1) {:.3}, hill(lag2) {:.3}, lag1/lag2 sign corr {:+.4} (band {:.4})",
            p.n,
            p.gamma0_positive_fraction,
            p.hill_gamma0.unwrap_or(f64::NAN),
            p.hill_lags[0].unwrap_or(f64::NAN),
            p.hill_lags[1].unwrap_or(f64::NAN),
            p.lag12_sign_correlation,
            p.independence_band
        );
    }
    Ok(())
}
