//! Simulate a heavy-tailed MA(1) process, evaluate its periodogram two
//! ways, and export the path as CSV with a JSON sidecar.
//!
//! Run with: cargo run --example linear_process

use stablegram::io::write_spectral_csv;
use stablegram::spectral::{periodogram, periodogram_via_autocov, power_transfer, SpectralEvaluation};
use stablegram::timeseries::{export_path_csv, simulate_linear, LinearFilter};
use stablegram::RngStream;
use std::f64::consts::PI;

fn main() -> stablegram::Result<()> {
    let filter = LinearFilter::ma1(0.5);
    let sim = simulate_linear(512, &filter, 1.5, RngStream::new(7, 1))?;

    println!("lambda     I_n(lambda)   autocov form   |psi|^2");
    let mut evals = Vec::new();
    for i in 1..=8 {
        let lambda = PI * i as f64 / 8.0;
        let direct = periodogram(&sim.x, lambda)?;
        let via = periodogram_via_autocov(&sim.x, lambda)?;
        println!(
            "{lambda:.4}   {direct:>12.6}  {via:>12.6}  {:>8.4}",
            power_transfer(&filter, lambda)
        );
        assert!((direct - via).abs() <= 1e-9 * (1.0 + direct));
        evals.push(SpectralEvaluation { lambda, value: direct });
    }

    let out = std::env::temp_dir().join("stablegram_ma1_path.csv");
    export_path_csv(&out, &sim.x)?;
    let spec_out = std::env::temp_dir().join("stablegram_ma1_periodogram.csv");
    write_spectral_csv(&spec_out, &evals)?;
    println!("path written to {} (with .json sidecar)", out.display());
    println!("periodogram grid written to {}", spec_out.display());
    Ok(())
}
