//! Coefficient-form integrated periodogram over a small function catalog,
//! with the self-normalized version alongside.
//!
//! Run with: cargo run --example integrated_periodogram

use stablegram::funcs::{fourier_coeffs, FunctionSpec};
use stablegram::spectral::{integrated_periodogram, self_normalized_integrated_periodogram};
use stablegram::timeseries::{simulate_iid, LinearFilter};
use stablegram::RngStream;
use std::f64::consts::PI;

fn main() -> stablegram::Result<()> {
    let n = 256;
    let path = simulate_iid(n, 1.5, RngStream::new(11, 0))?;
    let catalog: Vec<(&str, FunctionSpec)> = vec![
        ("constant 1", FunctionSpec::Constant(1.0)),
        ("indicator [0,1]", FunctionSpec::Indicator { x: 1.0 }),
        ("indicator [0,pi]", FunctionSpec::Indicator { x: PI }),
        ("cos(2 lambda)", FunctionSpec::Cosine { k: 2 }),
        (
            "MA(1) spectral density",
            FunctionSpec::ArmaSpectralDensity {
                filter: LinearFilter::ma1(0.5),
                scale: 1.0,
            },
        ),
    ];

    println!("{:<24} {:>14} {:>14}", "f", "J_n(f)", "J_n(f)/gamma(0)");
    for (name, f) in &catalog {
        let coeffs = fourier_coeffs(f, n - 1)?;
        let j = integrated_periodogram(&path, &coeffs);
        let jt = self_normalized_integrated_periodogram(&path, &coeffs)?;
        println!("{name:<24} {j:>14.6} {jt:>14.6}");
    }
    Ok(())
}
