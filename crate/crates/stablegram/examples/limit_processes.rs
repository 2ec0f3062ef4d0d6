//! Sample the limit objects Y_0, Y(a), and Y~(a) = Y(a)/Y_0 and verify
//! stable additivity through the empirical characteristic function.
//!
//! Run with: cargo run --example limit_processes

use stablegram::funcs::geometric_sequence;
use stablegram::limit::{
    export_limit_csv, sample_limit_vector, sample_y_of_a, sample_y_tilde_of_a, LimitScales,
};
use stablegram::stable::stable_scale_estimate;
use stablegram::stats::{iqr, median};
use stablegram::RngStream;

fn main() -> stablegram::Result<()> {
    let alpha = 1.2;
    let scales = LimitScales::configured();
    let stream = RngStream::new(31, 0);

    let (y0, ys) = sample_limit_vector(alpha, &scales, 4, stream)?;
    println!("limit vector draw: Y_0 = {y0:.4} (positive), Y_1..4 = {ys:.4?}");

    // Y(a) with a = (1, 1) is S_alpha with scale 2^(1/alpha).
    let draws = sample_y_of_a(&[1.0, 1.0], alpha, &scales, stream.substream(1), 200_000)?;
    let est = stable_scale_estimate(&draws.values, alpha, &[0.125, 0.25, 0.5, 1.0])?;
    println!(
        "scale of Y((1,1)): estimated {est:.4}, stable additivity predicts {:.4}",
        2f64.powf(1.0 / alpha)
    );

    let a = geometric_sequence(0.5, 48);
    let ratio = sample_y_tilde_of_a(&a, alpha, &scales, stream.substream(2), 100_000)?;
    println!(
        "Y~(geometric): median {:.4}, IQR {:.4} (finite despite infinite-mean numerator)",
        median(&ratio.values),
        iqr(&ratio.values)
    );

    let out = std::env::temp_dir().join("stablegram_limit_sample.csv");
    export_limit_csv(&out, &ratio, alpha, &scales, a.len(), stream.substream(2))?;
    println!("limit sample written to {} (with .json sidecar)", out.display());
    Ok(())
}
