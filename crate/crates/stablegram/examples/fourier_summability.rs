//! Fourier coefficients of index functions and the summability diagnostics
//! that decide whether the limit theory applies to them.
//!
//! Run with: cargo run --example fourier_summability

use stablegram::funcs::{fourier_coeffs, geometric_sequence, indicator_sequence, FunctionSpec};
use stablegram::summability::{ell_alpha_log_norm, ell_alpha_norm, metric_d, HFunction};

fn main() -> stablegram::Result<()> {
    // Indicator coefficients a_k = sin(x k)/k.
    let coeffs = fourier_coeffs(&FunctionSpec::Indicator { x: 1.0 }, 8)?;
    println!("indicator [0,1] coefficients:");
    for (h, a) in coeffs.a.iter().enumerate() {
        println!("  a_{h} = {a:+.6}");
    }

    // The indicator sequence fails l^alpha for alpha <= 1; geometric
    // sequences pass at every alpha.
    let ind = indicator_sequence(1.0, 4096);
    let geo = geometric_sequence(0.5, 64);
    for alpha in [0.8, 1.0, 1.5] {
        let di = ell_alpha_norm(&ind, alpha)?;
        let dg = ell_alpha_norm(&geo, alpha)?;
        println!(
            "alpha {alpha}: indicator partial sum {:>8.3} [{:?}], geometric {:>7.4} [{:?}]",
            di.partial_sum, di.verdict, dg.partial_sum, dg.verdict
        );
    }

    // The l^alpha log l membership sum and the metric it induces.
    let h = HFunction::new(0.5)?;
    println!(
        "h(x) = |x|^0.5 log(b + 1/|x|) with concavity-verified b = {:.3} (b_min {:.3})",
        h.b(),
        h.b_min()
    );
    let mem = ell_alpha_log_norm(&geo, 0.5)?;
    println!("geometric membership sum {:.4} [{:?}]", mem.partial_sum, mem.verdict);
    let d = metric_d(&geo, &indicator_sequence(1.0, 64), 0.5)?;
    println!("d(geometric, indicator) = {:.4}", d.partial_sum);
    Ok(())
}
