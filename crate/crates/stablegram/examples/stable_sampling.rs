//! Draw symmetric and positive stable variates and check them against the
//! characteristic function.
//!
//! Run with: cargo run --example stable_sampling

use stablegram::stable::{
    charfn_modulus, empirical_charfn, sample_positive_stable, sample_sas, StableLaw,
};
use stablegram::RngStream;

fn main() -> stablegram::Result<()> {
    let stream = RngStream::new(2024, 0);
    let n = 200_000;

    println!("S_alpha(1,0,0) draws vs exp(-|t|^alpha), N = {n}:");
    for alpha in [0.8, 1.2, 1.7] {
        let law = StableLaw::sas(alpha, 1.0)?;
        let xs = sample_sas(&law, stream.substream(alpha.to_bits()), n)?;
        print!("  alpha {alpha}:");
        for t in [0.5, 1.0, 2.0] {
            let phi = empirical_charfn(&xs, t)?;
            print!(
                "  t={t}: {:+.4}{:+.4}i (target {:.4})",
                phi.re,
                phi.im,
                charfn_modulus(alpha, 1.0, t)
            );
        }
        println!();
    }

    let ys = sample_positive_stable(0.75, 1.0, stream.substream(99), n)?;
    let min = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut sorted = ys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!(
        "S_0.75(1,1,0) draws: min {min:.6} (all positive), median {:.4}",
        sorted[n / 2]
    );
    Ok(())
}
