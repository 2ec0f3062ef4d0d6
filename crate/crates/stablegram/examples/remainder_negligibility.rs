//! The linear-process remainder: I_{n,X} = I_{n,eps} |psi|^2 + R_n, with
//! the scaled sup-functional of int f R_n vanishing as n grows whenever
//! the filter satisfies the summability condition.
//!
//! Run with: cargo run --release --example remainder_negligibility

use stablegram::experiments::remainder_negligibility_experiment;
use stablegram::funcs::{ClassKind, FunctionClass, FunctionSpec};
use stablegram::summability::filter_condition_check;
use stablegram::timeseries::LinearFilter;
use stablegram::RngStream;

fn main() -> stablegram::Result<()> {
    let alpha = 1.5;
    let filter = LinearFilter::ma1(0.5);
    let cond = filter_condition_check(&filter, alpha, 0.1)?;
    println!(
        "filter condition weighted sum {:.4}, tail verdict {:?}",
        cond.weighted_sum, cond.tail_verdict
    );

    let class = FunctionClass::new(
        vec![
            FunctionSpec::Constant(1.0),
            FunctionSpec::Indicator { x: 1.0 },
            FunctionSpec::Indicator { x: 2.0 },
        ],
        ClassKind::Custom,
        "constant plus two indicators",
    )?;
    let out = remainder_negligibility_experiment(
        alpha,
        &filter,
        &class,
        &[256, 1024, 4096],
        200,
        0.1,
        RngStream::new(99, 0),
    )?;
    let r = &out.report;
    println!("{:>6} {:>12} {:>12}", "n", "median", "q90");
    for p in &r.per_n {
        println!("{:>6} {:>12.5} {:>12.5}", p.n, p.median, p.q90);
    }
    println!(
        "median trend nonincreasing: {}, first/last shrink factor {:.2}",
        r.median_trend_nonincreasing, r.median_shrink_factor
    );
    Ok(())
}
