//! Covering numbers under the dyadic pseudo-metrics rho_k and the fitted
//! entropy slopes of the two built-in families.
//!
//! Run with: cargo run --example covering_entropy

use stablegram::covering::{covering_number, entropy_condition_fit, pseudo_metric_rho_k};
use stablegram::funcs::{FunctionClass, FunctionSpec};
use std::f64::consts::PI;

fn main() -> stablegram::Result<()> {
    let f = FunctionSpec::Indicator { x: 1.0 };
    let g = FunctionSpec::Indicator { x: 1.1 };
    for k in 0..4 {
        println!("rho_{k}(I_[0,1], I_[0,1.1]) = {:.4}", pseudo_metric_rho_k(&f, &g, k)?);
    }

    let class = FunctionClass::indicator_grid(200, PI)?;
    println!("indicator family (200 members), covering numbers:");
    for k in [1usize, 3, 5] {
        for eps in [0.25, 0.5, 1.0] {
            print!("  N({eps}, rho_{k}) = {:<4}", covering_number(&class, eps, k)?);
        }
        println!();
    }

    let big = FunctionClass::indicator_grid(1200, PI)?;
    let fit = entropy_condition_fit(&big, 1.5, 1.2, &[0.25, 0.5], &[2, 3, 4, 5, 6])?;
    println!(
        "indicator family slope {:.3} (VC bound exponent 1), const {:.3}, beta admissible: {}",
        fit.slope,
        fit.log_const.exp(),
        fit.beta_admissible
    );

    let holder = FunctionClass::holder_family_half(600, PI)?;
    let fit = entropy_condition_fit(&holder, 1.5, 0.7, &[0.0625, 0.125, 0.25, 0.5], &[2, 3, 4, 5, 6, 7])?;
    println!(
        "holder-half family slope {:.3} (expected a/b = 0.5), const {:.3}",
        fit.slope,
        fit.log_const.exp()
    );
    Ok(())
}
