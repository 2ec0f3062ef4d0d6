//! Remainder negligibility experiment for linear processes.
//!
//! With I_{n,X} = I_{n,eps} |psi|^2 + R_n, the scaled sup-functional
//! T_n = n (n log n)^(-1/alpha) sup_f |int_0^pi f R_n| must vanish in
//! probability under the filter summability condition. The integral is
//! evaluated exactly in coefficient space:
//!
//! ```text
//! int f R_n = J_{n,X}(f) - J_{n,eps}(f |psi|^2),
//! a_h(f |psi|^2) = r_0 A_h + sum_{m>=1} r_m (A_{h+m} + A_{|h-m|}),
//! ```
//!
//! where A is the coefficient table of f and r_m the cosine coefficients
//! of the power transfer function. No quadrature error enters the statistic.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::funcs::{fourier_coeffs, FunctionClass};
use crate::numeric::KahanSum;
use crate::rng::RngStream;
use crate::stats::{bootstrap_se, quantile};
use crate::summability::{filter_condition_check, FilterConditionReport, TailVerdict};
use crate::timeseries::{autocov_batch, simulate_linear, LinearFilter};

use super::{
    trend_nonincreasing_within_band, SeedsEcho, TrendPoint, BOOTSTRAP_RESAMPLES, CH_BOOT,
    CH_REPLICATES,
};

#[derive(Debug, Clone, Serialize)]
pub struct RemainderPerN {
    pub n: usize,
    pub replicates: usize,
    pub median: f64,
    pub median_boot_se: f64,
    pub q90: f64,
    pub q90_boot_se: f64,
}

#[derive(Debug, Clone)]
pub struct RemainderOutput {
    pub report: RemainderReport,
    /// Raw sup-functional statistics per n, one value per replicate.
    pub samples: Vec<(usize, Vec<f64>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RemainderReport {
    pub alpha: f64,
    pub tau: f64,
    pub filter_condition: FilterConditionReport,
    /// Set when the tagged filter extension violates the summability
    /// condition; the experiment still runs so violations can be studied.
    pub condition_warning: bool,
    pub class_members: usize,
    /// Discretization note of the function class (grid resolution).
    pub class_note: String,
    pub sup_l2_norm: f64,
    pub replicates: usize,
    pub seeds: SeedsEcho,
    pub per_n: Vec<RemainderPerN>,
    pub median_trend_nonincreasing: bool,
    pub q90_trend_nonincreasing: bool,
    /// median(first n) / median(last n); infinite when the last median is 0.
    pub median_shrink_factor: f64,
}

/// a_h(f |psi|^2) for h = 0..=h_max from the table A of f (which must reach
/// h_max + max lag of r) and the power-transfer cosine coefficients r.
fn product_filter_coeffs(a: &[f64], r: &[f64], h_max: usize) -> Vec<f64> {
    (0..=h_max)
        .map(|h| {
            let mut acc = KahanSum::new();
            acc.add(r[0] * a[h]);
            for (m, &rm) in r.iter().enumerate().skip(1) {
                acc.add(rm * (a[h + m] + a[h.abs_diff(m)]));
            }
            acc.value()
        })
        .collect()
}

/// J-form evaluation gamma(0) c_0 + 2 sum_{h>=1} c_h gamma(h).
fn coeff_form(c: &[f64], gammas: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    acc.add(c[0] * gammas[0]);
    for h in 1..c.len().min(gammas.len()) {
        acc.add(2.0 * c[h] * gammas[h]);
    }
    acc.value()
}

/// Run the remainder negligibility experiment over a dyadic n grid.
pub fn remainder_negligibility_experiment(
    alpha: f64,
    filter: &LinearFilter,
    class: &FunctionClass,
    n_grid: &[usize],
    replicates: usize,
    tau: f64,
    stream: RngStream,
) -> Result<RemainderOutput> {
    let filter_condition = filter_condition_check(filter, alpha, tau)?;
    let condition_warning = filter_condition.tail_verdict == Some(TailVerdict::Violated);
    let r = filter.power_transfer_cosine_coeffs();

    let boot_stream = stream.substream(CH_BOOT);
    let mut per_n = Vec::with_capacity(n_grid.len());
    let mut samples = Vec::with_capacity(n_grid.len());
    for (ni, &n) in n_grid.iter().enumerate() {
        // Coefficient tables per member, deep enough for the product shift.
        let tables: Vec<(Vec<f64>, Vec<f64>)> = class
            .members
            .iter()
            .map(|f| {
                let a = fourier_coeffs(f, n - 1 + (r.len() - 1))?.a;
                let a_psi = product_filter_coeffs(&a, &r, n - 1);
                Ok((a, a_psi))
            })
            .collect::<Result<_>>()?;

        let nf = n as f64;
        let scale = nf * (nf * nf.ln()).powf(-1.0 / alpha);
        let n_stream = stream.substream(CH_REPLICATES).substream(ni as u64);
        let sups: Vec<f64> = (0..replicates)
            .into_par_iter()
            .map(|rep| {
                let sim = simulate_linear(n, filter, alpha, n_stream.substream(rep as u64))
                    .expect("validated parameters");
                let gx = autocov_batch(&sim.x.values, n - 1);
                let ge = autocov_batch(&sim.innovations.values, n - 1);
                let mut sup = 0.0f64;
                for (a, a_psi) in &tables {
                    let jx = coeff_form(&a[..n.min(a.len())], &gx);
                    let je = coeff_form(a_psi, &ge);
                    sup = sup.max((jx - je).abs());
                }
                scale * sup
            })
            .collect();

        per_n.push(RemainderPerN {
            n,
            replicates,
            median: quantile(&sups, 0.5),
            median_boot_se: bootstrap_se(
                &sups,
                |s| quantile(s, 0.5),
                BOOTSTRAP_RESAMPLES,
                boot_stream.substream(2 * ni as u64),
            ),
            q90: quantile(&sups, 0.9),
            q90_boot_se: bootstrap_se(
                &sups,
                |s| quantile(s, 0.9),
                BOOTSTRAP_RESAMPLES,
                boot_stream.substream(2 * ni as u64 + 1),
            ),
        });
        samples.push((n, sups));
    }

    let medians: Vec<TrendPoint> = per_n
        .iter()
        .map(|p| TrendPoint {
            n: p.n,
            value: p.median,
            boot_se: p.median_boot_se,
        })
        .collect();
    let q90s: Vec<TrendPoint> = per_n
        .iter()
        .map(|p| TrendPoint {
            n: p.n,
            value: p.q90,
            boot_se: p.q90_boot_se,
        })
        .collect();
    let median_shrink_factor = match (per_n.first(), per_n.last()) {
        (Some(f), Some(l)) if l.median > 0.0 => f.median / l.median,
        (Some(f), _) if f.median == 0.0 => 1.0, // identically-zero statistic
        _ => f64::INFINITY,
    };

    let report = RemainderReport {
        alpha,
        tau,
        filter_condition,
        condition_warning,
        class_members: class.len(),
        class_note: class.grid_note.clone(),
        sup_l2_norm: class.sup_l2_norm(),
        replicates,
        seeds: stream.into(),
        per_n,
        median_trend_nonincreasing: trend_nonincreasing_within_band(&medians),
        q90_trend_nonincreasing: trend_nonincreasing_within_band(&q90s),
        median_shrink_factor,
    };
    Ok(RemainderOutput { report, samples })
}
