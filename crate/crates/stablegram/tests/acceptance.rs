//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them). Every tolerance, grid, seed, and runtime budget is pinned here.

mod common;

use common::quadrature_integrated_periodogram;
use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use stablegram::config::ExperimentConfig;
use stablegram::covering::entropy_condition_fit;
use stablegram::experiments::{
    autocov_scaling_experiment, fidi_experiment, normalized_statistic_xn,
    quadratic_form_tail_check, remainder_negligibility_experiment, CoeffSpec, QuadraticFormSpec,
};
use stablegram::funcs::{fourier_coeffs, FunctionClass, FunctionSpec};
use stablegram::io::OutputFormat;
use stablegram::limit::LimitScales;
use stablegram::rng::RngStream;
use stablegram::runner::{run_experiment, RunOptions};
use stablegram::spectral::{integrated_periodogram, periodogram, periodogram_via_autocov};
use stablegram::stable::{charfn_modulus, empirical_charfn, sample_sas, StableLaw};
use stablegram::timeseries::{simulate_iid, LinearFilter};

const MASTER_SEED: u64 = 0xACC;

fn stream(id: u64) -> RngStream {
    RngStream::new(MASTER_SEED, id)
}

fn report(criterion: &str, pass: bool, detail: &str, elapsed: Duration) {
    println!(
        "criterion {criterion}: {} ({detail}) [{:.2?}]",
        if pass { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn budget(criterion: &str, elapsed: Duration, max: Duration) {
    assert!(
        elapsed <= max,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.2?} > {max:.2?}"
    );
}

#[test]
fn criterion_01_periodogram_decomposition_identity() {
    let t0 = Instant::now();
    let mut rng_lengths = stream(1).rng();
    use rand::Rng;
    let mut max_rel: f64 = 0.0;
    for path_idx in 0..100u64 {
        let n = rng_lengths.gen_range(1..=256usize);
        let path = simulate_iid(n, 1.5, stream(1).substream(path_idx)).unwrap();
        for j in 0..64 {
            let lambda = PI * j as f64 / 63.0;
            let direct = periodogram(&path, lambda).unwrap();
            let via = periodogram_via_autocov(&path, lambda).unwrap();
            max_rel = max_rel.max((direct - via).abs() / (1.0 + direct));
        }
    }
    let elapsed = t0.elapsed();
    report(
        "01 decomposition-identity",
        max_rel <= 1e-9,
        &format!("max deviation {max_rel:.2e} vs 1e-9"),
        elapsed,
    );
    budget("01", elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_02_coefficient_form_vs_quadrature() {
    let t0 = Instant::now();
    let catalog: Vec<FunctionSpec> = vec![
        FunctionSpec::Constant(1.0),
        FunctionSpec::Indicator { x: 0.5 },
        FunctionSpec::Indicator { x: 1.0 },
        FunctionSpec::Indicator { x: PI },
        FunctionSpec::Cosine { k: 1 },
        FunctionSpec::Cosine { k: 3 },
        FunctionSpec::ArmaSpectralDensity {
            filter: LinearFilter::ma1(0.5),
            scale: 1.0,
        },
        FunctionSpec::HolderMember {
            family: 0,
            theta: 0.4,
        },
        FunctionSpec::Tabulated {
            grid: vec![0.0, 0.9, 2.1, PI],
            values: vec![0.2, 1.3, -0.4, 0.8],
        },
    ];
    let mut worst: f64 = 0.0;
    for (i, &n) in [16usize, 64, 256].iter().enumerate() {
        let path = simulate_iid(n, 1.5, stream(2).substream(i as u64)).unwrap();
        for f in &catalog {
            let coeffs = fourier_coeffs(f, n - 1).unwrap();
            let j_coeff = integrated_periodogram(&path, &coeffs);
            let j_quad = quadrature_integrated_periodogram(&path, f, 1e-8);
            worst = worst.max((j_coeff - j_quad).abs() / (1.0 + j_quad.abs()));
        }
    }
    let elapsed = t0.elapsed();
    report(
        "02 coefficient-vs-quadrature",
        worst <= 1e-6,
        &format!("max relative deviation {worst:.2e} vs 1e-6"),
        elapsed,
    );
    budget("02", elapsed, Duration::from_secs(30));
}

#[test]
fn criterion_03_indicator_coefficients_exact() {
    let t0 = Instant::now();
    let mut max_err: f64 = 0.0;
    for &x in &[0.5, 1.0, PI] {
        let coeffs = fourier_coeffs(&FunctionSpec::Indicator { x }, 1000).unwrap();
        for k in 1..=1000usize {
            let expected = (x * k as f64).sin() / k as f64;
            max_err = max_err.max((coeffs.coeff(k) - expected).abs());
        }
    }
    let elapsed = t0.elapsed();
    report(
        "03 indicator-coefficients",
        max_err <= 1e-12,
        &format!("max deviation {max_err:.2e} vs 1e-12"),
        elapsed,
    );
}

#[test]
fn criterion_04_sas_characteristic_function() {
    let t0 = Instant::now();
    let n = 1_000_000usize;
    let tol = 5.0 / (n as f64).sqrt();
    let mut worst: f64 = 0.0;
    for (i, &alpha) in [0.6, 1.0, 1.5, 1.9].iter().enumerate() {
        let law = StableLaw::sas(alpha, 1.0).unwrap();
        let xs = sample_sas(&law, stream(4).substream(i as u64), n).unwrap();
        for &t in &[0.25, 0.5, 1.0, 2.0] {
            let phi = empirical_charfn(&xs, t).unwrap();
            let target = charfn_modulus(alpha, 1.0, t);
            let dev = ((phi.re - target).powi(2) + phi.im.powi(2)).sqrt();
            worst = worst.max(dev / tol);
        }
    }
    let elapsed = t0.elapsed();
    report(
        "04 sas-charfn",
        worst <= 1.0,
        &format!("max deviation {:.3} of the 5/sqrt(N) band", worst),
        elapsed,
    );
    budget("04", elapsed, Duration::from_secs(60));
}

#[test]
fn criterion_05_autocov_scaling_exponents() {
    let t0 = Instant::now();
    let out = autocov_scaling_experiment(1.5, &[1 << 14], 2000, 2, stream(35)).unwrap();
    let p = &out.report.per_n[0];
    let h0 = p.hill_gamma0.unwrap_or(f64::NAN);
    let h1 = p.hill_lags[0].unwrap_or(f64::NAN);
    let pass = p.gamma0_positive_fraction == 1.0
        && (0.6..=0.9).contains(&h0)
        && (1.3..=1.7).contains(&h1);
    let elapsed = t0.elapsed();
    report(
        "05 autocov-scaling-exponents",
        pass,
        &format!(
            "gamma0 positive fraction {}, hill(gamma0) {h0:.3} in [0.6,0.9], hill(lag1) {h1:.3} in [1.3,1.7]",
            p.gamma0_positive_fraction
        ),
        elapsed,
    );
    budget("05", elapsed, Duration::from_secs(600));
}

// Criteria 6 and 7 share the fidi runs; computed once.
struct FidiRuns {
    geometric_07: stablegram::experiments::FidiReport,
    geometric_15: stablegram::experiments::FidiReport,
    indicator_08: stablegram::experiments::FidiReport,
    elapsed: Duration,
}

fn fidi_runs() -> &'static FidiRuns {
    static RUNS: OnceLock<FidiRuns> = OnceLock::new();
    RUNS.get_or_init(|| {
        let t0 = Instant::now();
        let n_grid = [1 << 8, 1 << 10, 1 << 12, 1 << 14];
        let geometric = CoeffSpec::Geometric {
            ratio: 0.5,
            truncation: 64,
        };
        let scales = LimitScales::configured();
        let geometric_07 =
            fidi_experiment(0.7, &geometric, &n_grid, 1000, 4000, &scales, stream(6))
                .unwrap()
                .report;
        let geometric_15 =
            fidi_experiment(1.5, &geometric, &n_grid, 1000, 4000, &scales, stream(7))
                .unwrap()
                .report;
        let indicator_08 = fidi_experiment(
            0.8,
            &CoeffSpec::Indicator { x: 1.0 },
            &n_grid,
            1000,
            4000,
            &scales,
            stream(8),
        )
        .unwrap()
        .report;
        FidiRuns {
            geometric_07,
            geometric_15,
            indicator_08,
            elapsed: t0.elapsed(),
        }
    })
}

#[test]
fn criterion_06_fidi_ks_trend() {
    let runs = fidi_runs();
    let fmt_ks = |r: &stablegram::experiments::FidiReport| {
        r.per_n
            .iter()
            .map(|p| format!("{:.4}", p.ks_standardized))
            .collect::<Vec<_>>()
            .join(" -> ")
    };
    let pass =
        runs.geometric_07.ks_trend_nonincreasing && runs.geometric_15.ks_trend_nonincreasing;
    report(
        "06 fidi-ks-trend",
        pass,
        &format!(
            "alpha 0.7 KS {} (nonincreasing {}), alpha 1.5 KS {} (nonincreasing {})",
            fmt_ks(&runs.geometric_07),
            runs.geometric_07.ks_trend_nonincreasing,
            fmt_ks(&runs.geometric_15),
            runs.geometric_15.ks_trend_nonincreasing
        ),
        runs.elapsed,
    );
    budget("06", runs.elapsed, Duration::from_secs(900));
}

#[test]
fn criterion_07_indicator_non_tightness_signal() {
    let runs = fidi_runs();
    let ind = &runs.indicator_08;
    let iqrs: Vec<String> = ind.per_n.iter().map(|p| format!("{:.3}", p.xn_iqr)).collect();
    // The diverging case must not shrink (here it grows significantly),
    // while the convergent geometric case shrinks significantly after
    // standardization; the two verdicts are both carried by the reports.
    let pass = ind.non_tightness_expected
        && ind.iqr_non_shrinking
        && ind.iqr_significant_increase
        && runs.geometric_07.ks_trend_nonincreasing
        && runs.geometric_07.ks_decreased;
    report(
        "07 indicator-non-tightness",
        pass,
        &format!(
            "indicator IQR {} (non-shrinking {}, significant increase {}); geometric KS decreased {} (significant {})",
            iqrs.join(" -> "),
            ind.iqr_non_shrinking,
            ind.iqr_significant_increase,
            runs.geometric_07.ks_decreased,
            runs.geometric_07.ks_significant_decrease
        ),
        runs.elapsed,
    );
}

#[test]
fn criterion_08_quadratic_form_tail_bound() {
    let t0 = Instant::now();
    let alpha = 0.7;
    let n = 64;
    let x_grid = [1.0, 4.0, 16.0, 64.0];
    let replicates = 100_000;
    let specs: Vec<(&str, Vec<f64>)> = vec![
        ("2^-k", (1..=40).map(|k| 0.5f64.powi(k)).collect()),
        ("k^-3", (1..=63).map(|k| (k as f64).powi(-3)).collect()),
        ("e_1", vec![1.0]),
    ];
    let mut max_ratios = Vec::new();
    for (i, (label, a)) in specs.iter().enumerate() {
        let spec = QuadraticFormSpec::toeplitz(n, a).unwrap();
        let out =
            quadratic_form_tail_check(&spec, alpha, &x_grid, replicates, stream(9).substream(i as u64))
                .unwrap();
        max_ratios.push((*label, out.report.max_ratio.unwrap()));
    }
    let hi = max_ratios.iter().map(|r| r.1).fold(0.0f64, f64::max);
    let lo = max_ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let spread = hi / lo;
    let elapsed = t0.elapsed();
    report(
        "08 qform-tail-bound",
        spread < 10.0,
        &format!(
            "ratio envelopes {:?}, spread {spread:.2} vs 10",
            max_ratios
                .iter()
                .map(|(l, r)| format!("{l}: {r:.4}"))
                .collect::<Vec<_>>()
        ),
        elapsed,
    );
    budget("08", elapsed, Duration::from_secs(600));
}

#[test]
fn criterion_09_remainder_negligibility() {
    let t0 = Instant::now();
    let class = FunctionClass::new(
        vec![
            FunctionSpec::Constant(1.0),
            FunctionSpec::Indicator { x: 1.0 },
            FunctionSpec::Indicator { x: 2.0 },
        ],
        stablegram::funcs::ClassKind::Custom,
        "constant plus two indicators",
    )
    .unwrap();
    let n_grid = [1 << 8, 1 << 9, 1 << 10, 1 << 11, 1 << 12, 1 << 13];
    let ma1 = remainder_negligibility_experiment(
        1.5,
        &LinearFilter::ma1(0.5),
        &class,
        &n_grid,
        500,
        0.1,
        stream(10),
    )
    .unwrap()
    .report;
    let identity = remainder_negligibility_experiment(
        1.5,
        &LinearFilter::identity(),
        &class,
        &[1 << 8, 1 << 10],
        50,
        0.1,
        stream(11),
    )
    .unwrap()
    .report;
    let medians: Vec<String> = ma1.per_n.iter().map(|p| format!("{:.4}", p.median)).collect();
    let identity_zero = identity.per_n.iter().all(|p| p.median == 0.0 && p.q90 == 0.0);
    let pass = ma1.median_shrink_factor >= 2.0 && identity_zero;
    let elapsed = t0.elapsed();
    report(
        "09 remainder-negligibility",
        pass,
        &format!(
            "MA(1) medians {} (shrink factor {:.2} vs 2), identity filter identically zero: {identity_zero}",
            medians.join(" -> "),
            ma1.median_shrink_factor
        ),
        elapsed,
    );
    budget("09", elapsed, Duration::from_secs(900));
}

#[test]
fn criterion_10_entropy_slope_fits() {
    let t0 = Instant::now();
    let indicator = FunctionClass::indicator_grid(2000, PI).unwrap();
    let fit_ind =
        entropy_condition_fit(&indicator, 1.5, 1.2, &[0.25, 0.5], &[2, 3, 4, 5, 6]).unwrap();
    let holder = FunctionClass::holder_family_half(1000, PI).unwrap();
    let fit_hold = entropy_condition_fit(
        &holder,
        1.5,
        0.7,
        &[0.0625, 0.125, 0.25, 0.5],
        &[2, 3, 4, 5, 6, 7],
    )
    .unwrap();
    let pass = (0.8..=1.2).contains(&fit_ind.slope) && (0.35..=0.65).contains(&fit_hold.slope);
    let elapsed = t0.elapsed();
    report(
        "10 entropy-fits",
        pass,
        &format!(
            "indicator slope {:.3} in [0.8,1.2], holder slope {:.3} in [0.35,0.65]",
            fit_ind.slope, fit_hold.slope
        ),
        elapsed,
    );
    budget("10", elapsed, Duration::from_secs(300));
}

#[test]
fn criterion_11_brute_force_equivalence() {
    let t0 = Instant::now();
    let alpha = 1.5;
    let n = 64;
    use rand::Rng;
    let mut worst: f64 = 0.0;
    for pair in 0..50u64 {
        let path = simulate_iid(n, alpha, stream(12).substream(pair)).unwrap();
        let mut rng = stream(13).substream(pair).rng();
        let a: Vec<f64> = (0..n - 1).map(|_| 2.0 * rng.gen::<f64>() - 1.0).collect();
        let (xn, _) = normalized_statistic_xn(&a, &path, alpha).unwrap();
        let mut brute = 0.0;
        for k in 1..n {
            let mut inner = 0.0;
            for t in 0..n - k {
                inner += path.values[t] * path.values[t + k];
            }
            brute += a[k - 1] * inner;
        }
        let nf = n as f64;
        let expected = (nf * nf.ln()).powf(-1.0 / alpha) * brute;
        worst = worst.max((xn - expected).abs() / expected.abs());
    }
    let elapsed = t0.elapsed();
    report(
        "11 brute-force-equivalence",
        worst <= 1e-10,
        &format!("max relative deviation {worst:.2e} vs 1e-10"),
        elapsed,
    );
}

#[test]
fn criterion_12_reproducibility() {
    let t0 = Instant::now();
    let configs = [
        r#"
kind = "simulate"
alpha = 1.5
n = 16
master_seed = 42
"#,
        r#"
kind = "coeffs"
function = "indicator 1.0"
max_lag = 8
"#,
        r#"
kind = "fidi"
alpha = 1.2
n_grid = [32, 64]
replicates = 50
master_seed = 7
dump_replicates = true

[coefficients]
kind = "geometric"
ratio = 0.5
truncation = 16
"#,
        r#"
kind = "autocov-scaling"
alpha = 1.5
n_grid = [32, 64]
replicates = 40
master_seed = 8
"#,
        r#"
kind = "qform-tails"
alpha = 0.8
n = 16
replicates = 300
master_seed = 9
x_grid = [1.0, 4.0]

[coefficients]
kind = "geometric"
ratio = 0.5
truncation = 8
"#,
        r#"
kind = "remainder"
alpha = 1.5
n_grid = [64, 128]
replicates = 30
master_seed = 10

[filter]
coeffs = { "0" = 1.0, "1" = 0.5 }

[class]
kind = "indicator-grid"
count = 3
x_hi = 2.0
"#,
        r#"
kind = "covering"
alpha = 1.5

[class]
kind = "indicator-grid"
count = 60
x_hi = 3.14159265358979

[covering]
eps_grid = [0.5, 1.0]
k_grid = [1, 2, 3]
beta_candidate = 1.2
"#,
    ];
    let mut all_match = true;
    let mut detail = String::new();
    for (i, text) in configs.iter().enumerate() {
        let cfg: ExperimentConfig = toml::from_str(text).unwrap();
        let hash_run = || {
            let dir = tempfile::tempdir().unwrap();
            run_experiment(
                &cfg,
                std::path::Path::new("."),
                &RunOptions {
                    out_dir: dir.path().to_path_buf(),
                    seed_override: None,
                    format: OutputFormat::Csv,
                },
            )
            .unwrap();
            let mut hashes: Vec<(String, String)> = std::fs::read_dir(dir.path())
                .unwrap()
                .map(|e| {
                    let p = e.unwrap().path();
                    (
                        p.file_name().unwrap().to_str().unwrap().to_string(),
                        stablegram::io::sha256_hex(&p).unwrap(),
                    )
                })
                .collect();
            hashes.sort();
            hashes
        };
        let same = hash_run() == hash_run();
        if !same {
            all_match = false;
            detail.push_str(&format!("config {i} differs; "));
        }
    }
    if all_match {
        detail = format!("{} configs byte-identical across reruns", configs.len());
    }
    let elapsed = t0.elapsed();
    report("12 reproducibility", all_match, &detail, elapsed);
}
