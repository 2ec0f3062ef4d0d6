//! Batch experiment runner: dispatches a validated config, writes the
//! report JSON, summary CSVs, optional raw replicate dumps, and the
//! manifest. Outputs are byte-identical for identical configs and seeds.

use serde::Serialize;
use std::path::{Path, PathBuf};

use crate::config::{validate, ExperimentConfig, ExperimentKind, ScalesMode};
use crate::error::{Error, Result};
use crate::experiments::{
    autocov_scaling_experiment, fidi_experiment, quadratic_form_tail_check,
    remainder_negligibility_experiment, QuadraticFormSpec, SeedsEcho,
};
use crate::funcs::fourier_coeffs;
use crate::io::{fmt_f64, write_csv, write_json, write_manifest, OutputFormat};
use crate::limit::{calibrate_scales, LimitScales};
use crate::rng::RngStream;
use crate::timeseries::{export_path_csv, simulate_iid, simulate_linear};

/// Substream channel the runner reserves for scale calibration.
const CH_CALIBRATE: u64 = 16;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub seed_override: Option<u64>,
    pub format: OutputFormat,
}

#[derive(Debug)]
pub struct RunSummary {
    pub artifacts: Vec<PathBuf>,
    pub manifest: PathBuf,
}

#[derive(Serialize)]
struct ReportEnvelope<T: Serialize> {
    kind: &'static str,
    report: T,
}

/// Validate and execute one experiment config.
pub fn run_experiment(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
) -> Result<RunSummary> {
    let validation = validate(config, base_dir);
    if !validation.ok {
        let failed: Vec<String> = validation
            .items
            .iter()
            .filter(|i| i.level == crate::config::CheckLevel::Error)
            .map(|i| format!("{}: {}", i.check, i.detail))
            .collect();
        return Err(Error::Validation(failed.join("; ")));
    }

    let mut config = config.clone();
    if let Some(seed) = opts.seed_override {
        config.master_seed = seed;
    }
    std::fs::create_dir_all(&opts.out_dir)?;
    let stream = RngStream::new(config.master_seed, config.stream_id);
    let seeds = SeedsEcho::from(stream);

    let mut artifacts = Vec::new();
    match config.kind {
        ExperimentKind::Fidi => run_fidi(&config, base_dir, opts, stream, &mut artifacts)?,
        ExperimentKind::AutocovScaling => {
            run_autocov(&config, opts, stream, &mut artifacts)?
        }
        ExperimentKind::QformTails => run_qform(&config, base_dir, opts, stream, &mut artifacts)?,
        ExperimentKind::Remainder => {
            run_remainder(&config, base_dir, opts, stream, &mut artifacts)?
        }
        ExperimentKind::Covering => run_covering(&config, base_dir, opts, &mut artifacts)?,
        ExperimentKind::Coeffs => run_coeffs(&config, base_dir, opts, &mut artifacts)?,
        ExperimentKind::Simulate => run_simulate(&config, opts, stream, &mut artifacts)?,
    }

    let echo = serde_json::to_value(&config)
        .map_err(|e| Error::Numerical(format!("config echo failed: {e}")))?;
    let manifest = write_manifest(&opts.out_dir, &echo, seeds, &artifacts)?;
    Ok(RunSummary {
        artifacts,
        manifest,
    })
}

fn push_json<T: Serialize>(
    out: &Path,
    name: &str,
    kind: &'static str,
    report: &T,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let path = out.join(name);
    write_json(&path, &ReportEnvelope { kind, report })?;
    artifacts.push(path);
    Ok(())
}

fn push_csv(
    out: &Path,
    name: &str,
    header: &[&str],
    rows: &[Vec<String>],
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let path = out.join(name);
    write_csv(&path, header, rows)?;
    artifacts.push(path);
    Ok(())
}

fn resolve_scales(
    config: &ExperimentConfig,
    alpha: f64,
    stream: RngStream,
) -> Result<LimitScales> {
    match config.scales {
        ScalesMode::Configured => Ok(LimitScales::configured()),
        ScalesMode::Calibrated => calibrate_scales(
            alpha,
            config.calibration_n.unwrap_or(1 << 20),
            config.calibration_replicates.unwrap_or(256),
            stream.substream(CH_CALIBRATE),
        ),
    }
}

fn run_fidi(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
    stream: RngStream,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let replicates = config.replicates.expect("validated");
    let coeffs = config.coeff_spec(base_dir)?;
    let scales = resolve_scales(config, alpha, stream)?;
    let out = fidi_experiment(
        alpha,
        &coeffs,
        &config.n_grid,
        replicates,
        config.limit_sample.unwrap_or(replicates),
        &scales,
        stream,
    )?;
    push_json(&opts.out_dir, "report.json", "fidi", &out.report, artifacts)?;
    if opts.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = out
            .report
            .per_n
            .iter()
            .map(|p| {
                vec![
                    p.n.to_string(),
                    p.replicates.to_string(),
                    fmt_f64(p.ks_standardized),
                    fmt_f64(p.ks_boot_se),
                    fmt_f64(p.ks_xn_standardized),
                    p.ks_raw.map(fmt_f64).unwrap_or_default(),
                    fmt_f64(p.xn_median),
                    fmt_f64(p.xn_iqr),
                    fmt_f64(p.xn_iqr_boot_se),
                    p.hill_xn.map(fmt_f64).unwrap_or_default(),
                ]
            })
            .collect();
        push_csv(
            &opts.out_dir,
            "summary.csv",
            &[
                "n",
                "replicates",
                "ks_standardized",
                "ks_boot_se",
                "ks_xn_standardized",
                "ks_raw",
                "xn_median",
                "xn_iqr",
                "xn_iqr_boot_se",
                "hill_xn",
            ],
            &rows,
            artifacts,
        )?;
    }
    if config.dump_replicates {
        for s in &out.samples {
            let rows: Vec<Vec<String>> = s
                .xn
                .iter()
                .zip(&s.xn_tilde)
                .enumerate()
                .map(|(r, (xn, xt))| vec![r.to_string(), fmt_f64(*xn), fmt_f64(*xt)])
                .collect();
            push_csv(
                &opts.out_dir,
                &format!("replicates_n{}.csv", s.n),
                &["replicate", "xn", "xn_tilde"],
                &rows,
                artifacts,
            )?;
        }
    }
    Ok(())
}

fn run_autocov(
    config: &ExperimentConfig,
    opts: &RunOptions,
    stream: RngStream,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let out = autocov_scaling_experiment(
        alpha,
        &config.n_grid,
        config.replicates.expect("validated"),
        config.lags.unwrap_or(2),
        stream,
    )?;
    push_json(
        &opts.out_dir,
        "report.json",
        "autocov-scaling",
        &out.report,
        artifacts,
    )?;
    if opts.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = out
            .report
            .per_n
            .iter()
            .map(|p| {
                let mut row = vec![
                    p.n.to_string(),
                    p.replicates.to_string(),
                    fmt_f64(p.gamma0_positive_fraction),
                    p.hill_gamma0.map(fmt_f64).unwrap_or_default(),
                ];
                row.push(
                    p.hill_lags
                        .iter()
                        .map(|h| h.map(fmt_f64).unwrap_or_default())
                        .collect::<Vec<_>>()
                        .join(";"),
                );
                row.push(fmt_f64(p.lag12_sign_correlation));
                row.push(fmt_f64(p.independence_band));
                row
            })
            .collect();
        push_csv(
            &opts.out_dir,
            "summary.csv",
            &[
                "n",
                "replicates",
                "gamma0_positive_fraction",
                "hill_gamma0",
                "hill_lags",
                "lag12_sign_correlation",
                "independence_band",
            ],
            &rows,
            artifacts,
        )?;
    }
    if config.dump_replicates {
        for s in &out.samples {
            let header: Vec<String> = std::iter::once("replicate".to_string())
                .chain(std::iter::once("s0".to_string()))
                .chain((1..s.columns.len()).map(|h| format!("s{h}")))
                .collect();
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = (0..s.columns[0].len())
                .map(|r| {
                    std::iter::once(r.to_string())
                        .chain(s.columns.iter().map(|c| fmt_f64(c[r])))
                        .collect()
                })
                .collect();
            push_csv(
                &opts.out_dir,
                &format!("replicates_n{}.csv", s.n),
                &header_refs,
                &rows,
                artifacts,
            )?;
        }
    }
    Ok(())
}

fn run_qform(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
    stream: RngStream,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let n = config.n.expect("validated");
    let coeffs = config.coeff_spec(base_dir)?;
    let spec = QuadraticFormSpec::toeplitz(n, &coeffs.realize(n))?;
    let out = quadratic_form_tail_check(
        &spec,
        alpha,
        config.x_grid.as_deref().expect("validated"),
        config.replicates.expect("validated"),
        stream,
    )?;
    push_json(
        &opts.out_dir,
        "report.json",
        "qform-tails",
        &out.report,
        artifacts,
    )?;
    if opts.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = out
            .report
            .per_x
            .iter()
            .map(|p| {
                vec![
                    fmt_f64(p.x),
                    p.exceedances.to_string(),
                    fmt_f64(p.p_hat),
                    p.ratio.map(fmt_f64).unwrap_or_default(),
                ]
            })
            .collect();
        push_csv(
            &opts.out_dir,
            "summary.csv",
            &["x", "exceedances", "p_hat", "ratio"],
            &rows,
            artifacts,
        )?;
    }
    if config.dump_replicates {
        let rows: Vec<Vec<String>> = out
            .q_samples
            .iter()
            .enumerate()
            .map(|(r, q)| vec![r.to_string(), fmt_f64(*q)])
            .collect();
        push_csv(
            &opts.out_dir,
            "replicates.csv",
            &["replicate", "q"],
            &rows,
            artifacts,
        )?;
    }
    Ok(())
}

fn run_remainder(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
    stream: RngStream,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let filter = config.filter.as_ref().expect("validated").build()?;
    let class = config.class.as_ref().expect("validated").build(base_dir)?;
    let out = remainder_negligibility_experiment(
        alpha,
        &filter,
        &class,
        &config.n_grid,
        config.replicates.expect("validated"),
        config.tau.unwrap_or(0.1),
        stream,
    )?;
    push_json(
        &opts.out_dir,
        "report.json",
        "remainder",
        &out.report,
        artifacts,
    )?;
    if opts.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = out
            .report
            .per_n
            .iter()
            .map(|p| {
                vec![
                    p.n.to_string(),
                    p.replicates.to_string(),
                    fmt_f64(p.median),
                    fmt_f64(p.median_boot_se),
                    fmt_f64(p.q90),
                    fmt_f64(p.q90_boot_se),
                ]
            })
            .collect();
        push_csv(
            &opts.out_dir,
            "summary.csv",
            &["n", "replicates", "median", "median_boot_se", "q90", "q90_boot_se"],
            &rows,
            artifacts,
        )?;
    }
    if config.dump_replicates {
        for (n, sups) in &out.samples {
            let rows: Vec<Vec<String>> = sups
                .iter()
                .enumerate()
                .map(|(r, v)| vec![r.to_string(), fmt_f64(*v)])
                .collect();
            push_csv(
                &opts.out_dir,
                &format!("replicates_n{n}.csv"),
                &["replicate", "sup_statistic"],
                &rows,
                artifacts,
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CoveringReport {
    class_members: usize,
    class_note: String,
    class_kind: crate::funcs::ClassKind,
    fit: crate::covering::EntropyFitReport,
}

fn run_covering(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let class = config.class.as_ref().expect("validated").build(base_dir)?;
    let cov = config.covering.as_ref().expect("validated");
    let fit = crate::covering::entropy_condition_fit(
        &class,
        alpha,
        cov.beta_candidate,
        &cov.eps_grid,
        &cov.k_grid,
    )?;
    let report = CoveringReport {
        class_members: class.len(),
        class_note: class.grid_note.clone(),
        class_kind: class.kind.clone(),
        fit,
    };
    push_json(&opts.out_dir, "report.json", "covering", &report, artifacts)?;
    if opts.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = report
            .fit
            .points
            .iter()
            .map(|p| vec![p.k.to_string(), fmt_f64(p.eps), p.covering.to_string()])
            .collect();
        push_csv(
            &opts.out_dir,
            "covering.csv",
            &["k", "eps", "covering"],
            &rows,
            artifacts,
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CoeffsReport {
    function: String,
    max_lag: usize,
    analytic_tag: Option<&'static str>,
}

fn run_coeffs(
    config: &ExperimentConfig,
    base_dir: &Path,
    opts: &RunOptions,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let f = config.function_spec(base_dir)?;
    let max_lag = config.max_lag.expect("validated");
    let coeffs = fourier_coeffs(&f, max_lag)?;
    let rows: Vec<Vec<String>> = coeffs
        .a
        .iter()
        .enumerate()
        .map(|(h, a)| vec![h.to_string(), fmt_f64(*a)])
        .collect();
    push_csv(&opts.out_dir, "coefficients.csv", &["h", "a_h"], &rows, artifacts)?;
    push_json(
        &opts.out_dir,
        "report.json",
        "coeffs",
        &CoeffsReport {
            function: format!("{f:?}"),
            max_lag,
            analytic_tag: coeffs.analytic_tag,
        },
        artifacts,
    )?;
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport {
    n: usize,
    alpha: f64,
    origin: String,
    filter: Option<String>,
}

fn run_simulate(
    config: &ExperimentConfig,
    opts: &RunOptions,
    stream: RngStream,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let alpha = config.alpha.expect("validated");
    let n = config.n.expect("validated");
    let filter = config.filter.as_ref().map(|fc| fc.build()).transpose()?;
    match filter {
        Some(f) => {
            let sim = simulate_linear(n, &f, alpha, stream)?;
            let x_path = opts.out_dir.join("path.csv");
            export_path_csv(&x_path, &sim.x)?;
            artifacts.push(x_path.clone());
            artifacts.push(sidecar_of(&x_path));
            let e_path = opts.out_dir.join("innovations.csv");
            export_path_csv(&e_path, &sim.innovations)?;
            artifacts.push(e_path.clone());
            artifacts.push(sidecar_of(&e_path));
            push_json(
                &opts.out_dir,
                "report.json",
                "simulate",
                &SimulateReport {
                    n,
                    alpha,
                    origin: "linear".into(),
                    filter: Some(format!("{f:?}")),
                },
                artifacts,
            )?;
        }
        None => {
            let path = simulate_iid(n, alpha, stream)?;
            let p = opts.out_dir.join("path.csv");
            export_path_csv(&p, &path)?;
            artifacts.push(p.clone());
            artifacts.push(sidecar_of(&p));
            push_json(
                &opts.out_dir,
                "report.json",
                "simulate",
                &SimulateReport {
                    n,
                    alpha,
                    origin: "iid".into(),
                    filter: None,
                },
                artifacts,
            )?;
        }
    }
    Ok(())
}

fn sidecar_of(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}
