//! Command-line front end: `run`, `validate`, `coeffs`, `simulate`.
//!
//! Exit codes: 0 success, 2 config parse error, 3 precondition violation,
//! 4 runtime numerical error. Failures emit a machine-readable JSON error
//! record on stderr.

use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::config::{config_base_dir, validate, ExperimentConfig, ExperimentKind};
use crate::error::Error;
use crate::io::OutputFormat;
use crate::runner::{run_experiment, RunOptions};

#[derive(Parser)]
#[command(
    name = "stablegram",
    about = "Spectral-analysis laboratory for heavy-tailed time series",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a config file.
    Run(RunArgs),
    /// Validate a config file without running anything.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Emit the cosine Fourier coefficient table of an index function.
    Coeffs {
        /// Inline function spec, e.g. "indicator 1.0" or "cosine 2".
        #[arg(long)]
        function: String,
        #[arg(long)]
        max_lag: usize,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Simulate an i.i.d. or linear-process path and write it as CSV.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Optional filter as comma-separated lag:coeff pairs, e.g. "0:1,1:0.5".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's output directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Overrides the config's master seed.
    #[arg(long)]
    seed_override: Option<u64>,
    /// Advisory parallelism hint for replicate evaluation.
    #[arg(long)]
    threads: Option<usize>,
    /// csv (summary tables + JSON report) or json (JSON report only).
    #[arg(long, default_value = "csv")]
    format: String,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Io(_) => 2,
        Error::Validation(_)
        | Error::Param { .. }
        | Error::Degenerate(_)
        | Error::Alignment(_)
        | Error::Truncation(_)
        | Error::Unresolved(_) => 3,
        Error::Quadrature(_) | Error::Numerical(_) => 4,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Config(_) => "config-parse",
        Error::Io(_) => "io",
        Error::Validation(_) => "validation",
        Error::Param { .. } => "parameter-domain",
        Error::Degenerate(_) => "degenerate-input",
        Error::Alignment(_) => "alignment",
        Error::Truncation(_) => "truncation",
        Error::Unresolved(_) => "unresolved-reference",
        Error::Quadrature(_) => "quadrature",
        Error::Numerical(_) => "numerical",
    }
}

fn fail(err: &Error) -> i32 {
    let code = exit_code(err);
    let record = serde_json::json!({
        "error": {
            "exit": code,
            "kind": error_kind(err),
            "message": err.to_string(),
        }
    });
    eprintln!("{record}");
    code
}

fn init_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // Best effort; the pool may already be initialized.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, Error> {
    s.parse()
}

fn run_cmd(args: &RunArgs) -> Result<(), Error> {
    let config = ExperimentConfig::load(&args.config)?;
    init_threads(args.threads.or(config.threads));
    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| config.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let opts = RunOptions {
        out_dir,
        seed_override: args.seed_override,
        format: parse_format(&args.format)?,
    };
    let summary = run_experiment(&config, &config_base_dir(&args.config), &opts)?;
    println!(
        "wrote {} artifacts and {}",
        summary.artifacts.len(),
        summary.manifest.display()
    );
    Ok(())
}

fn validate_cmd(config_path: &Path) -> Result<bool, Error> {
    let config = ExperimentConfig::load(config_path)?;
    let report = validate(&config, &config_base_dir(config_path));
    println!(
        "{}",
        serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Numerical(format!("report serialization: {e}")))?
    );
    Ok(report.ok)
}

fn coeffs_cmd(function: &str, max_lag: usize, out_dir: &Path, format: &str) -> Result<(), Error> {
    let config = ExperimentConfig {
        kind: ExperimentKind::Coeffs,
        alpha: None,
        n_grid: vec![],
        n: None,
        replicates: None,
        master_seed: 0,
        stream_id: 0,
        out_dir: None,
        scales: Default::default(),
        threads: None,
        coefficients: None,
        filter: None,
        class: None,
        covering: None,
        catalog: None,
        function: Some(function.to_string()),
        max_lag: Some(max_lag),
        limit_sample: None,
        calibration_n: None,
        calibration_replicates: None,
        tau: None,
        lags: None,
        x_grid: None,
        dump_replicates: false,
    };
    let opts = RunOptions {
        out_dir: out_dir.to_path_buf(),
        seed_override: None,
        format: parse_format(format)?,
    };
    run_experiment(&config, Path::new("."), &opts)?;
    println!("wrote {}", out_dir.join("coefficients.csv").display());
    Ok(())
}

fn parse_filter_arg(text: &str) -> Result<BTreeMap<String, f64>, Error> {
    let mut coeffs = BTreeMap::new();
    for pair in text.split(',') {
        let (lag, c) = pair
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("bad filter pair `{pair}`")))?;
        let value: f64 = c
            .trim()
            .parse()
            .map_err(|e| Error::Config(format!("bad filter coefficient `{c}`: {e}")))?;
        coeffs.insert(lag.trim().to_string(), value);
    }
    Ok(coeffs)
}

fn simulate_cmd(
    n: usize,
    alpha: f64,
    seed: u64,
    stream: u64,
    filter: Option<&str>,
    out_dir: &Path,
) -> Result<(), Error> {
    let filter = filter
        .map(|text| {
            Ok::<_, Error>(crate::config::FilterConfig {
                coeffs: parse_filter_arg(text)?,
                tail: None,
            })
        })
        .transpose()?;
    let config = ExperimentConfig {
        kind: ExperimentKind::Simulate,
        alpha: Some(alpha),
        n_grid: vec![],
        n: Some(n),
        replicates: None,
        master_seed: seed,
        stream_id: stream,
        out_dir: None,
        scales: Default::default(),
        threads: None,
        coefficients: None,
        filter,
        class: None,
        covering: None,
        catalog: None,
        function: None,
        max_lag: None,
        limit_sample: None,
        calibration_n: None,
        calibration_replicates: None,
        tau: None,
        lags: None,
        x_grid: None,
        dump_replicates: false,
    };
    let opts = RunOptions {
        out_dir: out_dir.to_path_buf(),
        seed_override: None,
        format: OutputFormat::Csv,
    };
    run_experiment(&config, Path::new("."), &opts)?;
    println!("wrote {}", out_dir.join("path.csv").display());
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => match run_cmd(args) {
            Ok(()) => 0,
            Err(e) => fail(&e),
        },
        Command::Validate { config } => match validate_cmd(config) {
            Ok(true) => 0,
            Ok(false) => {
                let err = Error::Validation("one or more checks failed; see report".into());
                fail(&err)
            }
            Err(e) => fail(&e),
        },
        Command::Coeffs {
            function,
            max_lag,
            out_dir,
            format,
        } => match coeffs_cmd(function, *max_lag, out_dir, format) {
            Ok(()) => 0,
            Err(e) => fail(&e),
        },
        Command::Simulate {
            n,
            alpha,
            seed,
            stream,
            filter,
            out_dir,
        } => match simulate_cmd(*n, *alpha, *seed, *stream, filter.as_deref(), out_dir) {
            Ok(()) => 0,
            Err(e) => fail(&e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_arg_parses() {
        let m = parse_filter_arg("0:1,1:0.5").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m["1"], 0.5);
        assert!(parse_filter_arg("nonsense").is_err());
    }

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::Validation("x".into())), 3);
        assert_eq!(exit_code(&Error::param("a", 1.0, "c")), 3);
        assert_eq!(exit_code(&Error::Unresolved("x".into())), 3);
        assert_eq!(exit_code(&Error::Numerical("x".into())), 4);
        assert_eq!(exit_code(&Error::Quadrature("x".into())), 4);
    }
}
