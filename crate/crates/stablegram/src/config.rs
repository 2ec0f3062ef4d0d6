//! Experiment configuration: one TOML file describes one experiment.
//!
//! Parsing and validation are separate stages so `validate` can run the
//! full precondition sweep (coefficient diagnostics, filter condition,
//! catalog resolution) without touching a single random number.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiments::CoeffSpec;
use crate::funcs::{Catalog, ClassKind, FunctionClass, FunctionSpec};
use crate::summability::{ell_alpha_log_norm, filter_condition_check, SumVerdict, TailVerdict};
use crate::timeseries::{FilterTail, LinearFilter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Fidi,
    AutocovScaling,
    QformTails,
    Remainder,
    Covering,
    Coeffs,
    Simulate,
}

impl ExperimentKind {
    pub fn label(&self) -> &'static str {
        match self {
            ExperimentKind::Fidi => "fidi",
            ExperimentKind::AutocovScaling => "autocov-scaling",
            ExperimentKind::QformTails => "qform-tails",
            ExperimentKind::Remainder => "remainder",
            ExperimentKind::Covering => "covering",
            ExperimentKind::Coeffs => "coeffs",
            ExperimentKind::Simulate => "simulate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalesMode {
    #[default]
    Configured,
    Calibrated,
}

/// Coefficient sequence source for fidi and Toeplitz quadratic forms.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "kind")]
pub enum CoeffConfig {
    Geometric { ratio: f64, truncation: usize },
    Indicator { x: f64 },
    Raw { values: Vec<f64> },
    /// Fourier coefficients (a_1..a_truncation) of a catalog entry.
    Catalog { entry: String, truncation: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "kind")]
pub enum TailConfig {
    Geometric { ratio: f64 },
    PowerLaw { exponent: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    /// Lag -> coefficient map; keys are integer lags as strings.
    pub coeffs: BTreeMap<String, f64>,
    pub tail: Option<TailConfig>,
}

impl FilterConfig {
    pub fn build(&self) -> Result<LinearFilter> {
        let mut pairs = Vec::new();
        for (k, &v) in &self.coeffs {
            let lag: i64 = k
                .parse()
                .map_err(|e| Error::Config(format!("filter lag `{k}`: {e}")))?;
            pairs.push((lag, v));
        }
        let mut f = LinearFilter::from_pairs(pairs)?;
        if let Some(t) = &self.tail {
            f = f.with_tail(match t {
                TailConfig::Geometric { ratio } => FilterTail::Geometric { ratio: *ratio },
                TailConfig::PowerLaw { exponent } => FilterTail::PowerLaw {
                    exponent: *exponent,
                },
            });
        }
        Ok(f)
    }
}

/// Function class: either named entries of a catalog file or a built-in
/// discretized family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", tag = "kind")]
pub enum ClassConfig {
    Catalog {
        path: String,
        members: Vec<String>,
    },
    IndicatorGrid {
        count: usize,
        x_hi: f64,
    },
    HolderHalf {
        count: usize,
        x_hi: f64,
    },
}

impl ClassConfig {
    pub fn build(&self, base_dir: &Path) -> Result<FunctionClass> {
        match self {
            ClassConfig::Catalog { path, members } => {
                let catalog = Catalog::load(&base_dir.join(path))?;
                let specs: Vec<FunctionSpec> = members
                    .iter()
                    .map(|name| catalog.resolve(name).cloned())
                    .collect::<Result<_>>()?;
                FunctionClass::new(
                    specs,
                    ClassKind::Custom,
                    format!("catalog {path}: {} members", members.len()),
                )
            }
            ClassConfig::IndicatorGrid { count, x_hi } => {
                FunctionClass::indicator_grid(*count, *x_hi)
            }
            ClassConfig::HolderHalf { count, x_hi } => {
                FunctionClass::holder_family_half(*count, *x_hi)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringConfig {
    pub eps_grid: Vec<f64>,
    pub k_grid: Vec<usize>,
    pub beta_candidate: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub alpha: Option<f64>,
    #[serde(default)]
    pub n_grid: Vec<usize>,
    /// Single path length for `simulate`.
    pub n: Option<usize>,
    pub replicates: Option<usize>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub stream_id: u64,
    pub out_dir: Option<String>,
    #[serde(default)]
    pub scales: ScalesMode,
    /// Advisory parallelism hint.
    pub threads: Option<usize>,
    pub coefficients: Option<CoeffConfig>,
    pub filter: Option<FilterConfig>,
    pub class: Option<ClassConfig>,
    pub covering: Option<CoveringConfig>,
    /// Catalog path used to resolve `coefficients.kind = "catalog"` and the
    /// `coeffs` function when it names an entry.
    pub catalog: Option<String>,
    /// Inline function spec ("indicator 1.0") or catalog entry name for the
    /// `coeffs` kind.
    pub function: Option<String>,
    pub max_lag: Option<usize>,
    /// Limit-sample size for fidi; defaults to `replicates`.
    pub limit_sample: Option<usize>,
    /// Reference path length for calibrated scales (default 2^20).
    pub calibration_n: Option<usize>,
    /// Replicates behind the calibrated scale estimates (default 256).
    pub calibration_replicates: Option<usize>,
    /// Slack exponent in the filter condition; remainder kind.
    pub tau: Option<f64>,
    /// Number of lag statistics in autocov-scaling.
    pub lags: Option<usize>,
    pub x_grid: Option<Vec<f64>>,
    /// Dump raw replicate statistics as CSV for external plotting.
    #[serde(default)]
    pub dump_replicates: bool,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Resolve the coefficient sequence for experiments that take **a**.
    pub fn coeff_spec(&self, base_dir: &Path) -> Result<CoeffSpec> {
        let cfg = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::Config("missing [coefficients] section".into()))?;
        Ok(match cfg {
            CoeffConfig::Geometric { ratio, truncation } => CoeffSpec::Geometric {
                ratio: *ratio,
                truncation: *truncation,
            },
            CoeffConfig::Indicator { x } => CoeffSpec::Indicator { x: *x },
            CoeffConfig::Raw { values } => CoeffSpec::Raw {
                values: values.clone(),
                tail_mass_alpha: None,
            },
            CoeffConfig::Catalog { entry, truncation } => {
                let cat_path = self.catalog.as_ref().ok_or_else(|| {
                    Error::Config("coefficients.kind = \"catalog\" needs a `catalog` path".into())
                })?;
                let catalog = Catalog::load(&base_dir.join(cat_path))?;
                let spec = catalog.resolve(entry)?;
                let coeffs = crate::funcs::fourier_coeffs(spec, *truncation)?;
                CoeffSpec::Raw {
                    values: coeffs.sequence().to_vec(),
                    tail_mass_alpha: None,
                }
            }
        })
    }

    /// Parse the `function` field: inline spec text or catalog entry name.
    pub fn function_spec(&self, base_dir: &Path) -> Result<FunctionSpec> {
        let text = self
            .function
            .as_ref()
            .ok_or_else(|| Error::Config("missing `function` field".into()))?;
        // Inline form first; fall back to a catalog lookup.
        if let Ok(cat) = Catalog::parse(&format!("inline: {text}")) {
            return cat.resolve("inline").cloned();
        }
        let cat_path = self
            .catalog
            .as_ref()
            .ok_or_else(|| Error::Unresolved(format!("function `{text}` (no catalog given)")))?;
        Catalog::load(&base_dir.join(cat_path))?.resolve(text).cloned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckLevel {
    Ok,
    Warn,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub level: CheckLevel,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub kind: String,
    pub ok: bool,
    pub items: Vec<CheckItem>,
}

impl ValidationReport {
    fn push(&mut self, level: CheckLevel, check: &str, detail: impl Into<String>) {
        if level == CheckLevel::Error {
            self.ok = false;
        }
        self.items.push(CheckItem {
            level,
            check: check.to_string(),
            detail: detail.into(),
        });
    }
}

fn require_alpha(config: &ExperimentConfig, report: &mut ValidationReport) -> Option<f64> {
    match config.alpha {
        Some(a) if a > 0.0 && a < 2.0 => {
            report.push(CheckLevel::Ok, "alpha", format!("{a}"));
            Some(a)
        }
        Some(a) => {
            report.push(
                CheckLevel::Error,
                "alpha",
                format!("alpha = {a} outside (0, 2)"),
            );
            None
        }
        None => {
            report.push(CheckLevel::Error, "alpha", "missing");
            None
        }
    }
}

fn require_replicates(config: &ExperimentConfig, report: &mut ValidationReport) {
    match config.replicates {
        Some(r) if r >= 1 => report.push(CheckLevel::Ok, "replicates", format!("{r}")),
        Some(r) => report.push(
            CheckLevel::Error,
            "replicates",
            format!("replicates = {r} must be >= 1"),
        ),
        None => report.push(CheckLevel::Error, "replicates", "missing"),
    }
}

fn require_n_grid(config: &ExperimentConfig, min_n: usize, report: &mut ValidationReport) {
    if config.n_grid.is_empty() {
        report.push(CheckLevel::Error, "n_grid", "missing or empty");
        return;
    }
    if !config.n_grid.windows(2).all(|w| w[0] < w[1]) {
        report.push(CheckLevel::Error, "n_grid", "must be strictly increasing");
        return;
    }
    if config.n_grid[0] < min_n {
        report.push(
            CheckLevel::Error,
            "n_grid",
            format!("entries must be >= {min_n}"),
        );
        return;
    }
    report.push(CheckLevel::Ok, "n_grid", format!("{:?}", config.n_grid));
}

/// Full precondition sweep with no side effects and no simulation.
pub fn validate(config: &ExperimentConfig, base_dir: &Path) -> ValidationReport {
    let mut report = ValidationReport {
        kind: config.kind.label().to_string(),
        ok: true,
        items: Vec::new(),
    };
    match config.kind {
        ExperimentKind::Fidi => {
            let alpha = require_alpha(config, &mut report);
            require_replicates(config, &mut report);
            require_n_grid(config, 2, &mut report);
            match config.coeff_spec(base_dir) {
                Ok(spec) => {
                    report.push(CheckLevel::Ok, "coefficients", spec.label());
                    if let Some(a) = alpha {
                        let probe_n = config.n_grid.iter().copied().max().unwrap_or(256).max(2);
                        match ell_alpha_log_norm(&spec.realize(probe_n), a) {
                            Ok(d) if d.verdict == SumVerdict::Diverging => report.push(
                                CheckLevel::Warn,
                                "l^alpha log l membership",
                                "diverging: the limit series does not exist and the statistic \
                                 sequence is expected not to be tight",
                            ),
                            Ok(d) => report.push(
                                CheckLevel::Ok,
                                "l^alpha log l membership",
                                format!("plausibly finite (partial sum {:.6})", d.partial_sum),
                            ),
                            Err(e) => {
                                report.push(CheckLevel::Error, "l^alpha log l membership", e.to_string())
                            }
                        }
                    }
                }
                Err(e) => report.push(CheckLevel::Error, "coefficients", e.to_string()),
            }
        }
        ExperimentKind::AutocovScaling => {
            require_alpha(config, &mut report);
            require_replicates(config, &mut report);
            require_n_grid(config, 2, &mut report);
        }
        ExperimentKind::QformTails => {
            require_alpha(config, &mut report);
            require_replicates(config, &mut report);
            match config.n {
                Some(n) if n >= 2 => report.push(CheckLevel::Ok, "n", format!("{n}")),
                _ => report.push(CheckLevel::Error, "n", "qform-tails needs n >= 2"),
            }
            match &config.x_grid {
                Some(xs) if !xs.is_empty() && xs.iter().all(|&x| x > 0.0) => {
                    report.push(CheckLevel::Ok, "x_grid", format!("{xs:?}"))
                }
                _ => report.push(CheckLevel::Error, "x_grid", "needs a positive x grid"),
            }
            if let Err(e) = config.coeff_spec(base_dir) {
                report.push(CheckLevel::Error, "coefficients", e.to_string());
            }
        }
        ExperimentKind::Remainder => {
            let alpha = require_alpha(config, &mut report);
            require_replicates(config, &mut report);
            require_n_grid(config, 2, &mut report);
            let tau = config.tau.unwrap_or(0.1);
            if tau <= 0.0 {
                report.push(CheckLevel::Error, "tau", "must be positive");
            }
            match &config.filter {
                Some(fc) => match fc.build() {
                    Ok(f) => {
                        if let Some(a) = alpha {
                            match filter_condition_check(&f, a, tau) {
                                Ok(r) => {
                                    let level = if r.tail_verdict == Some(TailVerdict::Violated) {
                                        CheckLevel::Warn
                                    } else {
                                        CheckLevel::Ok
                                    };
                                    report.push(
                                        level,
                                        "filter condition",
                                        format!(
                                            "weighted sum {:.6}, tail verdict {:?}",
                                            r.weighted_sum, r.tail_verdict
                                        ),
                                    );
                                }
                                Err(e) => {
                                    report.push(CheckLevel::Error, "filter condition", e.to_string())
                                }
                            }
                        }
                    }
                    Err(e) => report.push(CheckLevel::Error, "filter", e.to_string()),
                },
                None => report.push(CheckLevel::Error, "filter", "missing [filter] section"),
            }
            match &config.class {
                Some(cc) => match cc.build(base_dir) {
                    Ok(class) => report.push(
                        CheckLevel::Ok,
                        "class",
                        format!(
                            "{} members, sup L2 norm {:.6}",
                            class.len(),
                            class.sup_l2_norm()
                        ),
                    ),
                    Err(e) => report.push(CheckLevel::Error, "class", e.to_string()),
                },
                None => report.push(CheckLevel::Error, "class", "missing [class] section"),
            }
        }
        ExperimentKind::Covering => {
            require_alpha(config, &mut report);
            match &config.class {
                Some(cc) => match cc.build(base_dir) {
                    Ok(class) => {
                        report.push(CheckLevel::Ok, "class", format!("{} members", class.len()))
                    }
                    Err(e) => report.push(CheckLevel::Error, "class", e.to_string()),
                },
                None => report.push(CheckLevel::Error, "class", "missing [class] section"),
            }
            match &config.covering {
                Some(c) => {
                    if c.eps_grid.is_empty() || c.eps_grid.iter().any(|&e| !(e > 0.0)) {
                        report.push(CheckLevel::Error, "covering.eps_grid", "needs positive radii");
                    } else if c.k_grid.is_empty() {
                        report.push(CheckLevel::Error, "covering.k_grid", "must be nonempty");
                    } else if !(c.beta_candidate > 0.0) {
                        report.push(CheckLevel::Error, "covering.beta_candidate", "must be positive");
                    } else {
                        report.push(
                            CheckLevel::Ok,
                            "covering",
                            format!(
                                "eps {:?}, k {:?}, beta {}",
                                c.eps_grid, c.k_grid, c.beta_candidate
                            ),
                        );
                    }
                }
                None => report.push(CheckLevel::Error, "covering", "missing [covering] section"),
            }
        }
        ExperimentKind::Coeffs => {
            match config.function_spec(base_dir) {
                Ok(f) => report.push(CheckLevel::Ok, "function", format!("{f:?}")),
                Err(e) => report.push(CheckLevel::Error, "function", e.to_string()),
            }
            match config.max_lag {
                Some(k) if k >= 1 => report.push(CheckLevel::Ok, "max_lag", format!("{k}")),
                _ => report.push(CheckLevel::Error, "max_lag", "needs max_lag >= 1"),
            }
        }
        ExperimentKind::Simulate => {
            require_alpha(config, &mut report);
            match config.n {
                Some(n) if n >= 1 => report.push(CheckLevel::Ok, "n", format!("{n}")),
                _ => report.push(CheckLevel::Error, "n", "simulate needs n >= 1"),
            }
            if let Some(fc) = &config.filter {
                match fc.build() {
                    Ok(_) => report.push(CheckLevel::Ok, "filter", "parsed"),
                    Err(e) => report.push(CheckLevel::Error, "filter", e.to_string()),
                }
            }
        }
    }
    report
}

/// Directory the config's relative paths resolve against.
pub fn config_base_dir(config_path: &Path) -> PathBuf {
    config_path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}
