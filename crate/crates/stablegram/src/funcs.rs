//! Index functions on [0, pi], their cosine Fourier coefficients, and
//! discretized function classes.
//!
//! The coefficient convention is `a_h(f) = int_0^pi cos(h lambda) f(lambda) d lambda`
//! for h >= 0. Every built-in variant has a closed-form coefficient table;
//! an adaptive-quadrature evaluator is kept alongside as a cross-check and
//! as the fallback for externally supplied shapes.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::numeric::{adaptive_simpson_panels, ksum};
use crate::timeseries::LinearFilter;

/// Built-in Hoelder-indexed families.
///
/// Only family 0 is defined: indicator thresholds placed at `x = pi * theta`.
/// The entropy geometry of a family of this shape is set by which theta grid
/// a [`FunctionClass`] constructor samples, not by the member formula.
pub const HOLDER_FAMILY_THRESHOLDS: u32 = 0;

/// An index function f on [0, pi].
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// f(lambda) = c.
    Constant(f64),
    /// f = I_[0, x], 0 < x <= pi.
    Indicator { x: f64 },
    /// f(lambda) = cos(k lambda), k >= 1.
    Cosine { k: usize },
    /// Spectral density of the linear process driven by `filter` with the
    /// given innovation scale: f = scale^2 / (2 pi) * |psi(e^{-i lambda})|^2.
    ArmaSpectralDensity { filter: LinearFilter, scale: f64 },
    /// Member of a built-in Hoelder-indexed family at index theta in (0, 1].
    HolderMember { family: u32, theta: f64 },
    /// Piecewise-linear function through (grid, values); zero outside the grid.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

impl FunctionSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Constant(c) => {
                if !c.is_finite() {
                    return Err(Error::param("constant", *c, "must be finite"));
                }
            }
            FunctionSpec::Indicator { x } => {
                if !(*x > 0.0 && *x <= PI) {
                    return Err(Error::param("x", *x, "indicator threshold must lie in (0, pi]"));
                }
            }
            FunctionSpec::Cosine { k } => {
                if *k == 0 {
                    return Err(Error::param("k", 0.0, "cosine order must be >= 1"));
                }
            }
            FunctionSpec::ArmaSpectralDensity { scale, .. } => {
                if !(*scale > 0.0) {
                    return Err(Error::param("scale", *scale, "innovation scale must be positive"));
                }
            }
            FunctionSpec::HolderMember { family, theta } => {
                if *family != HOLDER_FAMILY_THRESHOLDS {
                    return Err(Error::Unresolved(format!("holder family {family}")));
                }
                if !(*theta > 0.0 && *theta <= 1.0) {
                    return Err(Error::param("theta", *theta, "must lie in (0, 1]"));
                }
            }
            FunctionSpec::Tabulated { grid, values } => {
                if grid.len() != values.len() || grid.len() < 2 {
                    return Err(Error::Degenerate(
                        "tabulated function needs >= 2 matching grid/value pairs".into(),
                    ));
                }
                if !grid.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Degenerate("tabulated grid must be strictly increasing".into()));
                }
                if grid[0] < 0.0 || *grid.last().unwrap() > PI + 1e-12 {
                    return Err(Error::Degenerate("tabulated grid must lie within [0, pi]".into()));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Numerical("tabulated values must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// Pointwise evaluation.
    pub fn evaluate(&self, lambda: f64) -> f64 {
        match self {
            FunctionSpec::Constant(c) => *c,
            FunctionSpec::Indicator { x } => {
                if lambda <= *x {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Cosine { k } => (*k as f64 * lambda).cos(),
            FunctionSpec::ArmaSpectralDensity { filter, scale } => {
                scale * scale / (2.0 * PI) * crate::spectral::power_transfer(filter, lambda)
            }
            FunctionSpec::HolderMember { theta, .. } => {
                if lambda <= PI * theta {
                    1.0
                } else {
                    0.0
                }
            }
            FunctionSpec::Tabulated { grid, values } => {
                if lambda < grid[0] || lambda > *grid.last().unwrap() {
                    return 0.0;
                }
                let i = grid.partition_point(|&g| g <= lambda).min(grid.len() - 1);
                if i == 0 {
                    return values[0];
                }
                let (g0, g1) = (grid[i - 1], grid[i]);
                let t = (lambda - g0) / (g1 - g0);
                values[i - 1] + t * (values[i] - values[i - 1])
            }
        }
    }

    /// Discontinuities and kinks, for quadrature splitting.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            FunctionSpec::Indicator { x } => vec![*x],
            FunctionSpec::HolderMember { theta, .. } => vec![PI * theta],
            FunctionSpec::Tabulated { grid, .. } => grid.clone(),
            _ => Vec::new(),
        }
    }

    /// int_0^pi f^2, exact per variant.
    pub fn l2_norm_sq(&self) -> f64 {
        match self {
            FunctionSpec::Constant(c) => c * c * PI,
            FunctionSpec::Indicator { x } => *x,
            FunctionSpec::Cosine { .. } => PI / 2.0,
            FunctionSpec::ArmaSpectralDensity { .. } => {
                // Parseval on the (finite) coefficient table.
                let coeffs = self.analytic_coeffs(coeff_span(self)).unwrap();
                let a = &coeffs.a;
                a[0] * a[0] / PI + 2.0 / PI * ksum(a[1..].iter().map(|v| v * v))
            }
            FunctionSpec::HolderMember { theta, .. } => PI * theta,
            FunctionSpec::Tabulated { grid, values } => ksum((1..grid.len()).map(|i| {
                let h = grid[i] - grid[i - 1];
                let (p, q) = (values[i - 1], values[i]);
                h * (p * p + p * q + q * q) / 3.0
            })),
        }
    }

    fn analytic_coeffs(&self, max_lag: usize) -> Option<FourierCoeffs> {
        let k_count = max_lag + 1;
        let a = match self {
            FunctionSpec::Constant(c) => {
                let mut a = vec![0.0; k_count];
                a[0] = c * PI;
                a
            }
            FunctionSpec::Indicator { x } => indicator_coeff_table(*x, max_lag),
            FunctionSpec::Cosine { k } => {
                let mut a = vec![0.0; k_count];
                if *k <= max_lag {
                    a[*k] = PI / 2.0;
                }
                a
            }
            FunctionSpec::ArmaSpectralDensity { filter, scale } => {
                let r = filter.power_transfer_cosine_coeffs();
                let s2 = scale * scale;
                (0..k_count)
                    .map(|h| if h < r.len() { s2 * r[h] / 2.0 } else { 0.0 })
                    .collect()
            }
            FunctionSpec::HolderMember { theta, .. } => indicator_coeff_table(PI * theta, max_lag),
            FunctionSpec::Tabulated { grid, values } => (0..k_count)
                .map(|h| tabulated_coeff(grid, values, h))
                .collect(),
        };
        Some(FourierCoeffs {
            a,
            analytic_tag: Some(self.tag()),
        })
    }

    fn tag(&self) -> &'static str {
        match self {
            FunctionSpec::Constant(_) => "constant",
            FunctionSpec::Indicator { .. } => "indicator",
            FunctionSpec::Cosine { .. } => "cosine",
            FunctionSpec::ArmaSpectralDensity { .. } => "arma-spectral-density",
            FunctionSpec::HolderMember { .. } => "holder-threshold",
            FunctionSpec::Tabulated { .. } => "tabulated-piecewise-linear",
        }
    }
}

/// Lag beyond which a variant's coefficients vanish, when that exists.
fn coeff_span(f: &FunctionSpec) -> usize {
    match f {
        FunctionSpec::Constant(_) => 0,
        FunctionSpec::Cosine { k } => *k,
        FunctionSpec::ArmaSpectralDensity { filter, .. } => {
            (filter.max_lag() - filter.min_lag()) as usize
        }
        _ => 0,
    }
}

fn indicator_coeff_table(x: f64, max_lag: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(max_lag + 1);
    a.push(x);
    for h in 1..=max_lag {
        a.push((x * h as f64).sin() / h as f64);
    }
    a
}

fn tabulated_coeff(grid: &[f64], values: &[f64], h: usize) -> f64 {
    // Exact integral of cos(h l) against each linear segment.
    if h == 0 {
        return ksum(
            (1..grid.len()).map(|i| 0.5 * (values[i - 1] + values[i]) * (grid[i] - grid[i - 1])),
        );
    }
    let hf = h as f64;
    ksum((1..grid.len()).map(|i| {
        let (g0, g1) = (grid[i - 1], grid[i]);
        let (v0, v1) = (values[i - 1], values[i]);
        let slope = (v1 - v0) / (g1 - g0);
        // int (v0 + slope (l - g0)) cos(h l) dl
        //   = [ (v0 + slope (l - g0)) sin(h l) / h + slope cos(h l) / h^2 ]
        let at = |l: f64, lin: f64| lin * (hf * l).sin() / hf + slope * (hf * l).cos() / (hf * hf);
        at(g1, v1) - at(g0, v0)
    }))
}

/// Truncated cosine-coefficient table a_0..a_K of an index function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierCoeffs {
    /// a[h] = a_h(f) for h = 0..=K.
    pub a: Vec<f64>,
    /// Closed-form descriptor when the table is exact.
    pub analytic_tag: Option<&'static str>,
}

impl FourierCoeffs {
    pub fn from_raw(a: Vec<f64>) -> Self {
        Self {
            a,
            analytic_tag: None,
        }
    }

    pub fn truncation(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    /// a_h, zero-extended beyond the truncation.
    pub fn coeff(&self, h: usize) -> f64 {
        self.a.get(h).copied().unwrap_or(0.0)
    }

    /// The sequence (a_1, a_2, ...) the limit theory is indexed by.
    pub fn sequence(&self) -> &[f64] {
        if self.a.len() > 1 {
            &self.a[1..]
        } else {
            &[]
        }
    }
}

/// Fourier coefficients up to lag K, by closed form.
pub fn fourier_coeffs(f: &FunctionSpec, max_lag: usize) -> Result<FourierCoeffs> {
    f.validate()?;
    Ok(f.analytic_coeffs(max_lag).expect("all built-ins are analytic"))
}

/// Fourier coefficients by adaptive quadrature, absolute tolerance per
/// coefficient. Independent of the closed forms; used as their cross-check
/// and for externally supplied integrands.
pub fn fourier_coeffs_quadrature(
    f: &FunctionSpec,
    max_lag: usize,
    abs_tol: f64,
) -> Result<FourierCoeffs> {
    f.validate()?;
    let mut cuts = vec![0.0, PI];
    cuts.extend(f.breakpoints());
    cuts.retain(|c| (0.0..=PI).contains(c));
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let mut a = Vec::with_capacity(max_lag + 1);
    for h in 0..=max_lag {
        let mut total = 0.0;
        for w in cuts.windows(2) {
            // Jumps sit exactly on the cuts, so endpoint evaluations must
            // take the limit from inside the piece or Simpson never settles.
            let nudge = (w[1] - w[0]) * 1e-12;
            let (lo, hi) = (w[0] + nudge, w[1] - nudge);
            let integrand =
                |l: f64| (h as f64 * l).cos() * f.evaluate(l.clamp(lo, hi));
            // Enough initial panels to resolve cos(h l) on this piece.
            let panels = 8 + (h as f64 * (w[1] - w[0]) / PI).ceil() as usize * 4;
            total += adaptive_simpson_panels(&integrand, w[0], w[1], abs_tol / cuts.len() as f64, panels)
                .ok_or_else(|| {
                    Error::Quadrature(format!(
                        "coefficient a_{h} did not reach tolerance {abs_tol:.1e} on [{}, {}]",
                        w[0], w[1]
                    ))
                })?;
        }
        a.push(total);
    }
    Ok(FourierCoeffs {
        a,
        analytic_tag: None,
    })
}

/// Geometric sequence a_k = q^k, k = 1..=K, with its analytic l^alpha tail mass.
pub fn geometric_sequence(q: f64, k_max: usize) -> Vec<f64> {
    (1..=k_max).map(|k| q.powi(k as i32)).collect()
}

/// sum_{k > K} q^(alpha k) for the geometric sequence.
pub fn geometric_tail_mass(q: f64, k_max: usize, alpha: f64) -> f64 {
    let qa = q.abs().powf(alpha);
    qa.powi(k_max as i32 + 1) / (1.0 - qa)
}

/// Indicator coefficient sequence a_k = sin(x k)/k, k = 1..=K.
pub fn indicator_sequence(x: f64, k_max: usize) -> Vec<f64> {
    (1..=k_max)
        .map(|k| (x * k as f64).sin() / k as f64)
        .collect()
}

/// Class kind metadata carried into reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ClassKind {
    /// Hoelder-indexed family: index-space covering exponent `a`, modulus
    /// exponent `b`; the expected entropy slope is a/b.
    Holder { a: f64, b: f64 },
    /// Indicator thresholds on a uniform grid (VC index 2, slope 1).
    IndicatorVc,
    Custom,
}

/// A finite, discretized class of index functions.
#[derive(Debug, Clone)]
pub struct FunctionClass {
    pub members: Vec<FunctionSpec>,
    pub kind: ClassKind,
    /// Index-grid resolution note for reports.
    pub grid_note: String,
}

impl FunctionClass {
    pub fn new(members: Vec<FunctionSpec>, kind: ClassKind, grid_note: impl Into<String>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Degenerate("function class must be nonempty".into()));
        }
        for m in &members {
            m.validate()?;
        }
        Ok(Self {
            members,
            kind,
            grid_note: grid_note.into(),
        })
    }

    /// Indicators I_[0, x] with x on a uniform grid over (0, x_hi].
    pub fn indicator_grid(count: usize, x_hi: f64) -> Result<Self> {
        let members = (1..=count)
            .map(|i| FunctionSpec::Indicator {
                x: x_hi * i as f64 / count as f64,
            })
            .collect();
        Self::new(
            members,
            ClassKind::IndicatorVc,
            format!("uniform thresholds, {count} points on (0, {x_hi}]"),
        )
    }

    /// The built-in Hoelder family with index covering exponent 1/2:
    /// indicator thresholds on the reciprocal grid {x_hi / m}. The member
    /// map is 1-Lipschitz in the threshold, so the expected entropy slope
    /// is a/b = 0.5.
    pub fn holder_family_half(count: usize, x_hi: f64) -> Result<Self> {
        let members = (1..=count)
            .map(|m| FunctionSpec::HolderMember {
                family: HOLDER_FAMILY_THRESHOLDS,
                theta: (x_hi / PI) / m as f64,
            })
            .collect();
        Self::new(
            members,
            ClassKind::Holder { a: 0.5, b: 1.0 },
            format!("reciprocal thresholds x_hi/m, m = 1..{count}"),
        )
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Coefficient tables of all members up to `max_lag`.
    pub fn coeff_tables(&self, max_lag: usize) -> Result<Vec<FourierCoeffs>> {
        self.members.iter().map(|m| fourier_coeffs(m, max_lag)).collect()
    }

    /// sup over members of the L2 norm; finite by construction but reported
    /// as a precondition diagnostic.
    pub fn sup_l2_norm(&self) -> f64 {
        self.members
            .iter()
            .map(|m| m.l2_norm_sq().sqrt())
            .fold(0.0, f64::max)
    }
}

/// Named catalog of function specs, loadable from a text file with one
/// `name: variant args...` entry per line.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub entries: BTreeMap<String, FunctionSpec>,
}

impl Catalog {
    pub fn resolve(&self, name: &str) -> Result<&FunctionSpec> {
        self.entries
            .get(name)
            .ok_or_else(|| Error::Unresolved(format!("catalog entry `{name}`")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, rest) = line.split_once(':').ok_or_else(|| {
                Error::Config(format!("line {}: expected `name: variant args`", lineno + 1))
            })?;
            let spec = parse_spec(rest.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
            spec.validate()?;
            if entries.insert(name.trim().to_string(), spec).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate entry `{}`",
                    lineno + 1,
                    name.trim()
                )));
            }
        }
        Ok(Self { entries })
    }
}

fn parse_spec(rest: &str) -> std::result::Result<FunctionSpec, String> {
    let mut parts = rest.split_whitespace();
    let variant = parts.next().ok_or("missing variant name")?;
    let args: Vec<&str> = parts.collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("bad number `{s}`: {e}"));
    match variant {
        "constant" => {
            let c = num(args.first().ok_or("constant needs a value")?)?;
            Ok(FunctionSpec::Constant(c))
        }
        "indicator" => {
            let x = num(args.first().ok_or("indicator needs a threshold")?)?;
            Ok(FunctionSpec::Indicator { x })
        }
        "cosine" => {
            let k = args
                .first()
                .ok_or("cosine needs an order")?
                .parse::<usize>()
                .map_err(|e| format!("bad order: {e}"))?;
            Ok(FunctionSpec::Cosine { k })
        }
        "arma" => {
            if args.len() < 2 {
                return Err("arma needs a scale and lag:coeff pairs".into());
            }
            let scale = num(args[0])?;
            let mut pairs = Vec::new();
            for p in &args[1..] {
                let (lag, coeff) = p
                    .split_once(':')
                    .ok_or_else(|| format!("bad lag:coeff pair `{p}`"))?;
                pairs.push((
                    lag.parse::<i64>().map_err(|e| format!("bad lag `{lag}`: {e}"))?,
                    num(coeff)?,
                ));
            }
            let filter = LinearFilter::from_pairs(pairs).map_err(|e| e.to_string())?;
            Ok(FunctionSpec::ArmaSpectralDensity { filter, scale })
        }
        "holder" => {
            if args.len() != 2 {
                return Err("holder needs family_id and theta".into());
            }
            let family = args[0]
                .parse::<u32>()
                .map_err(|e| format!("bad family id: {e}"))?;
            Ok(FunctionSpec::HolderMember {
                family,
                theta: num(args[1])?,
            })
        }
        "tabulated" => {
            let mut grid = Vec::new();
            let mut values = Vec::new();
            for p in &args {
                let (g, v) = p
                    .split_once(':')
                    .ok_or_else(|| format!("bad grid:value pair `{p}`"))?;
                grid.push(num(g)?);
                values.push(num(v)?);
            }
            Ok(FunctionSpec::Tabulated { grid, values })
        }
        other => Err(format!("unknown variant `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coefficients() {
        let c = fourier_coeffs(&FunctionSpec::Constant(1.0), 8).unwrap();
        assert_eq!(c.coeff(0), PI);
        assert!(c.a[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn indicator_coefficients_closed_form() {
        let c = fourier_coeffs(&FunctionSpec::Indicator { x: 1.0 }, 16).unwrap();
        assert_eq!(c.coeff(0), 1.0);
        for h in 1..=16usize {
            assert_eq!(c.coeff(h), (h as f64).sin() / h as f64);
        }
    }

    #[test]
    fn cosine_orthogonality() {
        let c = fourier_coeffs(&FunctionSpec::Cosine { k: 1 }, 8).unwrap();
        assert_eq!(c.coeff(1), PI / 2.0);
        for h in [0usize, 2, 3, 4, 5, 6, 7, 8] {
            assert_eq!(c.coeff(h), 0.0);
        }
    }

    #[test]
    fn arma_ma1_coefficients() {
        let f = FunctionSpec::ArmaSpectralDensity {
            filter: LinearFilter::ma1(0.5),
            scale: 1.0,
        };
        let c = fourier_coeffs(&f, 4).unwrap();
        // r_0 = 1 + theta^2, r_1 = theta.
        assert!((c.coeff(0) - 1.25 / 2.0).abs() < 1e-15);
        assert!((c.coeff(1) - 0.25).abs() < 1e-15);
        assert_eq!(c.coeff(2), 0.0);
    }

    #[test]
    fn analytic_agrees_with_quadrature() {
        for f in [
            FunctionSpec::Indicator { x: 1.3 },
            FunctionSpec::Cosine { k: 3 },
            FunctionSpec::Constant(0.7),
            FunctionSpec::ArmaSpectralDensity {
                filter: LinearFilter::ma1(-0.4),
                scale: 1.5,
            },
            FunctionSpec::Tabulated {
                grid: vec![0.0, 0.8, 2.0, PI],
                values: vec![0.3, 1.4, -0.2, 0.9],
            },
        ] {
            let exact = fourier_coeffs(&f, 24).unwrap();
            let quad = fourier_coeffs_quadrature(&f, 24, 1e-10).unwrap();
            for h in 0..=24 {
                assert!(
                    (exact.coeff(h) - quad.coeff(h)).abs() < 1e-8,
                    "{f:?} lag {h}: {} vs {}",
                    exact.coeff(h),
                    quad.coeff(h)
                );
            }
        }
    }

    #[test]
    fn parseval_error_decreases_with_truncation() {
        let f = FunctionSpec::Tabulated {
            grid: vec![0.0, 1.0, 2.0, PI],
            values: vec![1.0, -0.5, 0.8, 0.2],
        };
        let exact = f.l2_norm_sq();
        let err_at = |k: usize| {
            let c = fourier_coeffs(&f, k).unwrap();
            let approx = c.coeff(0) * c.coeff(0) / PI
                + 2.0 / PI * c.a[1..].iter().map(|v| v * v).sum::<f64>();
            (approx - exact).abs()
        };
        let errs: Vec<f64> = [8usize, 16, 32, 64, 128].iter().map(|&k| err_at(k)).collect();
        for w in errs.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-9), "errors not decreasing: {errs:?}");
        }
    }

    #[test]
    fn l2_norms_match_quadrature() {
        let f = FunctionSpec::ArmaSpectralDensity {
            filter: LinearFilter::ma1(0.5),
            scale: 1.0,
        };
        let by_quad = adaptive_simpson_panels(
            &|l: f64| f.evaluate(l) * f.evaluate(l),
            0.0,
            PI,
            1e-12,
            32,
        )
        .unwrap();
        assert!((f.l2_norm_sq() - by_quad).abs() < 1e-10);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(FunctionSpec::Indicator { x: 0.0 }.validate().is_err());
        assert!(FunctionSpec::Indicator { x: 4.0 }.validate().is_err());
        assert!(FunctionSpec::Cosine { k: 0 }.validate().is_err());
        assert!((FunctionSpec::Tabulated {
            grid: vec![0.0, 0.0, 1.0],
            values: vec![1.0, 2.0, 3.0],
        })
        .validate()
        .is_err());
        assert!((FunctionSpec::HolderMember { family: 9, theta: 0.5 }).validate().is_err());
    }

    #[test]
    fn catalog_parse_and_resolve() {
        let text = "
# built-in shapes
flat: constant 1.0
step: indicator 1.0        # I_[0,1]
wave: cosine 2
ma: arma 1.0 0:1.0 1:0.5
hold: holder 0 0.25
tab: tabulated 0.0:1.0 1.5:0.5 3.0:0.0
";
        let cat = Catalog::parse(text).unwrap();
        assert_eq!(cat.entries.len(), 6);
        assert!(matches!(cat.resolve("step").unwrap(), FunctionSpec::Indicator { .. }));
        assert!(matches!(cat.resolve("missing"), Err(Error::Unresolved(_))));
        assert!(Catalog::parse("bad line without colon").is_err());
        assert!(Catalog::parse("x: indicator nope").is_err());
        assert!(Catalog::parse("x: constant 1\nx: constant 2").is_err());
    }

    #[test]
    fn class_constructors() {
        let vc = FunctionClass::indicator_grid(50, PI).unwrap();
        assert_eq!(vc.len(), 50);
        assert_eq!(vc.kind, ClassKind::IndicatorVc);
        let hold = FunctionClass::holder_family_half(40, PI).unwrap();
        assert_eq!(hold.len(), 40);
        assert!(hold.sup_l2_norm() <= PI.sqrt() + 1e-12);
        assert!(FunctionClass::new(vec![], ClassKind::Custom, "").is_err());
    }

    #[test]
    fn geometric_and_indicator_sequences() {
        let g = geometric_sequence(0.5, 4);
        assert_eq!(g, vec![0.5, 0.25, 0.125, 0.0625]);
        let tail = geometric_tail_mass(0.5, 4, 1.0);
        assert!((tail - 0.0625).abs() < 1e-15);
        let ind = indicator_sequence(1.0, 3);
        assert!((ind[1] - (2.0f64).sin() / 2.0).abs() < 1e-15);
    }
}
