//! Sample paths: i.i.d. and linear-process simulation, and the uncentered
//! sample autocovariance / autocorrelation.
//!
//! The autocovariance is deliberately not mean-centered:
//! `gamma_n(h) = (1/n) sum_{t=1}^{n-|h|} X_t X_{t+h}`. Centering by the
//! sample mean is not meaningful for infinite-variance paths, and every
//! statistic downstream is defined in terms of this estimator.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::numeric::{ksum, KahanSum};
use crate::rng::{splitmix64, RngStream};
use crate::stable::{sample_sas, StableLaw};

/// Analytic tail family of a truncated infinite filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FilterTail {
    /// |psi_j| = c r^|j| beyond the truncation radius, 0 < r < 1.
    Geometric { ratio: f64 },
    /// |psi_j| = c |j|^-p beyond the truncation radius.
    PowerLaw { exponent: f64 },
}

/// Two-sided real filter with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFilter {
    min_lag: i64,
    coeffs: Vec<f64>,
    /// Tag describing the infinite filter this one truncates, if any.
    pub tail: Option<FilterTail>,
}

impl LinearFilter {
    /// Build from `(lag, coefficient)` pairs; unlisted lags are zero.
    pub fn from_pairs<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Result<Self> {
        let map: BTreeMap<i64, f64> = pairs.into_iter().collect();
        let nonzero: Vec<i64> = map
            .iter()
            .filter(|(_, &c)| c != 0.0)
            .map(|(&j, _)| j)
            .collect();
        if nonzero.is_empty() {
            return Err(Error::Degenerate(
                "filter must have at least one nonzero coefficient".into(),
            ));
        }
        let min_lag = *nonzero.first().unwrap();
        let max_lag = *nonzero.last().unwrap();
        let mut coeffs = vec![0.0; (max_lag - min_lag + 1) as usize];
        for (&j, &c) in &map {
            if j >= min_lag && j <= max_lag {
                coeffs[(j - min_lag) as usize] = c;
            }
        }
        Ok(Self {
            min_lag,
            coeffs,
            tail: None,
        })
    }

    /// The identity filter {0: 1}.
    pub fn identity() -> Self {
        Self::from_pairs([(0, 1.0)]).unwrap()
    }

    /// MA(1) filter {0: 1, 1: theta}.
    pub fn ma1(theta: f64) -> Self {
        Self::from_pairs([(0, 1.0), (1, theta)]).unwrap()
    }

    /// Causal AR(1)-equivalent filter psi_j = phi^j truncated at lag `radius`.
    pub fn ar1_truncated(phi: f64, radius: usize) -> Result<Self> {
        if !(phi.abs() < 1.0) {
            return Err(Error::param("phi", phi, "must satisfy |phi| < 1"));
        }
        let mut f = Self::from_pairs((0..=radius as i64).map(|j| (j, phi.powi(j as i32))))?;
        f.tail = Some(FilterTail::Geometric { ratio: phi.abs() });
        Ok(f)
    }

    pub fn with_tail(mut self, tail: FilterTail) -> Self {
        self.tail = Some(tail);
        self
    }

    /// Smallest lag with a listed coefficient.
    pub fn min_lag(&self) -> i64 {
        self.min_lag
    }

    /// Largest lag with a listed coefficient.
    pub fn max_lag(&self) -> i64 {
        self.min_lag + self.coeffs.len() as i64 - 1
    }

    /// Number of strictly negative support lags.
    pub fn neg_span(&self) -> usize {
        (-self.min_lag()).max(0) as usize
    }

    /// Number of strictly positive support lags.
    pub fn pos_span(&self) -> usize {
        self.max_lag().max(0) as usize
    }

    pub fn coeff(&self, j: i64) -> f64 {
        if j < self.min_lag || j > self.max_lag() {
            0.0
        } else {
            self.coeffs[(j - self.min_lag) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.min_lag + i as i64, c))
    }

    /// Cosine coefficients of the power transfer function:
    /// |psi(e^{-i lambda})|^2 = r_0 + 2 sum_{m>=1} r_m cos(m lambda) with
    /// r_m = sum_j psi_j psi_{j+m}.
    pub fn power_transfer_cosine_coeffs(&self) -> Vec<f64> {
        let m_max = self.coeffs.len() - 1;
        (0..=m_max)
            .map(|m| {
                ksum(
                    (0..self.coeffs.len() - m)
                        .map(|i| self.coeffs[i] * self.coeffs[i + m]),
                )
            })
            .collect()
    }

    /// Order-insensitive content hash used for provenance tags.
    pub fn fingerprint(&self) -> u64 {
        let mut h = splitmix64(self.min_lag as u64 ^ 0x0F11_7E12);
        for &c in &self.coeffs {
            h = splitmix64(h ^ c.to_bits());
        }
        h
    }
}

/// Provenance of a sample path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Iid { stream: RngStream },
    Linear { filter_fp: u64, eps_fp: u64, stream: RngStream },
    External,
}

impl Origin {
    pub fn label(&self) -> &'static str {
        match self {
            Origin::Iid { .. } => "iid",
            Origin::Linear { .. } => "linear",
            Origin::External => "external",
        }
    }

    pub fn stream(&self) -> Option<RngStream> {
        match self {
            Origin::Iid { stream } | Origin::Linear { stream, .. } => Some(*stream),
            Origin::External => None,
        }
    }
}

/// A finite real time series with provenance metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    pub values: Vec<f64>,
    /// Innovation stability index, when known.
    pub alpha: Option<f64>,
    pub origin: Origin,
}

impl SamplePath {
    pub fn external(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Degenerate("sample path must be nonempty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("sample path contains non-finite values".into()));
        }
        Ok(Self {
            values,
            alpha: None,
            origin: Origin::External,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn fingerprint(&self) -> u64 {
        fingerprint_values(&self.values)
    }
}

pub(crate) fn fingerprint_values(values: &[f64]) -> u64 {
    let mut h = splitmix64(values.len() as u64 ^ 0x5A17);
    for &v in values {
        h = splitmix64(h ^ v.to_bits());
    }
    h
}

fn check_innovation_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::param("alpha", alpha, "innovation index must lie in (0, 2)"));
    }
    Ok(())
}

/// Path of `n` i.i.d. S_alpha(1, 0, 0) innovations.
pub fn simulate_iid(n: usize, alpha: f64, stream: RngStream) -> Result<SamplePath> {
    check_innovation_alpha(alpha)?;
    if n == 0 {
        return Err(Error::param("n", 0.0, "path length must be at least 1"));
    }
    let law = StableLaw::sas(alpha, 1.0)?;
    Ok(SamplePath {
        values: sample_sas(&law, stream, n)?,
        alpha: Some(alpha),
        origin: Origin::Iid { stream },
    })
}

/// Output of a linear-process simulation.
///
/// `innovations` is the segment aligned with t = 1..n; `eps_window` is the
/// full driving window over t in [1 - pos_span, n + neg_span], which the
/// remainder analysis needs.
#[derive(Debug, Clone)]
pub struct LinearSim {
    pub x: SamplePath,
    pub innovations: SamplePath,
    pub eps_window: Vec<f64>,
    /// Time index of `eps_window[0]`.
    pub window_start: i64,
    pub filter: LinearFilter,
}

impl LinearSim {
    /// Innovation at absolute time index t, zero outside the window.
    pub fn eps_at(&self, t: i64) -> f64 {
        let i = t - self.window_start;
        if i < 0 || i as usize >= self.eps_window.len() {
            0.0
        } else {
            self.eps_window[i as usize]
        }
    }
}

/// X_t = sum_j psi_j eps_{t-j}, computed exactly over the finite support.
///
/// Draws n + neg_span + pos_span innovations so no burn-in bias exists.
pub fn simulate_linear(
    n: usize,
    filter: &LinearFilter,
    alpha: f64,
    stream: RngStream,
) -> Result<LinearSim> {
    check_innovation_alpha(alpha)?;
    if n == 0 {
        return Err(Error::param("n", 0.0, "path length must be at least 1"));
    }
    let law = StableLaw::sas(alpha, 1.0)?;
    let window_start = 1 - filter.pos_span() as i64;
    let window_len = n + filter.pos_span() + filter.neg_span();
    let eps_window = sample_sas(&law, stream, window_len)?;

    let mut x = Vec::with_capacity(n);
    for t in 1..=n as i64 {
        let mut acc = 0.0;
        for (j, c) in filter.iter() {
            if c != 0.0 {
                acc += c * eps_window[(t - j - window_start) as usize];
            }
        }
        x.push(acc);
    }

    let aligned_offset = (1 - window_start) as usize;
    let innovations = SamplePath {
        values: eps_window[aligned_offset..aligned_offset + n].to_vec(),
        alpha: Some(alpha),
        origin: Origin::Iid { stream },
    };
    let x_path = SamplePath {
        values: x,
        alpha: Some(alpha),
        origin: Origin::Linear {
            filter_fp: filter.fingerprint(),
            eps_fp: innovations.fingerprint(),
            stream,
        },
    };
    Ok(LinearSim {
        x: x_path,
        innovations,
        eps_window,
        window_start,
        filter: filter.clone(),
    })
}

/// Uncentered lag-h sample autocovariance; empty sums (h >= n) are 0.
pub fn sample_autocov(path: &SamplePath, h: usize) -> f64 {
    autocov_values(&path.values, h)
}

pub(crate) fn autocov_values(values: &[f64], h: usize) -> f64 {
    let n = values.len();
    if h >= n {
        return 0.0;
    }
    let mut acc = KahanSum::new();
    for t in 0..n - h {
        acc.add(values[t] * values[t + h]);
    }
    acc.value() / n as f64
}

/// Sample autocorrelation rho_n(h) = gamma_n(h) / gamma_n(0).
pub fn sample_autocorr(path: &SamplePath, h: usize) -> Result<f64> {
    let g0 = sample_autocov(path, 0);
    if g0 <= 0.0 {
        return Err(Error::Degenerate(
            "autocorrelation undefined: gamma_n(0) = 0 (all-zero path)".into(),
        ));
    }
    Ok(sample_autocov(path, h) / g0)
}

/// gamma_n(0..=max_lag) in one pass.
///
/// Uses the direct compensated sums at small sizes and an FFT correlation
/// above `n * (max_lag+1) > 2^18`; the two routes agree to machine
/// precision scale and the switch point is fixed, so outputs stay
/// deterministic.
pub fn autocov_batch(values: &[f64], max_lag: usize) -> Vec<f64> {
    let n = values.len();
    let lags = max_lag.min(n.saturating_sub(1));
    let mut out = if n * (lags + 1) <= (1 << 18) {
        (0..=lags).map(|h| autocov_values(values, h)).collect()
    } else {
        autocov_fft(values, lags)
    };
    out.extend(std::iter::repeat_n(0.0, max_lag - lags));
    out
}

fn autocov_fft(values: &[f64], max_lag: usize) -> Vec<f64> {
    use rustfft::{num_complex::Complex, FftPlanner};
    let n = values.len();
    let len = (n + max_lag + 1).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = values
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(len)
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    let scale = 1.0 / (len as f64 * n as f64);
    (0..=max_lag).map(|k| buf[k].re * scale).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    alpha: Option<f64>,
    origin: String,
    master_seed: Option<u64>,
    stream_id: Option<u64>,
}

/// Write a path as single-column CSV plus a JSON sidecar `<file>.json`
/// carrying (alpha, origin, seed).
pub fn export_path_csv(file: &Path, path: &SamplePath) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(file)?);
    writeln!(w, "value")?;
    for v in &path.values {
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    let sidecar = Sidecar {
        alpha: path.alpha,
        origin: path.origin.label().to_string(),
        master_seed: path.origin.stream().map(|s| s.master_seed),
        stream_id: path.origin.stream().map(|s| s.stream_id),
    };
    let mut sc_path = file.as_os_str().to_owned();
    sc_path.push(".json");
    std::fs::write(
        sc_path,
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )?;
    Ok(())
}

/// Read a single-column CSV path; the sidecar, when present, restores alpha.
/// Imported paths are tagged External regardless of their original origin.
pub fn import_path_csv(file: &Path) -> Result<SamplePath> {
    let reader = std::io::BufReader::new(std::fs::File::open(file)?);
    let mut values = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || (i == 0 && trimmed == "value") {
            continue;
        }
        values.push(trimmed.parse::<f64>().map_err(|e| {
            Error::Config(format!("{}:{}: bad value: {e}", file.display(), i + 1))
        })?);
    }
    let mut path = SamplePath::external(values)?;
    let mut sc_path = file.as_os_str().to_owned();
    sc_path.push(".json");
    if let Ok(raw) = std::fs::read_to_string(sc_path) {
        if let Ok(sc) = serde_json::from_str::<Sidecar>(&raw) {
            path.alpha = sc.alpha;
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::hill_tail_index;
    use proptest::prelude::*;

    fn stream(id: u64) -> RngStream {
        RngStream::new(0xABCD, id)
    }

    #[test]
    fn iid_length_one() {
        let p = simulate_iid(1, 1.5, stream(0)).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn iid_rejects_bad_alpha() {
        assert!(simulate_iid(8, 2.0, stream(0)).is_err());
        assert!(simulate_iid(8, 0.0, stream(0)).is_err());
        assert!(simulate_iid(0, 1.0, stream(0)).is_err());
    }

    #[test]
    fn iid_deterministic() {
        let a = simulate_iid(128, 1.2, stream(1)).unwrap();
        let b = simulate_iid(128, 1.2, stream(1)).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn iid_hill_index_near_alpha() {
        let p = simulate_iid(1_000_000, 1.2, stream(2)).unwrap();
        let hill = hill_tail_index(&p.values, 0.01).unwrap();
        assert!((1.05..=1.35).contains(&hill), "hill = {hill}");
    }

    #[test]
    fn identity_filter_is_bit_identical_to_iid() {
        let sim = simulate_linear(256, &LinearFilter::identity(), 1.5, stream(3)).unwrap();
        let iid = simulate_iid(256, 1.5, stream(3)).unwrap();
        assert_eq!(sim.x.values, iid.values);
        assert_eq!(sim.innovations.values, iid.values);
    }

    #[test]
    fn scalar_filter_scales_innovations() {
        let f = LinearFilter::from_pairs([(0, 0.5)]).unwrap();
        let sim = simulate_linear(64, &f, 1.5, stream(4)).unwrap();
        for (x, e) in sim.x.values.iter().zip(&sim.innovations.values) {
            assert_eq!(*x, 0.5 * e);
        }
    }

    #[test]
    fn ma_filter_matches_hand_convolution() {
        let theta = 0.7;
        let f = LinearFilter::ma1(theta);
        let sim = simulate_linear(4, &f, 1.5, stream(5)).unwrap();
        // X_t = eps_t + theta * eps_{t-1}; window starts at t = 0.
        for t in 1..=4i64 {
            let expected = sim.eps_at(t) + theta * sim.eps_at(t - 1);
            assert!((sim.x.values[(t - 1) as usize] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn two_sided_filter_window() {
        let f = LinearFilter::from_pairs([(-2, 0.3), (0, 1.0), (1, -0.4)]).unwrap();
        assert_eq!(f.neg_span(), 2);
        assert_eq!(f.pos_span(), 1);
        let sim = simulate_linear(10, &f, 1.2, stream(6)).unwrap();
        assert_eq!(sim.eps_window.len(), 13);
        assert_eq!(sim.window_start, 0);
        for t in 1..=10i64 {
            let expected =
                0.3 * sim.eps_at(t + 2) + sim.eps_at(t) - 0.4 * sim.eps_at(t - 1);
            assert!((sim.x.values[(t - 1) as usize] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn autocov_examples() {
        let p = SamplePath::external(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(sample_autocov(&p, 1), 0.75);
        let q = SamplePath::external(vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(sample_autocov(&q, 1), -0.75);
        assert_eq!(sample_autocov(&p, 4), 0.0);
        assert_eq!(sample_autocov(&p, 7), 0.0);
    }

    #[test]
    fn autocorr_examples() {
        let p = SamplePath::external(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(sample_autocorr(&p, 0).unwrap(), 1.0);
        assert_eq!(sample_autocorr(&p, 1).unwrap(), 0.75);
        let scaled = SamplePath::external(vec![2.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(sample_autocorr(&scaled, 1).unwrap(), 0.75);
        let zeros = SamplePath::external(vec![0.0; 4]).unwrap();
        assert!(sample_autocorr(&zeros, 1).is_err());
    }

    #[test]
    fn filter_requires_a_nonzero_coefficient() {
        assert!(LinearFilter::from_pairs([(0, 0.0), (3, 0.0)]).is_err());
    }

    #[test]
    fn batch_matches_direct_and_fft() {
        let p = simulate_iid(2048, 1.5, stream(7)).unwrap();
        let direct: Vec<f64> = (0..=600).map(|h| sample_autocov(&p, h)).collect();
        let batch = autocov_batch(&p.values, 600); // n*(K+1) > 2^18: FFT route
        assert!(2048 * 601 > (1 << 18));
        for (h, (a, b)) in direct.iter().zip(&batch).enumerate() {
            let tol = 1e-11 * (1.0 + a.abs());
            assert!((a - b).abs() <= tol, "lag {h}: {a} vs {b}");
        }
    }

    #[test]
    fn csv_round_trip_with_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("path.csv");
        let p = simulate_iid(32, 1.4, stream(8)).unwrap();
        export_path_csv(&file, &p).unwrap();
        let q = import_path_csv(&file).unwrap();
        assert_eq!(p.values, q.values);
        assert_eq!(q.alpha, Some(1.4));
        assert_eq!(q.origin, Origin::External);
        assert!(file.with_extension("csv.json").exists());
    }

    proptest! {
        #[test]
        fn cauchy_schwarz_surrogate(values in prop::collection::vec(-1e6f64..1e6, 1..200), h in 0usize..220) {
            let p = SamplePath::external(values).unwrap();
            let g0 = sample_autocov(&p, 0);
            let gh = sample_autocov(&p, h);
            prop_assert!(gh.abs() <= g0 * (1.0 + 1e-12) + f64::MIN_POSITIVE);
        }

        #[test]
        fn autocov_scale_equivariance(values in prop::collection::vec(-1e3f64..1e3, 2..64), c in -50.0f64..50.0) {
            let p = SamplePath::external(values.clone()).unwrap();
            let scaled = SamplePath::external(values.iter().map(|v| c * v).collect()).unwrap();
            let g1 = sample_autocov(&p, 1);
            let g1s = sample_autocov(&scaled, 1);
            prop_assert!((g1s - c * c * g1).abs() <= 1e-9 * (1.0 + g1s.abs()));
        }
    }
}
