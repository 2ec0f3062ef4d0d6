//! Order-statistics utilities: two-sample Kolmogorov–Smirnov distance,
//! the Hill tail-index estimator, quantiles, and bootstrap noise bands.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Two-sample KS distance, sup_x |F_a(x) - F_b(x)|, in [0, 1].
pub fn ks_distance(sample_a: &[f64], sample_b: &[f64]) -> Result<f64> {
    if sample_a.is_empty() || sample_b.is_empty() {
        return Err(Error::Degenerate("ks_distance requires nonempty samples".into()));
    }
    let mut a = sample_a.to_vec();
    let mut b = sample_b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Hill estimator of the tail index over the top order statistics of |x|.
///
/// With |x|_(1) >= ... >= |x|_(N) and k = floor(top_fraction * N), returns
/// the reciprocal of the mean log-spacing (1/k) sum_{i<=k} log(|x|_(i) / |x|_(k+1)).
pub fn hill_tail_index(sample: &[f64], top_fraction: f64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Degenerate("hill_tail_index of empty sample".into()));
    }
    if !(top_fraction > 0.0 && top_fraction <= 0.1) {
        return Err(Error::param(
            "top_fraction",
            top_fraction,
            "must lie in (0, 0.1]",
        ));
    }
    let mut abs: Vec<f64> = sample.iter().map(|x| x.abs()).collect();
    abs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let k = ((sample.len() as f64 * top_fraction).floor() as usize).max(1);
    if k >= abs.len() {
        return Err(Error::Degenerate("hill_tail_index: sample too small".into()));
    }
    let threshold = abs[k];
    if threshold <= 0.0 {
        return Err(Error::Degenerate(
            "hill_tail_index: nonpositive order statistic in the tail".into(),
        ));
    }
    let mean_log: f64 = abs[..k].iter().map(|x| (x / threshold).ln()).sum::<f64>() / k as f64;
    if mean_log <= 0.0 {
        return Err(Error::Degenerate(
            "hill_tail_index: degenerate log-spacings".into(),
        ));
    }
    Ok(1.0 / mean_log)
}

/// Linear-interpolation quantile of an unsorted sample (type 7).
pub fn quantile(sample: &[f64], p: f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    quantile_sorted(&xs, p)
}

pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

pub fn median(sample: &[f64]) -> f64 {
    quantile(sample, 0.5)
}

/// Interquartile range q(0.75) - q(0.25).
pub fn iqr(sample: &[f64]) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    quantile_sorted(&xs, 0.75) - quantile_sorted(&xs, 0.25)
}

/// Scale-free standardization (x - median) / IQR, the comparison form used
/// when the absolute limit scales are unknown. Degenerate samples (IQR = 0)
/// are only median-shifted.
pub fn standardize(sample: &[f64]) -> Vec<f64> {
    let m = median(sample);
    let s = iqr(sample);
    if s > 0.0 {
        sample.iter().map(|x| (x - m) / s).collect()
    } else {
        sample.iter().map(|x| x - m).collect()
    }
}

/// Bootstrap standard error of a statistic under resampling with
/// replacement; `resamples` is fixed by the caller and the draw order is
/// deterministic in the stream.
pub fn bootstrap_se<F: Fn(&[f64]) -> f64>(
    sample: &[f64],
    statistic: F,
    resamples: usize,
    stream: RngStream,
) -> f64 {
    use rand::Rng;
    let mut rng = stream.rng();
    let n = sample.len();
    let mut values = Vec::with_capacity(resamples);
    let mut buf = vec![0.0; n];
    for _ in 0..resamples {
        for slot in buf.iter_mut() {
            *slot = sample[rng.gen_range(0..n)];
        }
        values.push(statistic(&buf));
    }
    let mean = values.iter().sum::<f64>() / resamples as f64;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / resamples as f64).sqrt()
}

/// Empirical correlation of sign indicators, used as an independence
/// diagnostic for heavy-tailed pairs (plain correlation has no moments).
pub fn sign_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Degenerate(
            "sign_correlation requires equal-length nonempty samples".into(),
        ));
    }
    let n = a.len() as f64;
    let sa: Vec<f64> = a.iter().map(|x| x.signum()).collect();
    let sb: Vec<f64> = b.iter().map(|x| x.signum()).collect();
    let ma = sa.iter().sum::<f64>() / n;
    let mb = sb.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in sa.iter().zip(&sb) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        return Ok(0.0);
    }
    Ok(cov / (va * vb).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn ks_identical_samples_is_zero() {
        let xs = vec![3.0, 1.0, 2.0, 2.5];
        assert_eq!(ks_distance(&xs, &xs).unwrap(), 0.0);
    }

    #[test]
    fn ks_disjoint_supports_is_one() {
        let a = vec![0.0, 1.0, 2.0];
        let b = vec![10.0, 11.0];
        assert_eq!(ks_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn ks_known_small_case() {
        let a = vec![1.0, 1.0, 4.0, 4.0];
        let b = vec![1.0, 1.0, 1.0, 4.0];
        assert!((ks_distance(&a, &b).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn ks_handles_constant_samples() {
        let a = vec![0.0; 8];
        let b = vec![0.0; 5];
        assert_eq!(ks_distance(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn hill_pareto_oracle() {
        // Pareto(alpha = 2): X = U^(-1/2).
        let mut rng = RngStream::new(77, 0).rng();
        let xs: Vec<f64> = (0..100_000)
            .map(|_| rng.gen::<f64>().max(1e-12).powf(-0.5))
            .collect();
        let hill = hill_tail_index(&xs, 0.01).unwrap();
        assert!((1.8..=2.2).contains(&hill), "hill = {hill}");
    }

    #[test]
    fn hill_rejects_degenerate_input() {
        assert!(hill_tail_index(&[], 0.05).is_err());
        assert!(hill_tail_index(&[1.0, 1.0, 1.0, 1.0], 0.5).is_err());
        let constant = vec![2.0; 100];
        assert!(hill_tail_index(&constant, 0.05).is_err());
    }

    #[test]
    fn quantiles_and_iqr() {
        let xs = vec![4.0, 1.0, 3.0, 2.0];
        assert_eq!(median(&xs), 2.5);
        assert_eq!(quantile(&xs, 0.0), 1.0);
        assert_eq!(quantile(&xs, 1.0), 4.0);
        assert_eq!(iqr(&xs), 1.5);
    }

    #[test]
    fn standardize_centers_and_scales() {
        let xs = vec![10.0, 20.0, 30.0, 40.0];
        let z = standardize(&xs);
        assert!(median(&z).abs() < 1e-12);
        assert!((iqr(&z) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bootstrap_se_is_deterministic_and_sane() {
        let mut rng = RngStream::new(5, 1).rng();
        let xs: Vec<f64> = (0..400).map(|_| rng.gen::<f64>()).collect();
        let s1 = bootstrap_se(&xs, median, 200, RngStream::new(5, 2));
        let s2 = bootstrap_se(&xs, median, 200, RngStream::new(5, 2));
        assert_eq!(s1, s2);
        // Median of U(0,1) at n=400: SE ~ 1/(2 f sqrt(n)) = 0.025.
        assert!(s1 > 0.005 && s1 < 0.1, "se = {s1}");
    }

    #[test]
    fn sign_correlation_of_independent_streams() {
        let mut ra = RngStream::new(9, 0).rng();
        let mut rb = RngStream::new(9, 1).rng();
        let a: Vec<f64> = (0..10_000).map(|_| ra.gen::<f64>() - 0.5).collect();
        let b: Vec<f64> = (0..10_000).map(|_| rb.gen::<f64>() - 0.5).collect();
        let c = sign_correlation(&a, &b).unwrap();
        assert!(c.abs() < 3.0 / 100.0, "corr = {c}");
    }
}
