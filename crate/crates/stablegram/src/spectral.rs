//! Periodogram, integrated periodogram, transfer function, and the
//! linear-process remainder.
//!
//! Two algebraically equivalent routes to the periodogram are kept side by
//! side: the direct squared-modulus DFT and the autocovariance form
//! `I_n(lambda) = gamma_n(0) + 2 sum_{h<n} cos(lambda h) gamma_n(h)`.
//! They are mutual oracles and the crate asserts their agreement to 1e-9.
//!
//! The coefficient form of the integrated periodogram
//! `J_n(f) = gamma_n(0) a_0(f) + 2 sum_h a_h(f) gamma_n(h)` is the canonical
//! evaluation; quadrature of `int I_n f` is demoted to a test oracle.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::funcs::FourierCoeffs;
use crate::numeric::KahanSum;
use crate::timeseries::{autocov_batch, sample_autocov, LinearFilter, Origin, SamplePath};

/// One (frequency, value) evaluation; periodogram values are nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SpectralEvaluation {
    pub lambda: f64,
    pub value: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=PI).contains(&lambda) {
        return Err(Error::param("lambda", lambda, "frequency must lie in [0, pi]"));
    }
    Ok(())
}

/// I_n(lambda) = | n^{-1/2} sum_{t=1}^n e^{-i lambda t} X_t |^2.
pub fn periodogram(path: &SamplePath, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let n = path.len() as f64;
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for (idx, &x) in path.values.iter().enumerate() {
        let t = (idx + 1) as f64;
        let (s, c) = (lambda * t).sin_cos();
        re.add(c * x);
        im.add(-s * x);
    }
    let (a, b) = (re.value(), im.value());
    Ok((a * a + b * b) / n)
}

/// The autocovariance form of the periodogram,
/// gamma_n(0) + 2 sum_{h=1}^{n-1} cos(lambda h) gamma_n(h).
pub fn periodogram_via_autocov(path: &SamplePath, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let gammas = autocov_batch(&path.values, path.len() - 1);
    Ok(periodogram_from_gammas(&gammas, lambda))
}

/// Same evaluation from a precomputed gamma_n(0..) table.
pub fn periodogram_from_gammas(gammas: &[f64], lambda: f64) -> f64 {
    let mut acc = KahanSum::new();
    acc.add(gammas[0]);
    for (h, &g) in gammas.iter().enumerate().skip(1) {
        acc.add(2.0 * (lambda * h as f64).cos() * g);
    }
    acc.value()
}

/// Coefficient-form integrated periodogram
/// J_n(f) = gamma_n(0) a_0 + 2 sum_{h=1}^{n-1} a_h gamma_n(h).
///
/// Coefficient tables shorter than n-1 are zero-extended, which is exact
/// whenever the function's coefficients vanish beyond the table.
pub fn integrated_periodogram(path: &SamplePath, coeffs: &FourierCoeffs) -> f64 {
    let max_lag = coeffs.truncation().min(path.len() - 1);
    let gammas = autocov_batch(&path.values, max_lag);
    let mut acc = KahanSum::new();
    acc.add(gammas[0] * coeffs.coeff(0));
    for h in 1..=max_lag {
        acc.add(2.0 * coeffs.coeff(h) * gammas[h]);
    }
    acc.value()
}

/// Self-normalized integrated periodogram, J_n(f) / gamma_n(0); exactly
/// invariant under rescaling of the path.
pub fn self_normalized_integrated_periodogram(
    path: &SamplePath,
    coeffs: &FourierCoeffs,
) -> Result<f64> {
    let g0 = sample_autocov(path, 0);
    if g0 <= 0.0 {
        return Err(Error::Degenerate(
            "self-normalization undefined: gamma_n(0) = 0".into(),
        ));
    }
    Ok(integrated_periodogram(path, coeffs) / g0)
}

/// psi(e^{-i lambda}) = sum_j psi_j e^{-i lambda j}.
pub fn transfer_function(filter: &LinearFilter, lambda: f64) -> Complex64 {
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for (j, c) in filter.iter() {
        if c != 0.0 {
            let (s, co) = (lambda * j as f64).sin_cos();
            re.add(c * co);
            im.add(-c * s);
        }
    }
    Complex64::new(re.value(), im.value())
}

/// Power transfer function |psi(e^{-i lambda})|^2.
pub fn power_transfer(filter: &LinearFilter, lambda: f64) -> f64 {
    transfer_function(filter, lambda).norm_sqr()
}

/// Remainder R_n(lambda) = I_{n,X}(lambda) - I_{n,eps}(lambda) |psi(e^{-i lambda})|^2.
///
/// `path_x` must have been produced by `simulate_linear` from `path_eps`
/// through `filter`; the provenance tags are checked.
pub fn remainder(
    path_x: &SamplePath,
    path_eps: &SamplePath,
    filter: &LinearFilter,
    lambda: f64,
) -> Result<f64> {
    check_lambda(lambda)?;
    match path_x.origin {
        Origin::Linear { filter_fp, eps_fp, .. } => {
            if filter_fp != filter.fingerprint() {
                return Err(Error::Alignment(
                    "path_x was generated through a different filter".into(),
                ));
            }
            if eps_fp != path_eps.fingerprint() {
                return Err(Error::Alignment(
                    "path_eps is not the innovation segment that drove path_x".into(),
                ));
            }
        }
        _ => {
            return Err(Error::Alignment(
                "path_x does not carry linear-process provenance".into(),
            ));
        }
    }
    let ix = periodogram(path_x, lambda)?;
    let ie = periodogram(path_eps, lambda)?;
    Ok(ix - ie * power_transfer(filter, lambda))
}
