#![allow(dead_code)] // each suite uses its own subset of the oracles

//! Shared independent oracles for the integration suites.
//!
//! Everything here deliberately avoids the library's coefficient-form
//! evaluation paths: the integrated periodogram is checked by adaptive
//! quadrature of the frequency integral, and the linear-process remainder
//! by the L_n / K_n / U_nj decomposition evaluated from raw DFT sums.

use num_complex::Complex64;
use stablegram::funcs::FunctionSpec;
use stablegram::numeric::adaptive_simpson_panels;
use stablegram::spectral::{periodogram, transfer_function};
use stablegram::timeseries::{LinearSim, SamplePath};
use std::f64::consts::PI;

/// Quadrature oracle for J_n(f) = int_0^pi I_n(lambda) f(lambda) d lambda.
///
/// The initial panel count resolves the degree-(n-1) trigonometric
/// polynomial I_n, and the integral is split at f's breakpoints with
/// endpoint evaluations taken as interior limits.
pub fn quadrature_integrated_periodogram(path: &SamplePath, f: &FunctionSpec, abs_tol: f64) -> f64 {
    let mut cuts = vec![0.0, PI];
    cuts.extend(f.breakpoints());
    cuts.retain(|c| (0.0..=PI).contains(c));
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let n = path.len();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let nudge = (hi - lo) * 1e-12;
        let integrand = |l: f64| {
            let l = l.clamp(lo + nudge, hi - nudge);
            periodogram(path, l).unwrap() * f.evaluate(l)
        };
        let panels = 8 + (2 * n) * ((hi - lo) / PI).ceil() as usize;
        total += adaptive_simpson_panels(&integrand, lo, hi, abs_tol / cuts.len() as f64, panels)
            .expect("oracle quadrature must converge");
    }
    total
}

fn dft_eps(sim: &LinearSim, from: i64, to: i64, x: f64) -> Complex64 {
    (from..=to)
        .map(|t| Complex64::from_polar(sim.eps_at(t), -x * t as f64))
        .sum()
}

/// Remainder oracle: R_n(x) = n^{-1} (psi(e^{-ix}) L_n(x) K_n(-x)
///                             + psi(e^{ix}) L_n(-x) K_n(x) + |K_n(x)|^2),
/// with L_n(x) = sum_{t=1..n} eps_t e^{-ixt},
/// U_nj(x) = (sum_{t=1-j..n-j} - sum_{t=1..n}) eps_t e^{-ixt},
/// K_n(x) = sum_j psi_j e^{-ixj} U_nj(x).
///
/// This is the decomposition of |psi(e^{-ix}) L_n(x) + K_n(x)|^2, verified
/// pathwise against the direct remainder to machine precision.
pub fn remainder_lku_oracle(sim: &LinearSim, x: f64) -> f64 {
    let n = sim.x.len() as i64;
    let l = |x: f64| dft_eps(sim, 1, n, x);
    let u = |j: i64, x: f64| dft_eps(sim, 1 - j, n - j, x) - l(x);
    let k = |x: f64| -> Complex64 {
        sim.filter
            .iter()
            .map(|(j, c)| Complex64::from_polar(c, -x * j as f64) * u(j, x))
            .sum()
    };
    let psi = |x: f64| transfer_function(&sim.filter, x);
    let kx = k(x);
    let value = psi(x) * l(x) * k(-x) + psi(-x) * l(-x) * kx + kx * kx.conj();
    value.re / n as f64
}
