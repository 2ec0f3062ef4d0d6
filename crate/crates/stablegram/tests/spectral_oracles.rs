//! Integration checks of the spectral evaluations against their
//! independent oracles: quadrature for the coefficient-form integrated
//! periodogram and the L/K/U decomposition for the remainder.

mod common;

use common::{quadrature_integrated_periodogram, remainder_lku_oracle};
use stablegram::funcs::{fourier_coeffs, FunctionSpec};
use stablegram::rng::RngStream;
use stablegram::spectral::{
    integrated_periodogram, periodogram, power_transfer, remainder,
    self_normalized_integrated_periodogram,
};
use stablegram::timeseries::{simulate_iid, simulate_linear, LinearFilter};
use std::f64::consts::PI;

#[test]
fn coefficient_form_matches_quadrature_for_indicator() {
    let path = simulate_iid(64, 1.5, RngStream::new(0x0AC1E, 0)).unwrap();
    let f = FunctionSpec::Indicator { x: 1.0 };
    let coeffs = fourier_coeffs(&f, 63).unwrap();
    let j_coeff = integrated_periodogram(&path, &coeffs);
    let j_quad = quadrature_integrated_periodogram(&path, &f, 1e-10);
    assert!(
        (j_coeff - j_quad).abs() <= 1e-6 * j_quad.abs().max(1.0),
        "{j_coeff} vs {j_quad}"
    );
}

#[test]
fn coefficient_form_matches_quadrature_across_catalog() {
    let specs = vec![
        FunctionSpec::Constant(1.0),
        FunctionSpec::Indicator { x: 0.5 },
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
    for (i, &n) in [16usize, 64].iter().enumerate() {
        let path = simulate_iid(n, 1.5, RngStream::new(0x0AC1E, 1 + i as u64)).unwrap();
        for f in &specs {
            let coeffs = fourier_coeffs(f, n - 1).unwrap();
            let j_coeff = integrated_periodogram(&path, &coeffs);
            let j_quad = quadrature_integrated_periodogram(&path, f, 1e-10);
            assert!(
                (j_coeff - j_quad).abs() <= 1e-6 * (1.0 + j_quad.abs()),
                "n {n} f {f:?}: {j_coeff} vs {j_quad}"
            );
        }
    }
}

#[test]
fn self_normalized_is_integrated_over_gamma0() {
    let path = simulate_iid(48, 1.2, RngStream::new(0x0AC1E, 3)).unwrap();
    let coeffs = fourier_coeffs(&FunctionSpec::Indicator { x: 2.0 }, 47).unwrap();
    let j = integrated_periodogram(&path, &coeffs);
    let g0 = stablegram::timeseries::sample_autocov(&path, 0);
    let jt = self_normalized_integrated_periodogram(&path, &coeffs).unwrap();
    assert!((jt - j / g0).abs() <= 1e-12 * (1.0 + jt.abs()));
}

#[test]
fn remainder_matches_lku_decomposition_ma1() {
    let filter = LinearFilter::ma1(0.5);
    let sim = simulate_linear(32, &filter, 1.5, RngStream::new(0x0AC1E, 4)).unwrap();
    for i in 0..=16 {
        let x = PI * i as f64 / 16.0;
        let direct = remainder(&sim.x, &sim.innovations, &filter, x).unwrap();
        let oracle = remainder_lku_oracle(&sim, x);
        assert!(
            (direct - oracle).abs() <= 1e-8 * (1.0 + direct.abs()),
            "x {x}: {direct} vs {oracle}"
        );
    }
}

#[test]
fn remainder_matches_lku_decomposition_two_sided() {
    let filter = LinearFilter::from_pairs([(-2, 0.25), (-1, -0.3), (0, 1.0), (3, 0.1)]).unwrap();
    let sim = simulate_linear(48, &filter, 1.1, RngStream::new(0x0AC1E, 5)).unwrap();
    for &x in &[0.17, 0.9, 1.6, 2.8] {
        let direct = remainder(&sim.x, &sim.innovations, &filter, x).unwrap();
        let oracle = remainder_lku_oracle(&sim, x);
        assert!(
            (direct - oracle).abs() <= 1e-8 * (1.0 + direct.abs()),
            "x {x}: {direct} vs {oracle}"
        );
    }
}

#[test]
fn linear_process_periodogram_decomposes_into_main_and_remainder() {
    // I_{n,X} = I_{n,eps} |psi|^2 + R_n as an identity of the three
    // evaluations, across a frequency grid.
    let filter = LinearFilter::ma1(-0.7);
    let sim = simulate_linear(40, &filter, 1.8, RngStream::new(0x0AC1E, 6)).unwrap();
    for i in 1..10 {
        let x = PI * i as f64 / 10.0;
        let ix = periodogram(&sim.x, x).unwrap();
        let ie = periodogram(&sim.innovations, x).unwrap();
        let r = remainder(&sim.x, &sim.innovations, &filter, x).unwrap();
        let recomposed = ie * power_transfer(&filter, x) + r;
        assert!((ix - recomposed).abs() <= 1e-10 * (1.0 + ix));
    }
}
