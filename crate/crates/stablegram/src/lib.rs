//! Simulation and verification laboratory for the spectral analysis of
//! heavy-tailed time series.
//!
//! The crate generates symmetric alpha-stable linear processes, computes
//! function-indexed integrated periodograms, samples the associated stable
//! limit processes, and runs Monte Carlo experiments that check scaling
//! limits, summability conditions, entropy bounds, and quadratic-form tail
//! estimates at desk scale.

pub mod cli;
pub mod config;
pub mod covering;
pub mod error;
pub mod experiments;
pub mod funcs;
pub mod io;
pub mod limit;
pub mod numeric;
pub mod rng;
pub mod runner;
pub mod spectral;
pub mod stable;
pub mod stats;
pub mod summability;
pub mod timeseries;

pub use error::{Error, Result};
pub use rng::RngStream;
