//! Achievable rate regions of two-user interference channels with finite
//! input constellations.
//!
//! The crate evaluates the strong-interference rate constraints of the
//! symmetric two-user interference channel (2-IC) and of its Z variant
//! (2-Z-IC) when both transmitters use the same square QAM alphabet. It
//! provides:
//!
//! * [`constellation`]: QAM construction, rotation, rotation periodicity and
//!   superposition alphabets.
//! * [`mi`]: mutual-information estimators for discrete inputs in complex
//!   Gaussian noise, with a Monte Carlo backend and a Gauss–Hermite backend.
//! * [`region`]: finite-alphabet and Gaussian rate regions, sum rates and
//!   polytope corners.
//! * [`rotation`]: effective interference angles, rotation optimization and
//!   channel-phase symmetry folding.
//! * [`vsi`]: the very-strong-interference threshold.
//! * [`sweep`]: parameter sweeps with caching and CSV output.
//! * [`cli`]: the `ic-rates` command-line front end.
//!
//! All powers are linear inside the library; dB conversion happens at the
//! CLI and sweep-config boundary ([`db_to_linear`]).

pub mod cli;
pub mod constellation;
mod error;
pub mod mi;
pub mod quadrature;
pub mod region;
pub mod rotation;
pub mod sweep;
pub mod vsi;

pub use constellation::{Constellation, InputAlphabet, RotatedAlphabet};
pub use error::{Error, Result};
pub use mi::{EstimatorConfig, MIEstimate, Method, ReceiverModel};
pub use region::{ChannelConfig, RateRegion, RegionSource, Topology};
pub use rotation::{ObjectiveKind, RotationResult, RotationSearch};
pub use vsi::{ThresholdQuery, ThresholdResult};

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// Converts a power in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power to dB.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
