//! Coverage probability and throughput scaling of Poisson downlink
//! cellular networks under standard, dual-slope and N-slope path loss.
//!
//! * [`specfun`]: `C_beta`, Gaussian tail, `E1`, lower incomplete gamma.
//! * [`pathloss`]: piecewise power-law path loss models.
//! * [`analytic`]: exact and bounded coverage formulas.
//! * [`montecarlo`]: independent PPP simulator used as the oracle.
//! * [`scaling`]: density sweeps and tail-exponent fits.
//! * [`cli`]: scenario files, CSV output and the `multislope` commands.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod pathloss;
pub mod quadrature;
pub mod scaling;
pub mod specfun;

pub use analytic::{CcdfCurve, CoverageResult, Method, Metric, NetworkScenario};
pub use error::{Error, Result};
pub use montecarlo::{EmpiricalCcdf, Fading, SimConfig, WindowRadius};
pub use pathloss::PathLossModel;
pub use scaling::DensitySweep;

/// Linear threshold from decibels.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Decibels from a linear threshold.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
