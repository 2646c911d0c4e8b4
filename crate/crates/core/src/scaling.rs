//! Density sweeps of coverage, coverage density and potential throughput,
//! with a least-squares fit of the log-log tail slope of throughput.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{coverage, Metric, NetworkScenario};
use crate::error::{domain, Error, Result};
use crate::pathloss::PathLossModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub coverage_sir: f64,
    pub coverage_snr: f64,
    pub coverage_sinr: f64,
    /// `λ P_c` with the SINR coverage.
    pub mu: f64,
    /// `log2(1 + T) μ`.
    pub tau: f64,
}

/// Which grid points enter the slope fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FitWindow {
    /// The largest densities, as a fraction of the grid.
    TopFraction(f64),
    /// Densities inside `[lo, hi]`.
    Range(f64, f64),
}

impl Default for FitWindow {
    fn default() -> Self {
        FitWindow::TopFraction(0.4)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySweep {
    pub threshold: f64,
    pub noise: f64,
    pub densities: Vec<f64>,
    pub rows: Vec<SweepRow>,
    /// Half-open index range of the rows used in the fit.
    pub fit_window: (usize, usize),
    pub fitted_exponent: f64,
    /// Root-mean-square residual of the fit in natural-log units.
    pub fit_residual: f64,
}

impl DensitySweep {
    pub fn coverage_sinr(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.coverage_sinr).collect()
    }

    pub fn tau(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.tau).collect()
    }

    /// Refit the tail slope over a different window.
    pub fn refit(&mut self, window: FitWindow) -> Result<()> {
        let range = window_indices(&self.densities, window)?;
        let (slope, residual) = fit_slope(&self.rows[range.0..range.1])?;
        self.fit_window = range;
        self.fitted_exponent = slope;
        self.fit_residual = residual;
        Ok(())
    }
}

/// `points` log-spaced densities from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || points < 2 {
        return domain(format!("bad density grid [{lo}, {hi}] with {points} points"));
    }
    let (a, b) = (lo.log10(), hi.log10());
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                10f64.powf(a + (b - a) * i as f64 / (points - 1) as f64)
            }
        })
        .collect())
}

fn window_indices(densities: &[f64], window: FitWindow) -> Result<(usize, usize)> {
    let n = densities.len();
    let range = match window {
        FitWindow::TopFraction(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return domain(format!("fit fraction {f} must be in (0, 1]"));
            }
            let k = ((f * n as f64).ceil() as usize).clamp(2.min(n), n);
            (n - k, n)
        }
        FitWindow::Range(lo, hi) => {
            let rel = 1e-9;
            let start = densities.partition_point(|&d| d < lo * (1.0 - rel));
            let end = densities.partition_point(|&d| d <= hi * (1.0 + rel));
            (start, end)
        }
    };
    if range.1 < range.0 + 2 {
        return domain("fit window holds fewer than two densities");
    }
    Ok(range)
}

fn fit_slope(rows: &[SweepRow]) -> Result<(f64, f64)> {
    if rows.iter().any(|r| !(r.tau > 0.0)) {
        return Err(Error::Fit("throughput is zero inside the fit window".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.lambda.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.tau.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - my - slope * (x - mx);
            r * r
        })
        .sum();
    Ok((slope, (sse / n).sqrt()))
}

/// Sweep with the default fit window (top 40% of the grid).
pub fn sweep_density(
    pathloss: &PathLossModel,
    threshold: f64,
    noise: f64,
    lambda_grid: &[f64],
) -> Result<DensitySweep> {
    sweep_density_with(pathloss, threshold, noise, lambda_grid, FitWindow::default())
}

pub fn sweep_density_with(
    pathloss: &PathLossModel,
    threshold: f64,
    noise: f64,
    lambda_grid: &[f64],
    window: FitWindow,
) -> Result<DensitySweep> {
    if lambda_grid.len() < 8 {
        return domain(format!(
            "density grid needs at least 8 points, got {}",
            lambda_grid.len()
        ));
    }
    if lambda_grid.windows(2).any(|w| !(w[1] > w[0])) || !(lambda_grid[0] > 0.0) {
        return domain("densities must be positive and strictly increasing");
    }
    let first = lambda_grid[0];
    let last = lambda_grid[lambda_grid.len() - 1];
    if (last / first).log10() < 3.0 - 1e-9 {
        return domain(format!("density grid [{first}, {last}] spans less than 3 decades"));
    }
    let gain = (1.0 + threshold).log2();
    let rows = lambda_grid
        .par_iter()
        .map(|&lambda| {
            let s = NetworkScenario::new(lambda, noise, pathloss.clone())?;
            let sir = coverage(&s, threshold, Metric::Sir)?.value;
            let snr = coverage(&s, threshold, Metric::Snr)?.value;
            let sinr = if noise == 0.0 {
                sir
            } else {
                coverage(&s, threshold, Metric::Sinr)?.value
            };
            let mu = lambda * sinr;
            Ok(SweepRow {
                lambda,
                coverage_sir: sir,
                coverage_snr: snr,
                coverage_sinr: sinr,
                mu,
                tau: gain * mu,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sweep = DensitySweep {
        threshold,
        noise,
        densities: lambda_grid.to_vec(),
        rows,
        fit_window: (0, 0),
        fitted_exponent: f64::NAN,
        fit_residual: f64::NAN,
    };
    sweep.refit(window)?;
    Ok(sweep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingTag {
    Diverging,
    Bounded,
    Vanishing,
}

impl std::fmt::Display for ScalingTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalingTag::Diverging => "diverging",
            ScalingTag::Bounded => "bounded",
            ScalingTag::Vanishing => "vanishing",
        })
    }
}

/// Slopes within this band of zero are tagged bounded.
pub const FLAT_SLOPE: f64 = 0.05;

pub fn classify_slope(slope: f64) -> ScalingTag {
    if slope > FLAT_SLOPE {
        ScalingTag::Diverging
    } else if slope < -FLAT_SLOPE {
        ScalingTag::Vanishing
    } else {
        ScalingTag::Bounded
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub alpha0: f64,
    pub fitted_exponent: f64,
    pub fit_residual: f64,
    pub tag: ScalingTag,
    pub sweep: DensitySweep,
}

/// Density grid and fit window of the phase-transition experiment:
/// 10^-1 .. 10^5 at four points per decade, fitted over 10^3 .. 10^5.
pub fn phase_transition_grid() -> (Vec<f64>, FitWindow) {
    (log_grid(0.1, 1e5, 25).expect("valid grid"), FitWindow::Range(1e3, 1e5))
}

/// Noise-free throughput sweeps, one per near-field exponent.
pub fn phase_transition_report(alpha0_list: &[f64], alpha1: f64, r_c: f64, threshold: f64) -> Result<Vec<PhaseRow>> {
    let (grid, window) = phase_transition_grid();
    alpha0_list
        .iter()
        .map(|&alpha0| {
            let model = PathLossModel::make_dual(alpha0, alpha1, r_c)?;
            let sweep = sweep_density_with(&model, threshold, 0.0, &grid, window)?;
            Ok(PhaseRow {
                alpha0,
                fitted_exponent: sweep.fitted_exponent,
                fit_residual: sweep.fit_residual,
                tag: classify_slope(sweep.fitted_exponent),
                sweep,
            })
        })
        .collect()
}
