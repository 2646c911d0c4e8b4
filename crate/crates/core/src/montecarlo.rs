//! Direct simulation of the Poisson network seen by a typical user at the
//! origin.
//!
//! Each trial draws a Poisson number of BSs uniformly in a disk of radius
//! `R_sim`, marks them with iid fading and associates the user with the BS
//! of largest path loss gain. Only squared distances are sampled since the
//! model is isotropic. Interference from beyond the window is replaced by
//! its mean unless [`SimConfig::tail_compensation`] is off.
//!
//! Trial `i` draws from a ChaCha8 stream selected by `i`, so results do
//! not depend on how trials are split across threads; per-threshold counts
//! are integers, so aggregation order cannot change them either.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, PI};
use std::fmt;
use std::str::FromStr;

use crate::analytic::{Metric, NetworkScenario};
use crate::error::{domain, Error, Result};
use crate::specfun::q_function;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fading {
    RayleighUnitMean,
    /// Unit-mean lognormal shadowing with the given dB spread.
    Lognormal {
        sigma_db: f64,
    },
    None,
}

impl Fading {
    /// `E[h^2]`, which sets the variance of the truncated interference.
    pub fn second_moment(&self) -> f64 {
        match *self {
            Fading::RayleighUnitMean => 2.0,
            Fading::Lognormal { sigma_db } => {
                let s = sigma_db * LN_10 / 10.0;
                (s * s).exp()
            }
            Fading::None => 1.0,
        }
    }

    #[inline]
    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            Fading::RayleighUnitMean => Exp1.sample(rng),
            Fading::Lognormal { sigma_db } => {
                let s = sigma_db * LN_10 / 10.0;
                let z: f64 = StandardNormal.sample(rng);
                (s * z - 0.5 * s * s).exp()
            }
            Fading::None => 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Fading::Lognormal { sigma_db } = *self {
            if !sigma_db.is_finite() || sigma_db < 0.0 {
                return domain(format!("lognormal spread {sigma_db} dB must be non-negative"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Fading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fading::RayleighUnitMean => f.write_str("rayleigh"),
            Fading::Lognormal { sigma_db } => write!(f, "lognormal:{sigma_db}"),
            Fading::None => f.write_str("none"),
        }
    }
}

/// Parses `rayleigh`, `none` or `lognormal:<sigma_dB>`.
impl FromStr for Fading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rayleigh" | "rayleigh-unit-mean" => return Ok(Fading::RayleighUnitMean),
            "none" => return Ok(Fading::None),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("lognormal:") {
            let sigma_db: f64 = rest
                .parse()
                .map_err(|_| Error::Config(format!("bad lognormal spread '{rest}'")))?;
            let f = Fading::Lognormal { sigma_db };
            f.validate()?;
            return Ok(f);
        }
        Err(Error::Config(format!(
            "unknown fading '{s}' (expected rayleigh, none or lognormal:<dB>)"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowRadius {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub window_radius: WindowRadius,
    pub seed: u64,
    pub fading: Fading,
    pub confidence: f64,
    /// Add the mean interference from outside the window.
    pub tail_compensation: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            trials: 100_000,
            window_radius: WindowRadius::Auto,
            seed: 0,
            fading: Fading::RayleighUnitMean,
            confidence: 0.99,
            tail_compensation: true,
        }
    }
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SimConfig {
            trials,
            seed,
            ..SimConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return domain("trials must be at least 1");
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return domain(format!("confidence {} must be in (0, 1)", self.confidence));
        }
        self.fading.validate()
    }
}

/// Ratios observed by the typical user in one trial. A trial without any
/// BS reports zeros; a trial without interference reports `sir = +inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub sir: f64,
    pub snr: f64,
    pub sinr: f64,
    pub base_stations: u64,
}

impl TrialOutcome {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Sir => self.sir,
            Metric::Snr => self.snr,
            Metric::Sinr => self.sinr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCcdf {
    pub thresholds: Vec<f64>,
    pub estimates: Vec<f64>,
    pub ci_halfwidths: Vec<f64>,
    /// Wilson interval `(lower, upper)` per threshold; not centered on the estimate.
    pub intervals: Vec<(f64, f64)>,
    pub trials_used: u64,
    pub window_radius: f64,
}

impl EmpiricalCcdf {
    pub fn contains(&self, index: usize, value: f64) -> bool {
        let (lo, hi) = self.intervals[index];
        lo <= value && value <= hi
    }
}

/// Mean interference from BSs beyond `window_radius`,
/// `2 π λ K R^(2-α) / (α - 2)` for the last segment.
pub fn truncation_bias_bound(scenario: &NetworkScenario, window_radius: f64) -> Result<f64> {
    let model = scenario.pathloss();
    let alpha = model.last_exponent();
    if alpha <= 2.0 {
        return Err(Error::DivergentInterference {
            alpha_last: alpha,
            noise: scenario.noise(),
        });
    }
    if !(window_radius > 0.0) || !window_radius.is_finite() {
        return domain(format!("window radius {window_radius} must be positive"));
    }
    Ok(2.0 * PI * scenario.density() * model.last_constant() * window_radius.powf(2.0 - alpha) / (alpha - 2.0))
}

/// Smallest radius the window may take: ten times the largest breakpoint
/// or the typical serving distance `1/√(λπ)`.
pub fn minimum_window_radius(scenario: &NetworkScenario) -> f64 {
    let typical = 1.0 / (scenario.density() * PI).sqrt();
    let largest = scenario
        .pathloss()
        .breakpoints()
        .iter()
        .copied()
        .fold(typical, f64::max);
    10.0 * largest
}

/// Window radius used by a configuration. In auto mode the standard
/// deviation of the neglected interference is held below `1e-4` of the
/// larger of `σ²` and the gain at distance `0.5/√λ`.
pub fn resolve_window(scenario: &NetworkScenario, config: &SimConfig) -> Result<f64> {
    let model = scenario.pathloss();
    if !model.has_finite_interference() {
        return Err(Error::DivergentInterference {
            alpha_last: model.last_exponent(),
            noise: scenario.noise(),
        });
    }
    let floor = minimum_window_radius(scenario);
    match config.window_radius {
        WindowRadius::Fixed(r) => {
            if !(r > floor) || !r.is_finite() {
                return domain(format!("window radius {r} must exceed {floor}"));
            }
            Ok(r)
        }
        WindowRadius::Auto => {
            let alpha = model.last_exponent();
            let k = model.last_constant();
            let reference = scenario.noise().max(model.gain_sq(0.25 / scenario.density()));
            // Var = 2πλ E[h²] K² R^(2-2α) / (2α-2)
            let var_coef = 2.0 * PI * scenario.density() * config.fading.second_moment() * k * k / (2.0 * alpha - 2.0);
            let target = 1e-4 * reference;
            let r = (var_coef / (target * target)).powf(1.0 / (2.0 * alpha - 2.0));
            Ok(floor.max(r))
        }
    }
}

struct Simulator<'a> {
    scenario: &'a NetworkScenario,
    fading: Fading,
    seed: u64,
    radius_sq: f64,
    poisson: Option<Poisson<f64>>,
    tail: f64,
}

impl<'a> Simulator<'a> {
    fn new(scenario: &'a NetworkScenario, config: &SimConfig) -> Result<Self> {
        config.validate()?;
        let radius = resolve_window(scenario, config)?;
        let mean = scenario.density() * PI * radius * radius;
        if !mean.is_finite() || mean > 1e9 {
            return domain(format!("window holds {mean:e} BSs on average; too many to simulate"));
        }
        let poisson = if mean > 0.0 {
            Some(Poisson::new(mean).map_err(|e| Error::Domain(e.to_string()))?)
        } else {
            None
        };
        let tail = if config.tail_compensation {
            truncation_bias_bound(scenario, radius)?
        } else {
            0.0
        };
        Ok(Simulator {
            scenario,
            fading: config.fading,
            seed: config.seed,
            radius_sq: radius * radius,
            poisson,
            tail,
        })
    }

    fn radius(&self) -> f64 {
        self.radius_sq.sqrt()
    }

    fn trial(&self, index: u64) -> TrialOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let count = match &self.poisson {
            Some(p) => p.sample(&mut rng) as u64,
            None => 0,
        };
        if count == 0 {
            return TrialOutcome {
                sir: 0.0,
                snr: 0.0,
                sinr: 0.0,
                base_stations: 0,
            };
        }
        let model = self.scenario.pathloss();
        let mut total = 0.0;
        let mut best_gain = f64::NEG_INFINITY;
        let mut signal = 0.0;
        for _ in 0..count {
            let u: f64 = rng.random();
            let d2 = self.radius_sq * (1.0 - u);
            let g = model.gain_sq(d2);
            let p = self.fading.sample(&mut rng) * g;
            total += p;
            if g > best_gain {
                best_gain = g;
                signal = p;
            }
        }
        let interference = (total - signal).max(0.0) + self.tail;
        TrialOutcome::from_powers(signal, interference, self.scenario.noise(), count)
    }
}

impl TrialOutcome {
    fn from_powers(signal: f64, interference: f64, noise: f64, base_stations: u64) -> Self {
        let ratio = |den: f64| {
            if den == 0.0 {
                f64::INFINITY
            } else {
                signal / den
            }
        };
        TrialOutcome {
            sir: ratio(interference),
            snr: ratio(noise),
            sinr: ratio(interference + noise),
            base_stations,
        }
    }
}

/// One trial of the simulation; deterministic in `(config.seed, trial_index)`.
pub fn sample_trial(scenario: &NetworkScenario, config: &SimConfig, trial_index: u64) -> Result<TrialOutcome> {
    if trial_index >= config.trials {
        return domain(format!(
            "trial index {trial_index} out of range for {} trials",
            config.trials
        ));
    }
    Ok(Simulator::new(scenario, config)?.trial(trial_index))
}

/// Two-sided standard normal quantile for the given confidence.
fn normal_quantile(confidence: f64) -> f64 {
    let target = 0.5 * (1.0 - confidence);
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q_function(mid).unwrap_or(0.0) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64, confidence: f64) -> (f64, f64) {
    let z = normal_quantile(confidence);
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Fraction of trials whose `metric` exceeds each threshold, with Wilson
/// intervals at the configured confidence.
pub fn estimate_ccdf(
    scenario: &NetworkScenario,
    config: &SimConfig,
    thresholds: &[f64],
    metric: Metric,
) -> Result<EmpiricalCcdf> {
    if thresholds.is_empty() {
        return domain("threshold grid is empty");
    }
    if thresholds.windows(2).any(|w| !(w[1] > w[0])) || thresholds.iter().any(|t| !(*t > 0.0)) {
        return domain("thresholds must be positive and strictly increasing");
    }
    if config.trials < 100 {
        return domain(format!("at least 100 trials are needed, got {}", config.trials));
    }
    let sim = Simulator::new(scenario, config)?;
    let n = thresholds.len();
    let counts = (0..config.trials)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, i| {
                let v = sim.trial(i).get(metric);
                // thresholds are sorted: covered for every T < v
                let k = thresholds.partition_point(|&t| t < v);
                for c in &mut acc[..k] {
                    *c += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    let mut estimates = Vec::with_capacity(n);
    let mut ci_halfwidths = Vec::with_capacity(n);
    let mut intervals = Vec::with_capacity(n);
    for &c in &counts {
        let (lo, hi) = wilson_interval(c, config.trials, config.confidence);
        estimates.push(c as f64 / config.trials as f64);
        ci_halfwidths.push(0.5 * (hi - lo));
        intervals.push((lo, hi));
    }
    Ok(EmpiricalCcdf {
        thresholds: thresholds.to_vec(),
        estimates,
        ci_halfwidths,
        intervals,
        trials_used: config.trials,
        window_radius: sim.radius(),
    })
}
