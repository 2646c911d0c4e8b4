//! Coverage probability of the typical user in a Poisson downlink network
//! with nearest-BS association and Rayleigh fading.
//!
//! Every formula is integrated in the scaled variable `z = λ π y`, where
//! `y` is the squared distance to the serving BS. In that variable each
//! integrand is bounded by `e^-z` (the void probability of the serving
//! disk), so the range is truncated at [`Z_CUTOFF`] with an absolute error
//! below `e^-60`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::pathloss::{delta_of, PathLossModel};
use crate::quadrature::{geometric_breaks, integrate, Integral, Tolerance};
use crate::specfun::{c_beta, ein, exp_times_q};

/// Upper limit of the scaled serving-distance variable.
pub const Z_CUTOFF: f64 = 60.0;

const GEOMETRIC_LEVELS: usize = 64;
const GRADED_LEVELS: i32 = 50;

/// Quadrature settings for the dual-slope and SNR formulas.
pub const DUAL_TOLERANCE: Tolerance = Tolerance {
    abs: 1e-10,
    rel: 1e-9,
    max_intervals: 20_000,
};

/// Quadrature settings for the general and N-slope formulas.
pub const GENERAL_TOLERANCE: Tolerance = Tolerance {
    abs: 1e-9,
    rel: 1e-8,
    max_intervals: 20_000,
};

const INNER_TOLERANCE: Tolerance = Tolerance {
    abs: 1e-13,
    rel: 1e-12,
    max_intervals: 2_000,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Sir,
    Snr,
    Sinr,
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Sir => "sir",
            Metric::Snr => "snr",
            Metric::Sinr => "sinr",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GeneralIntegral,
    DualSlope,
    TwoRayClosed,
    SnrIntegral,
    SnrClosed,
    LowerBound,
    Multislope,
    MonteCarlo,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::GeneralIntegral => "general-integral",
            Method::DualSlope => "dual-slope",
            Method::TwoRayClosed => "two-ray-closed",
            Method::SnrIntegral => "snr-integral",
            Method::SnrClosed => "snr-closed",
            Method::LowerBound => "lower-bound",
            Method::Multislope => "multislope",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

/// BS density `λ`, normalized noise power `σ²` and the path loss model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkScenario {
    density: f64,
    noise: f64,
    pathloss: PathLossModel,
}

impl NetworkScenario {
    pub fn new(density: f64, noise: f64, pathloss: PathLossModel) -> Result<Self> {
        if !density.is_finite() || density <= 0.0 {
            return domain(format!("density {density} must be positive and finite"));
        }
        if !noise.is_finite() || noise < 0.0 {
            return domain(format!("noise {noise} must be non-negative and finite"));
        }
        Ok(NetworkScenario {
            density,
            noise,
            pathloss,
        })
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn pathloss(&self) -> &PathLossModel {
        &self.pathloss
    }

    pub fn with_density(&self, density: f64) -> Result<Self> {
        Self::new(density, self.noise, self.pathloss.clone())
    }

    pub fn with_noise(&self, noise: f64) -> Result<Self> {
        Self::new(self.density, noise, self.pathloss.clone())
    }

    /// The metric an SINR-type formula reports: SIR when noise is zero.
    pub fn sinr_metric(&self) -> Metric {
        if self.noise == 0.0 {
            Metric::Sir
        } else {
            Metric::Sinr
        }
    }

    fn require_finite_interference(&self) -> Result<()> {
        if self.pathloss.has_finite_interference() {
            Ok(())
        } else {
            Err(Error::DivergentInterference {
                alpha_last: self.pathloss.last_exponent(),
                noise: self.noise,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageResult {
    pub value: f64,
    pub metric: Metric,
    pub method: Method,
    /// Linear threshold.
    pub threshold: f64,
    /// Quadrature error bound, or CI half-width for Monte Carlo.
    pub error_estimate: f64,
}

impl CoverageResult {
    fn new(value: f64, metric: Metric, method: Method, threshold: f64, error_estimate: f64) -> Self {
        CoverageResult {
            value: value.clamp(0.0, 1.0),
            metric,
            method,
            threshold,
            error_estimate: error_estimate.abs(),
        }
    }

    fn from_integral(integral: Integral, metric: Metric, method: Method, threshold: f64) -> Self {
        Self::new(integral.value, metric, method, threshold, integral.error)
    }
}

/// Coverage ccdf sampled over increasing linear thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfCurve {
    pub thresholds: Vec<f64>,
    pub points: Vec<CoverageResult>,
}

impl CcdfCurve {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if !threshold.is_finite() || threshold <= 0.0 {
        return domain(format!("threshold {threshold} must be positive and finite"));
    }
    Ok(())
}

fn require_dual(model: &PathLossModel) -> Result<(f64, f64, f64)> {
    if model.slopes() != 2 {
        return domain(format!(
            "dual-slope formula needs N = 2, model has N = {}",
            model.slopes()
        ));
    }
    Ok((model.exponents()[0], model.exponents()[1], model.breakpoints()[0]))
}

fn require_two_ray(model: &PathLossModel) -> Result<f64> {
    let (a0, a1, rc) = require_dual(model)?;
    if a0 != 2.0 || a1 != 4.0 {
        return domain(format!("two-ray formula needs exponents (2, 4), got ({a0}, {a1})"));
    }
    Ok(rc)
}

/// `[lo, lo + w 2^-levels, ..., lo + w/2, hi]` with `w = hi - lo`, so
/// features near the start of a range are resolved at any scale.
fn graded_breaks(lo: f64, hi: f64, levels: i32) -> Vec<f64> {
    let w = hi - lo;
    let mut b = vec![lo];
    b.extend((1..=levels).rev().map(|k| lo + w * 0.5f64.powi(k)));
    b.push(hi);
    b.dedup();
    b
}

/// `x^(1/δ)` with the zero-exponent convention `x^0 = 1`.
fn pow_inv_delta(x: f64, delta: f64) -> f64 {
    if delta.is_infinite() {
        1.0
    } else {
        x.powf(1.0 / delta)
    }
}

/// The dual-slope interference functional
/// `C_δ0(1/(T x^(1/δ0))) + C_-δ1(T x^(1/δ0)) + x (1 - C_δ0(1/T)) - 1`
/// for `x ∈ (0, 1]`.
pub fn integrand_i(delta0: f64, delta1: f64, threshold: f64, x: f64) -> Result<f64> {
    check_threshold(threshold)?;
    if !(delta0 > 0.0) {
        return domain(format!("delta0 = {delta0} must be in (0, inf]"));
    }
    if !(delta1 > 0.0 && delta1 < 1.0) {
        return domain(format!("delta1 = {delta1} must be in (0, 1)"));
    }
    if !(x > 0.0 && x <= 1.0) {
        return domain(format!("x = {x} must be in (0, 1]"));
    }
    let c0 = c_beta(delta0, 1.0 / threshold)?;
    dual_functional(delta0, delta1, threshold, c0, x)
}

fn dual_functional(delta0: f64, delta1: f64, threshold: f64, c0: f64, x: f64) -> Result<f64> {
    let s = pow_inv_delta(x, delta0);
    let near = c_beta(delta0, 1.0 / (threshold * s))?;
    let far = c_beta(-delta1, threshold * s)?;
    Ok(near + (far - 1.0) + x * (1.0 - c0))
}

/// `∫_0^a exp(-a I(z/a) - noise_near(z/a)) dz + ∫_a^inf exp(-z c1 - noise_far(z/a)) dz`
/// with `a = λ π R_c²`; the shared skeleton of the dual-slope and two-ray forms.
fn dual_skeleton<I, N0, N1>(
    a: f64,
    c1: f64,
    mut functional: I,
    noise_near: N0,
    noise_far: N1,
    tol: Tolerance,
) -> Result<Integral>
where
    I: FnMut(f64) -> Result<f64>,
    N0: Fn(f64) -> f64,
    N1: Fn(f64) -> f64,
{
    let mut failure = None;
    let mut near = Integral { value: 0.0, error: 0.0 };
    let upper = a.min(Z_CUTOFF);
    if upper > 0.0 {
        let breaks = geometric_breaks(upper, GEOMETRIC_LEVELS, &[]);
        near = integrate(
            |z| {
                if z == 0.0 {
                    return 1.0;
                }
                let x = z / a;
                match functional(x) {
                    Ok(i) => (-a * i - noise_near(x)).exp(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            &breaks,
            tol,
        )?;
    }
    if let Some(e) = failure {
        return Err(e);
    }

    // Integrand of the far term is at most e^{-z c1}; its value relative to
    // the start of the range falls below e^-60 after 60 / c1.
    let far_breaks = graded_breaks(a, a + Z_CUTOFF / c1, GRADED_LEVELS);
    let far = integrate(|z| (-(z - a) * c1 - noise_far(z / a)).exp(), &far_breaks, tol)?;
    let far = Integral {
        value: far.value * (-a * c1).exp(),
        error: far.error * (-a * c1).exp(),
    };
    Ok(Integral {
        value: near.value + far.value,
        error: near.error + far.error,
    })
}

/// SINR (SIR when `σ² = 0`) coverage of a dual-slope model from the
/// hypergeometric closed form of the interference functional.
pub fn coverage_dual(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    coverage_dual_with(scenario, threshold, DUAL_TOLERANCE)
}

pub fn coverage_dual_with(scenario: &NetworkScenario, threshold: f64, tol: Tolerance) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    let (a0, a1, rc) = require_dual(scenario.pathloss())?;
    scenario.require_finite_interference()?;
    let (d0, d1) = (delta_of(a0), delta_of(a1));
    let a = scenario.density() * PI * rc * rc;
    let c0 = c_beta(d0, 1.0 / threshold)?;
    let c1 = c_beta(-d1, threshold)?;
    let tn = threshold * scenario.noise();
    let rc_a0 = rc.powf(a0);
    let integral = dual_skeleton(
        a,
        c1,
        |x| dual_functional(d0, d1, threshold, c0, x),
        |x| {
            if tn == 0.0 {
                0.0
            } else {
                tn * x.powf(a0 / 2.0) * rc_a0
            }
        },
        |x| {
            if tn == 0.0 {
                0.0
            } else {
                tn * x.powf(a1 / 2.0) * rc_a0
            }
        },
        tol,
    )?;
    Ok(CoverageResult::from_integral(
        integral,
        scenario.sinr_metric(),
        Method::DualSlope,
        threshold,
    ))
}

/// Dual-slope coverage for exponents (2, 4), using the logarithm /
/// arctangent form of the interference functional.
pub fn coverage_tworay(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    let rc = require_two_ray(scenario.pathloss())?;
    let t = threshold;
    let a = scenario.density() * PI * rc * rc;
    let c1 = 1.0 + t.sqrt() * t.sqrt().atan();
    let k = 1.0 - t * (1.0 / t).ln_1p();
    let tn = t * scenario.noise();
    let integral = dual_skeleton(
        a,
        c1,
        |x| {
            let xt = x * t;
            Ok(xt * (1.0 / xt).ln_1p() + xt.sqrt() * xt.sqrt().atan() + x * k)
        },
        |x| tn * x * rc * rc,
        |x| tn * x * x * rc * rc,
        DUAL_TOLERANCE,
    )?;
    Ok(CoverageResult::from_integral(
        integral,
        scenario.sinr_metric(),
        Method::TwoRayClosed,
        threshold,
    ))
}

/// SIR coverage of the standard model, `1 / C_{-2/α}(T)`, for `α > 2`.
pub fn standard_sir_coverage(alpha: f64, threshold: f64) -> Result<f64> {
    check_threshold(threshold)?;
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(Error::DivergentInterference {
            alpha_last: alpha,
            noise: 0.0,
        });
    }
    Ok(1.0 / c_beta(-2.0 / alpha, threshold)?)
}

/// General coverage integral for any path loss model.
///
/// The outer integral runs over the scaled squared serving distance and
/// the inner one over the interferer distance ratio `t`, split wherever
/// `sqrt(t y)` crosses a breakpoint. Beyond the last breakpoint the inner
/// tail is mapped onto `(0, 1]` using the last segment's power law.
pub fn coverage_general(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    scenario.require_finite_interference()?;
    let model = scenario.pathloss();
    let lam_pi = scenario.density() * PI;
    let t = threshold;
    let tn = t * scenario.noise();
    let r2: Vec<f64> = model.breakpoints().iter().map(|r| r * r).collect();
    let p = model.last_exponent() / 2.0;
    let k_last = model.last_constant();
    let q = 1.0 / (p - 1.0);

    let mut failure: Option<Error> = None;
    let inner = |y: f64| -> Result<f64> {
        let ly = model.gain_sq(y);
        let mut breaks = vec![1.0];
        breaks.extend(r2.iter().map(|&r| r / y).filter(|&b| b > 1.0));
        let mut total = 0.0;
        if breaks.len() > 1 {
            total += integrate(|tt| t / (t + ly / model.gain_sq(tt * y)), &breaks, INNER_TOLERANCE)?.value;
        }
        let t0 = *breaks.last().expect("non-empty");
        // t = t0 s^-q; T / (T + ratio(t)) dt = q T / (T s^(q+1) / t0 + A) ds
        // with A = (l(√y) / K) y^p t0^(p-1) in the last power-law segment.
        let a_coef = ly / k_last * y.powf(p) * t0.powf(p - 1.0);
        total += integrate(
            |s| q * t / (t * s.powf(q + 1.0) / t0 + a_coef),
            &[0.0, 0.25, 0.5, 1.0],
            INNER_TOLERANCE,
        )?
        .value;
        Ok(total)
    };

    let interior: Vec<f64> = r2.iter().map(|r| lam_pi * r).collect();
    let breaks = geometric_breaks(Z_CUTOFF, GEOMETRIC_LEVELS, &interior);
    let integral = integrate(
        |z| {
            if z == 0.0 {
                return 1.0;
            }
            let y = z / lam_pi;
            match inner(y) {
                Ok(j) => {
                    let noise = if tn == 0.0 { 0.0 } else { tn / model.gain_sq(y) };
                    (-z * (1.0 + j) - noise).exp()
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        &breaks,
        GENERAL_TOLERANCE,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(CoverageResult::from_integral(
        integral,
        scenario.sinr_metric(),
        Method::GeneralIntegral,
        threshold,
    ))
}

/// Precomputed per-model quantities of the N-slope interference functional.
struct MultislopeTerms {
    exponents: Vec<f64>,
    deltas: Vec<f64>,
    constants: Vec<f64>,
    r2: Vec<f64>,
    // R_j^α_j and R_{j+1}^α_j for every segment j with an upper breakpoint.
    r_pow_lower: Vec<f64>,
    r_pow_upper: Vec<f64>,
    c_inv_t: Vec<f64>,
    threshold: f64,
}

impl MultislopeTerms {
    fn new(model: &PathLossModel, threshold: f64) -> Result<Self> {
        let exponents = model.exponents().to_vec();
        let deltas = model.deltas();
        let r = model.breakpoints();
        let n = exponents.len();
        let mut r_pow_lower = vec![0.0; n];
        let mut r_pow_upper = vec![0.0; n];
        for j in 0..n {
            if j >= 1 {
                r_pow_lower[j] = r[j - 1].powf(exponents[j]);
            }
            if j + 1 < n {
                r_pow_upper[j] = r[j].powf(exponents[j]);
            }
        }
        let c_inv_t = deltas
            .iter()
            .map(|&d| c_beta(d, 1.0 / threshold))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultislopeTerms {
            exponents,
            deltas,
            constants: model.constants().to_vec(),
            r2: r.iter().map(|x| x * x).collect(),
            r_pow_lower,
            r_pow_upper,
            c_inv_t,
            threshold,
        })
    }

    /// `I_i(x)` for a squared serving distance `x` in segment `i < N - 1`.
    fn functional(&self, i: usize, x: f64) -> Result<f64> {
        let n = self.exponents.len();
        let t = self.threshold;
        let xa = x.powf(self.exponents[i] / 2.0);
        let k = &self.constants;
        let mut total = x * (1.0 - self.c_inv_t[i]);
        total += self.r2[i] * c_beta(self.deltas[i], self.r_pow_upper[i] / (t * xa))?;
        for j in (i + 1)..(n - 1) {
            let scale = k[i] / k[j] / (t * xa);
            total += self.r2[j] * c_beta(self.deltas[j], scale * self.r_pow_upper[j])?;
            total -= self.r2[j - 1] * c_beta(self.deltas[j], scale * self.r_pow_lower[j])?;
        }
        let last = n - 1;
        let arg = k[last] / k[i] * t * xa / self.r_pow_lower[last];
        total += self.r2[last - 1] * (c_beta(-self.deltas[last], arg)? - 1.0);
        Ok(total)
    }
}

/// SINR coverage of an N-slope model (`N >= 2`) from the segment-wise
/// hypergeometric form.
pub fn coverage_multislope(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    let model = scenario.pathloss();
    if model.slopes() < 2 {
        return domain("multi-slope formula needs N >= 2");
    }
    scenario.require_finite_interference()?;
    let terms = MultislopeTerms::new(model, threshold)?;
    let lam_pi = scenario.density() * PI;
    let tn = threshold * scenario.noise();
    let n = model.slopes();
    let exps = model.exponents();
    let ks = model.constants();

    let mut value = 0.0;
    let mut error = 0.0;
    let mut lower = 0.0;
    for i in 0..(n - 1) {
        let upper = (lam_pi * terms.r2[i]).min(Z_CUTOFF);
        if upper <= lower {
            break;
        }
        let breaks = if i == 0 {
            geometric_breaks(upper, GEOMETRIC_LEVELS, &[])
        } else {
            graded_breaks(lower, upper, GRADED_LEVELS)
        };
        let mut failure = None;
        let seg = integrate(
            |z| {
                if z == 0.0 {
                    return 1.0;
                }
                let x = z / lam_pi;
                match terms.functional(i, x) {
                    Ok(fi) => {
                        let noise = if tn == 0.0 {
                            0.0
                        } else {
                            tn * x.powf(exps[i] / 2.0) / ks[i]
                        };
                        (-lam_pi * fi - noise).exp()
                    }
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            &breaks,
            GENERAL_TOLERANCE,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        value += seg.value;
        error += seg.error;
        lower = upper;
    }

    let start = lam_pi * terms.r2[n - 2];
    if start < Z_CUTOFF {
        let c_last = c_beta(-terms.deltas[n - 1], threshold)?;
        let breaks = graded_breaks(start, start + Z_CUTOFF / c_last, GRADED_LEVELS);
        let (a_last, k_last) = (exps[n - 1], ks[n - 1]);
        let tail = integrate(
            |z| {
                let x = z / lam_pi;
                let noise = if tn == 0.0 {
                    0.0
                } else {
                    tn * x.powf(a_last / 2.0) / k_last
                };
                (-(z - start) * c_last - noise).exp()
            },
            &breaks,
            GENERAL_TOLERANCE,
        )?;
        let scale = (-start * c_last).exp();
        value += tail.value * scale;
        error += tail.error * scale;
    }
    Ok(CoverageResult::new(
        value,
        scenario.sinr_metric(),
        Method::Multislope,
        threshold,
        error,
    ))
}

/// SNR coverage: the serving-distance law integrated against the noise
/// outage, segment by segment. Exactly 1 when `σ² = 0`.
pub fn coverage_snr(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    if scenario.noise() == 0.0 {
        return Ok(CoverageResult::new(
            1.0,
            Metric::Snr,
            Method::SnrIntegral,
            threshold,
            0.0,
        ));
    }
    let model = scenario.pathloss();
    let lam_pi = scenario.density() * PI;
    let tn = threshold * scenario.noise();
    let exps = model.exponents();
    let ks = model.constants();
    let mut edges: Vec<f64> = vec![0.0];
    edges.extend(model.breakpoints().iter().map(|r| lam_pi * r * r));
    edges.push(f64::INFINITY);

    let mut value = 0.0;
    let mut error = 0.0;
    for i in 0..exps.len() {
        let lo = edges[i];
        if lo >= Z_CUTOFF {
            break;
        }
        let hi = edges[i + 1].min(Z_CUTOFF);
        let breaks = if lo == 0.0 {
            geometric_breaks(hi, GEOMETRIC_LEVELS, &[])
        } else {
            graded_breaks(lo, hi, GRADED_LEVELS)
        };
        let (a, k) = (exps[i], ks[i]);
        let seg = integrate(
            |z| (-z - tn * (z / lam_pi).powf(a / 2.0) / k).exp(),
            &breaks,
            DUAL_TOLERANCE,
        )?;
        value += seg.value;
        error += seg.error;
    }
    Ok(CoverageResult::new(
        value,
        Metric::Snr,
        Method::SnrIntegral,
        threshold,
        error,
    ))
}

/// Closed-form SNR coverage for exponents (2, 4).
pub fn coverage_snr_tworay(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    let rc = require_two_ray(scenario.pathloss())?;
    let tn = threshold * scenario.noise();
    if tn == 0.0 {
        return domain("closed-form SNR coverage needs noise > 0 (coverage is 1 without noise)");
    }
    let lp = scenario.density() * PI;
    let near = lp / (lp + tn) * -(-(lp + tn) * rc * rc).exp_m1();
    let log_prefactor = (scenario.density() * PI.powf(1.5) * rc / tn.sqrt()).ln() + lp * lp * rc * rc / (4.0 * tn);
    let far = exp_times_q(log_prefactor, (lp + 2.0 * tn) * rc / (2.0 * tn).sqrt())?;
    Ok(CoverageResult::new(
        near + far,
        Metric::Snr,
        Method::SnrClosed,
        threshold,
        0.0,
    ))
}

/// Closed-form lower bound on the SINR coverage for exponents (2, 4).
///
/// The near-field part replaces the interference integral by its upper
/// bound `T log(y / R_c²) + T` and applies Jensen's inequality under the
/// truncated exponential law with rate `a = ρ0 R_c²`, giving
/// `E[X log X] = (1 - Ein(a) / (1 - e^-a)) / a`. The far-field part is exact.
pub fn coverage_sinr_lower_bound_tworay(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    check_threshold(threshold)?;
    let rc = require_two_ray(scenario.pathloss())?;
    let t = threshold;
    let tn = t * scenario.noise();
    if tn == 0.0 {
        return domain("closed-form SINR lower bound needs noise > 0");
    }
    let lp = scenario.density() * PI;
    let rho0 = lp * (1.0 + t) + tn;
    let rho1 = lp * rc / tn.sqrt();
    let a = rho0 * rc * rc;
    let one_minus_exp = -(-a).exp_m1();
    let exponent = lp * t / rho0 * (1.0 - ein(a)? / one_minus_exp);
    let near = lp / rho0 * one_minus_exp * exponent.exp();
    let c_half = 1.0 + t.sqrt() * t.sqrt().atan();
    let far = exp_times_q(
        (PI.sqrt() * rho1).ln() + 0.25 * (c_half * rho1).powi(2),
        rho1 * c_half / 2f64.sqrt() + (2.0 * tn).sqrt() * rc,
    )?;
    Ok(CoverageResult::new(
        near + far,
        scenario.sinr_metric(),
        Method::LowerBound,
        t,
        0.0,
    ))
}

/// Coverage for a metric using the most specific exact formula available.
pub fn coverage(scenario: &NetworkScenario, threshold: f64, metric: Metric) -> Result<CoverageResult> {
    match metric {
        Metric::Snr => coverage_snr(scenario, threshold),
        Metric::Sir => {
            let sir = scenario.with_noise(0.0)?;
            coverage_sinr_auto(&sir, threshold)
        }
        Metric::Sinr => coverage_sinr_auto(scenario, threshold),
    }
}

fn coverage_sinr_auto(scenario: &NetworkScenario, threshold: f64) -> Result<CoverageResult> {
    match scenario.pathloss().slopes() {
        1 => coverage_general(scenario, threshold),
        2 => coverage_dual(scenario, threshold),
        _ => coverage_multislope(scenario, threshold),
    }
}

/// Coverage by an explicitly chosen method.
pub fn coverage_by_method(scenario: &NetworkScenario, threshold: f64, method: Method) -> Result<CoverageResult> {
    match method {
        Method::GeneralIntegral => coverage_general(scenario, threshold),
        Method::DualSlope => coverage_dual(scenario, threshold),
        Method::TwoRayClosed => coverage_tworay(scenario, threshold),
        Method::SnrIntegral => coverage_snr(scenario, threshold),
        Method::SnrClosed => coverage_snr_tworay(scenario, threshold),
        Method::LowerBound => coverage_sinr_lower_bound_tworay(scenario, threshold),
        Method::Multislope => coverage_multislope(scenario, threshold),
        Method::MonteCarlo => domain("monte-carlo is not an analytic method; use the montecarlo module"),
    }
}

/// Coverage density `μ = λ P_c` (SINR metric).
pub fn coverage_density(scenario: &NetworkScenario, threshold: f64) -> Result<f64> {
    Ok(scenario.density() * coverage(scenario, threshold, Metric::Sinr)?.value)
}

/// Potential throughput `τ = log2(1 + T) μ`.
pub fn potential_throughput(scenario: &NetworkScenario, threshold: f64) -> Result<f64> {
    Ok((1.0 + threshold).log2() * coverage_density(scenario, threshold)?)
}

/// Evaluate a ccdf over increasing thresholds; points are computed in
/// parallel and returned in threshold order.
pub fn ccdf(
    scenario: &NetworkScenario,
    thresholds: &[f64],
    metric: Metric,
    method: Option<Method>,
) -> Result<CcdfCurve> {
    if thresholds.is_empty() {
        return domain("threshold grid is empty");
    }
    if thresholds.windows(2).any(|w| w[1] <= w[0]) {
        return domain("thresholds must be strictly increasing");
    }
    let points = thresholds
        .par_iter()
        .map(|&t| match method {
            Some(m) => coverage_by_method(scenario, t, m),
            None => coverage(scenario, t, metric),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CcdfCurve {
        thresholds: thresholds.to_vec(),
        points,
    })
}
