//! Piecewise power-law path loss.
//!
//! An N-slope model has exponents `α_0 .. α_{N-1}` and breakpoints
//! `R_1 < .. < R_{N-1}`. On `[R_n, R_{n+1})` the gain is `K_n d^-α_n`,
//! with `K_0 = 1` and `K_n = Π_{i=1..n} R_i^(α_i - α_{i-1})` so that the
//! function is continuous. A distance exactly on a breakpoint is assigned
//! to the lower segment; continuity makes the choice immaterial.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Exponents and breakpoints as they appear in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathLossSpec {
    pub exponents: Vec<f64>,
    #[serde(default)]
    pub breakpoints: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathLossSpec", into = "PathLossSpec")]
pub struct PathLossModel {
    exponents: Vec<f64>,
    breakpoints: Vec<f64>,
    constants: Vec<f64>,
    ordered: bool,
    // Cached for evaluation from squared distances.
    half_exponents: Vec<f64>,
    breakpoints_sq: Vec<f64>,
}

impl PathLossModel {
    /// Single-slope model `d^-α`.
    pub fn make_standard(alpha: f64) -> Result<Self> {
        Self::make_multislope(vec![alpha], vec![])
    }

    /// Dual-slope model with near-field exponent `alpha0`, far-field
    /// exponent `alpha1` and critical distance `r_c`. Requires `alpha0 <= alpha1`.
    pub fn make_dual(alpha0: f64, alpha1: f64, r_c: f64) -> Result<Self> {
        if alpha0 > alpha1 {
            return domain(format!(
                "dual-slope model needs alpha0 <= alpha1 (got {alpha0} > {alpha1}); use make_dual_unordered for analytic-only use"
            ));
        }
        Self::make_multislope(vec![alpha0, alpha1], vec![r_c])
    }

    /// Dual-slope model without the exponent ordering check.
    pub fn make_dual_unordered(alpha0: f64, alpha1: f64, r_c: f64) -> Result<Self> {
        Self::make_multislope(vec![alpha0, alpha1], vec![r_c])
    }

    pub fn make_multislope(exponents: Vec<f64>, breakpoints: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return domain("path loss model needs at least one exponent");
        }
        if exponents.len() != breakpoints.len() + 1 {
            return domain(format!(
                "{} exponents need {} breakpoints, got {}",
                exponents.len(),
                exponents.len() - 1,
                breakpoints.len()
            ));
        }
        if let Some(a) = exponents.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return domain(format!("path loss exponent {a} must be finite and non-negative"));
        }
        if let Some(r) = breakpoints.iter().find(|r| !r.is_finite() || **r <= 0.0) {
            return domain(format!("breakpoint {r} must be finite and positive"));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return domain(format!("breakpoints must be strictly increasing: {breakpoints:?}"));
        }

        let mut constants = Vec::with_capacity(exponents.len());
        constants.push(1.0);
        for n in 1..exponents.len() {
            let k = constants[n - 1] * breakpoints[n - 1].powf(exponents[n] - exponents[n - 1]);
            constants.push(k);
        }
        if constants.iter().any(|k| !k.is_finite() || *k <= 0.0) {
            return domain("continuity constants overflow; rescale the distance unit");
        }
        let ordered = exponents.windows(2).all(|w| w[0] <= w[1]);
        let half_exponents = exponents.iter().map(|a| 0.5 * a).collect();
        let breakpoints_sq = breakpoints.iter().map(|r| r * r).collect();
        Ok(PathLossModel {
            exponents,
            breakpoints,
            constants,
            ordered,
            half_exponents,
            breakpoints_sq,
        })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Continuity constants `K_0 .. K_{N-1}`.
    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    /// True when the exponents are non-decreasing.
    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// Number of slopes `N`.
    pub fn slopes(&self) -> usize {
        self.exponents.len()
    }

    pub fn last_exponent(&self) -> f64 {
        *self.exponents.last().expect("non-empty")
    }

    pub fn last_constant(&self) -> f64 {
        *self.constants.last().expect("non-empty")
    }

    /// `δ_n = 2 / α_n`, with `+inf` for a zero exponent.
    pub fn deltas(&self) -> Vec<f64> {
        self.exponents.iter().map(|&a| delta_of(a)).collect()
    }

    /// `η = R_c^(α_1 - α_0)` of a dual-slope model.
    pub fn eta(&self) -> Option<f64> {
        (self.slopes() == 2).then(|| self.constants[1])
    }

    /// Whether the aggregate interference of a PPP is finite.
    pub fn has_finite_interference(&self) -> bool {
        self.last_exponent() > 2.0
    }

    /// Segment index for a distance; breakpoint ties go to the lower segment.
    pub fn segment(&self, distance: f64) -> usize {
        self.breakpoints.partition_point(|&r| r < distance)
    }

    /// Path loss gain `l(d)` for `d > 0`.
    pub fn evaluate(&self, distance: f64) -> Result<f64> {
        if distance.is_nan() || distance <= 0.0 {
            return Err(Error::Domain(format!(
                "path loss evaluated at non-positive distance {distance}"
            )));
        }
        let n = self.segment(distance);
        Ok(self.constants[n] * distance.powf(-self.exponents[n]))
    }

    /// `l(sqrt(d2))` from a squared distance, without argument checks.
    #[inline]
    pub(crate) fn gain_sq(&self, d2: f64) -> f64 {
        let n = self.breakpoints_sq.partition_point(|&r| r < d2);
        let h = self.half_exponents[n];
        let p = if h == h.trunc() && h.abs() <= 16.0 {
            d2.powi(-(h as i32))
        } else {
            d2.powf(-h)
        };
        self.constants[n] * p
    }

    pub fn to_spec(&self) -> PathLossSpec {
        PathLossSpec {
            exponents: self.exponents.clone(),
            breakpoints: self.breakpoints.clone(),
        }
    }
}

/// `2 / α`, interpreting `α = 0` as `δ = +inf`.
pub fn delta_of(alpha: f64) -> f64 {
    if alpha == 0.0 {
        f64::INFINITY
    } else {
        2.0 / alpha
    }
}

impl TryFrom<PathLossSpec> for PathLossModel {
    type Error = Error;

    fn try_from(spec: PathLossSpec) -> Result<Self> {
        PathLossModel::make_multislope(spec.exponents, spec.breakpoints)
    }
}

impl From<PathLossModel> for PathLossSpec {
    fn from(model: PathLossModel) -> Self {
        model.to_spec()
    }
}
