//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite panels.
//!
//! Callers pass the panel boundaries up front: kinks, breakpoint images
//! and geometric refinements toward a singular endpoint are all expressed
//! as initial panels, and the integrator then bisects whichever panel
//! carries the largest error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule: total error `<= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance {
            abs,
            rel,
            max_intervals: 20_000,
        }
    }

    pub fn with_max_intervals(mut self, max_intervals: usize) -> Self {
        self.max_intervals = max_intervals;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // Error level attributable to rounding alone.
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Ties are broken on position so the bisection order is reproducible.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> (f64, f64) {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    (err, floor)
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut resabs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    if !res_k.is_finite() {
        return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    let mean = res_k * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let habs = half.abs();
    let (error, floor) = rescale_error((res_k - res_g) * half, resabs * habs, resasc * habs);
    Ok(Panel {
        a,
        b,
        value: res_k * half,
        error,
        floor,
    })
}

/// Integrate `f` over `[breaks[0], breaks[last]]`, with every consecutive
/// pair of `breaks` forming an initial panel.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], tol: Tolerance) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::Domain("integrate: need at least two break points".into()));
    }
    if breaks
        .windows(2)
        .any(|w| !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite())
    {
        return Err(Error::Domain(format!(
            "integrate: break points must be finite and strictly increasing: {breaks:?}"
        )));
    }

    let mut heap = BinaryHeap::with_capacity(breaks.len() * 4);
    // Panels that cannot be bisected further in floating point.
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    for w in breaks.windows(2) {
        let p = kronrod(&mut f, w[0], w[1])?;
        total_value += p.value;
        total_error += p.error;
        heap.push(p);
    }
    let mut intervals = heap.len();

    loop {
        let target = tol.abs.max(tol.rel * total_value.abs());
        if total_error <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) <= 4.0 * f64::EPSILON * mid.abs();
        if unsplittable || worst.error <= worst.floor {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        if intervals >= tol.max_intervals {
            heap.push(worst);
            return Err(Error::Convergence {
                estimate: total_value,
                error: total_error,
                intervals,
            });
        }
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        intervals += 1;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Periodic re-sum keeps cancellation drift out of the totals.
        if intervals % 64 == 0 {
            total_value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
            total_error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
        }
    }
    total_value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
    total_error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();

    Ok(Integral {
        value: total_value,
        error: total_error,
    })
}

/// Break points `[0, z_min, 2 z_min, 4 z_min, ..., upper]` geometrically
/// refined toward zero, followed by `interior` (clipped to `(0, upper)`).
pub fn geometric_breaks(upper: f64, levels: usize, interior: &[f64]) -> Vec<f64> {
    let mut pts = vec![0.0];
    let first = interior
        .iter()
        .copied()
        .filter(|&p| p > 0.0 && p < upper)
        .fold(upper.min(1.0), f64::min);
    for k in (0..levels).rev() {
        pts.push(first * 0.5f64.powi(k as i32 + 1));
    }
    pts.push(first);
    pts.extend(interior.iter().copied().filter(|&p| p > first && p < upper));
    pts.push(upper);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials_up_to_degree_29() {
        for k in 0..=29 {
            let r = integrate(|x: f64| x.powi(k), &[0.0, 1.0], Tolerance::new(1e-14, 0.0)).unwrap();
            assert!((r.value - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "degree {k}");
        }
    }

    #[test]
    fn adaptive_on_endpoint_singularity() {
        let r = integrate(
            |x: f64| x.powf(-0.5),
            &geometric_breaks(1.0, 50, &[]),
            Tolerance::new(1e-12, 1e-12),
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn kink_at_break() {
        let r = integrate(|x: f64| (x - 0.3).abs(), &[0.0, 0.3, 1.0], Tolerance::new(1e-14, 0.0)).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_needs_bisection() {
        let r = integrate(|x: f64| (50.0 * x).sin(), &[0.0, 1.0], Tolerance::new(1e-13, 0.0)).unwrap();
        assert!((r.value - (1.0 - 50f64.cos()) / 50.0).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tol = Tolerance::new(1e-15, 0.0).with_max_intervals(3);
        let err = integrate(|x: f64| (200.0 * x).sin(), &[0.0, 1.0], tol).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn rejects_bad_breaks() {
        assert!(integrate(|x| x, &[1.0], Tolerance::new(1e-9, 0.0)).is_err());
        assert!(integrate(|x| x, &[1.0, 0.0], Tolerance::new(1e-9, 0.0)).is_err());
        assert!(integrate(|x| 1.0 / x, &[0.0, 1.0], Tolerance::new(1e-9, 0.0)).is_err());
    }

    #[test]
    fn geometric_breaks_layout() {
        let b = geometric_breaks(50.0, 3, &[4.0, 60.0]);
        assert_eq!(b, vec![0.0, 0.125, 0.25, 0.5, 1.0, 4.0, 50.0]);
        let b = geometric_breaks(50.0, 2, &[0.2]);
        assert_eq!(b, vec![0.0, 0.05, 0.1, 0.2, 50.0]);
    }
}
