use multislope::analytic::{
    ccdf, coverage, coverage_dual, coverage_multislope, coverage_sinr_lower_bound_tworay, potential_throughput,
    standard_sir_coverage,
};
use multislope::montecarlo::estimate_ccdf;
use multislope::scaling::{log_grid, sweep_density};
use multislope::{db_to_linear, EmpiricalCcdf, Fading, Metric, NetworkScenario, PathLossModel, SimConfig};
use proptest::prelude::*;

fn dual(a0: f64, a1: f64, rc: f64, lambda: f64, noise: f64) -> NetworkScenario {
    NetworkScenario::new(lambda, noise, PathLossModel::make_dual(a0, a1, rc).unwrap()).unwrap()
}

fn dual_sir(a0: f64, a1: f64, rc: f64, lambda: f64, t: f64) -> f64 {
    coverage_dual(&dual(a0, a1, rc, lambda, 0.0), t).unwrap().value
}

fn overlap(a: &EmpiricalCcdf, b: &EmpiricalCcdf, i: usize) -> bool {
    (a.estimates[i] - b.estimates[i]).abs() <= a.ci_halfwidths[i] + b.ci_halfwidths[i]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ccdf_is_non_increasing_in_threshold(
        a1 in 2.5f64..5.0,
        frac in 0.1f64..0.95,
        rc in 0.2f64..5.0,
        lambda in 1e-3f64..10.0,
        noise in prop_oneof![Just(0.0), 1e-3f64..2.0],
    ) {
        let s = dual(frac * a1, a1, rc, lambda, noise);
        let ts: Vec<f64> = (0..15).map(|i| db_to_linear(-20.0 + 3.0 * i as f64)).collect();
        let v = ccdf(&s, &ts, s.sinr_metric(), None).unwrap().values();
        for w in v.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9, "{:?}", v);
        }
    }

    #[test]
    fn near_field_scaling_invariance(
        a1 in 2.5f64..5.0,
        frac in 0.0f64..0.95,
        lambda in 1e-2f64..10.0,
        rc in 0.2f64..5.0,
        scale in 0.1f64..10.0,
        t_db in -10.0f64..10.0,
    ) {
        let t = db_to_linear(t_db);
        let a = dual_sir(frac * a1, a1, rc, lambda, t);
        let b = dual_sir(frac * a1, a1, rc * scale, lambda / (scale * scale), t);
        prop_assert!((a - b).abs() < 1e-7, "{} vs {}", a, b);
    }

    #[test]
    fn sir_ordering_between_standard_models(
        a0 in 2.2f64..4.5,
        extra in 0.2f64..2.0,
        lambda in 1e-3f64..1e3,
        t_db in -10.0f64..15.0,
    ) {
        let a1 = a0 + extra;
        let t = db_to_linear(t_db);
        let hi = standard_sir_coverage(a1, t).unwrap();
        let lo = standard_sir_coverage(a0, t).unwrap();
        let mid = dual_sir(a0, a1, 1.0, lambda, t);
        prop_assert!(mid <= hi + 1e-8 && mid >= lo - 1e-8, "{} <= {} <= {}", lo, mid, hi);
    }

    #[test]
    fn sir_non_increasing_in_density(
        a1 in 2.5f64..5.0,
        frac in 0.0f64..0.95,
        t_db in -10.0f64..10.0,
    ) {
        let t = db_to_linear(t_db);
        let v: Vec<f64> = log_grid(1e-3, 1e3, 13).unwrap().into_iter().map(|l| dual_sir(frac * a1, a1, 1.0, l, t)).collect();
        for w in v.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-8, "{:?}", v);
        }
    }

    #[test]
    fn sinr_below_sir_and_snr(
        a1 in 2.5f64..5.0,
        frac in 0.1f64..0.95,
        lambda in 1e-3f64..1e2,
        noise in 1e-3f64..10.0,
        t_db in -10.0f64..10.0,
    ) {
        let s = dual(frac * a1, a1, 1.0, lambda, noise);
        let t = db_to_linear(t_db);
        let sinr = coverage(&s, t, Metric::Sinr).unwrap().value;
        let sir = coverage(&s, t, Metric::Sir).unwrap().value;
        let snr = coverage(&s, t, Metric::Snr).unwrap().value;
        prop_assert!(sinr <= sir.min(snr) + 1e-8, "sinr {} sir {} snr {}", sinr, sir, snr);
    }

    #[test]
    fn two_segment_multislope_equals_dual(
        a1 in 2.5f64..5.0,
        frac in 0.0f64..0.95,
        rc in 0.2f64..5.0,
        lambda in 1e-3f64..10.0,
        noise in prop_oneof![Just(0.0), 1e-3f64..2.0],
        t_db in -10.0f64..10.0,
    ) {
        let s = dual(frac * a1, a1, rc, lambda, noise);
        let t = db_to_linear(t_db);
        let a = coverage_dual(&s, t).unwrap().value;
        let b = coverage_multislope(&s, t).unwrap().value;
        prop_assert!((a - b).abs() < 1e-6, "{} vs {}", a, b);
    }

    #[test]
    fn lower_bound_never_exceeds_exact(
        lambda in 1e-2f64..10.0,
        noise in 1e-2f64..10.0,
        t_db in -20.0f64..20.0,
    ) {
        let s = dual(2.0, 4.0, 1.0, lambda, noise);
        let t = db_to_linear(t_db);
        let bound = coverage_sinr_lower_bound_tworay(&s, t).unwrap().value;
        let exact = coverage_dual(&s, t).unwrap().value;
        prop_assert!(bound <= exact + 1e-9, "{} > {}", bound, exact);
    }
}

#[test]
fn dual_limits_approach_standard_models() {
    let sparse = dual_sir(3.0, 4.0, 1.0, 1e-5, 1.0);
    assert!(
        (sparse - standard_sir_coverage(4.0, 1.0).unwrap()).abs() < 1e-3,
        "{sparse}"
    );
    let dense = dual_sir(3.0, 4.0, 1.0, 1e5, 1.0);
    assert!(
        (dense - standard_sir_coverage(3.0, 1.0).unwrap()).abs() < 1e-3,
        "{dense}"
    );
}

#[test]
fn lower_bound_gap_closes_at_small_threshold() {
    let s = dual(2.0, 4.0, 1.0, 0.1, 1.0);
    let mut last = f64::INFINITY;
    for t_db in [0.0, -10.0, -20.0, -30.0] {
        let t = db_to_linear(t_db);
        let gap = coverage_dual(&s, t).unwrap().value - coverage_sinr_lower_bound_tworay(&s, t).unwrap().value;
        assert!(gap >= -1e-9 && gap <= last + 1e-12, "gap {gap} at {t_db} dB");
        last = gap;
    }
    assert!(last < 1e-6, "{last}");
}

#[test]
fn throughput_per_density_is_flat_when_near_field_is_steep() {
    let model = PathLossModel::make_dual(3.0, 4.0, 1.0).unwrap();
    let hi = NetworkScenario::new(1e4, 0.0, model.clone()).unwrap();
    let lo = hi.with_density(1e3).unwrap();
    let a = potential_throughput(&lo, 1.0).unwrap() / 1e3;
    let b = potential_throughput(&hi, 1.0).unwrap() / 1e4;
    assert!((a / b - 1.0).abs() < 0.02, "{a} vs {b}");

    let sweep = sweep_density(&model, 1.0, 0.0, &log_grid(1e-1, 1e5, 25).unwrap()).unwrap();
    assert!((sweep.fitted_exponent - 1.0).abs() < 0.05, "{}", sweep.fitted_exponent);
}

fn sir_ccdf(scenario: &NetworkScenario, config: &SimConfig, ts: &[f64]) -> EmpiricalCcdf {
    estimate_ccdf(scenario, config, ts, Metric::Sir).unwrap()
}

#[test]
fn simulated_ccdf_survives_density_rescaling() {
    let ts: Vec<f64> = [-10.0, -5.0, 0.0, 5.0, 10.0].into_iter().map(db_to_linear).collect();
    let config = SimConfig::new(20_000, 21);
    let base = sir_ccdf(&dual(2.5, 4.0, 1.0, 0.5, 0.0), &config, &ts);
    let scaled = sir_ccdf(
        &dual(2.5, 4.0, 3.0, 0.5 / 9.0, 0.0),
        &SimConfig { seed: 22, ..config },
        &ts,
    );
    for i in 0..ts.len() {
        assert!(
            overlap(&base, &scaled, i),
            "threshold {}: {} vs {}",
            ts[i],
            base.estimates[i],
            scaled.estimates[i]
        );
    }
}

#[test]
fn simulated_ordering_holds_with_lognormal_fading() {
    let ts: Vec<f64> = [-10.0, -5.0, 0.0, 5.0, 10.0].into_iter().map(db_to_linear).collect();
    let config = SimConfig {
        fading: Fading::Lognormal { sigma_db: 6.0 },
        ..SimConfig::new(20_000, 31)
    };
    let standard = |alpha: f64| NetworkScenario::new(1.0, 0.0, PathLossModel::make_standard(alpha).unwrap()).unwrap();
    let hi = sir_ccdf(&standard(4.0), &config, &ts);
    let mid = sir_ccdf(&dual(3.0, 4.0, 1.0, 1.0, 0.0), &config, &ts);
    let lo = sir_ccdf(&standard(3.0), &config, &ts);
    for i in 0..ts.len() {
        assert!(
            hi.estimates[i] + hi.ci_halfwidths[i] >= mid.estimates[i] - mid.ci_halfwidths[i],
            "upper at {i}"
        );
        assert!(
            mid.estimates[i] + mid.ci_halfwidths[i] >= lo.estimates[i] - lo.ci_halfwidths[i],
            "lower at {i}"
        );
    }
}

#[test]
fn simulation_is_independent_of_thread_count() {
    let ts: Vec<f64> = (0..9).map(|i| db_to_linear(-20.0 + 5.0 * i as f64)).collect();
    let s = dual(2.0, 4.0, 1.0, 0.3, 1.0);
    let config = SimConfig::new(5_000, 99);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_ccdf(&s, &config, &ts, Metric::Sinr).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}
